#include <catch2/catch_amalgamated.hpp>

#include "jetforge/analysis.hpp"
#include "jetforge/counting.hpp"
#include "jetforge/parser.hpp"
#include "test_util.hpp"

using namespace jetforge;

namespace {

VarietyDatum hypersurface(const std::vector<std::string>& vars, const std::string& f) {
  auto r = PolyRing::create(vars, 0);
  return make_variety(r, {parse_polynomial(f, r)}, 1);
}

VarietyDatum cusp() { return hypersurface({"x", "y"}, "x^2 - y^3"); }
VarietyDatum a1_surface() { return hypersurface({"x", "y", "z"}, "x^2 + y*z"); }
VarietyDatum quasihom_235() { return hypersurface({"x", "y", "z"}, "x^2 + y^3 + z^5"); }
VarietyDatum fermat_cubic() { return hypersurface({"x", "y", "z"}, "x^3 + y^3 + z^3"); }
VarietyDatum odp_3fold() { return hypersurface({"x", "y", "z", "w"}, "x*y - z*w"); }

}  // namespace

TEST_CASE("quasi-homogeneous surface certifies irreducible at m = 1, 2, 3") {
  auto datum = quasihom_235();
  for (std::size_t m : {1, 2, 3}) {
    auto v = certify_jets(datum, m);
    CHECK(v.verdict == JetVerdictKind::Irreducible);
    CHECK(v.dim_sing_fiber < static_cast<long long>(2 * (m + 1)));
    CHECK(v.dim_total == static_cast<long long>(2 * (m + 1)));
  }
}

TEST_CASE("cusp at level 1 is pure dimensional but not irreducible") {
  auto v = certify_jets(cusp(), 1);
  CHECK(v.verdict == JetVerdictKind::PureDimensionalOnly);
  CHECK(v.dim_sing_fiber == 2);  // the fiber over the origin is all of A^2
  CHECK(v.dim_total == 2);
}

TEST_CASE("Fermat cubic at level 2 is pure dimensional only") {
  auto v = certify_jets(fermat_cubic(), 2);
  CHECK(v.verdict == JetVerdictKind::PureDimensionalOnly);
  CHECK(v.dim_sing_fiber == 6);  // every equation vanishes on the order >= 1 locus
}

TEST_CASE("smooth varieties certify irreducible with empty singular locus") {
  auto line = hypersurface({"x", "y"}, "x - y");
  auto v = certify_jets(line, 3);
  CHECK(v.verdict == JetVerdictKind::Irreducible);
  CHECK(v.sing_locus_empty);
  CHECK(v.dim_total == 4);  // (m+1) n
}

TEST_CASE("jet dimension tables") {
  // Smooth: dim X_m = m + 1 at every level.
  auto line = hypersurface({"x", "y"}, "x - y");
  auto lt = jet_dimension_table(line, 3);
  REQUIRE(lt.rows.size() == 3);
  for (const auto& row : lt.rows)
    CHECK(row.dim_total == static_cast<long long>(row.m + 1));

  // Rational double point: dim X_m = 2(m+1).
  auto at = jet_dimension_table(a1_surface(), 2);
  REQUIRE(at.rows.size() == 2);
  for (const auto& row : at.rows)
    CHECK(row.dim_total == static_cast<long long>(2 * (row.m + 1)));
  CHECK(at.monotone);
}

TEST_CASE("cusp fiber dimensions over the origin for m = 1..5") {
  auto table = jet_dimension_table(cusp(), 5);
  REQUIRE(table.rows.size() == 5);

  // Expected values derived from the order strata of arcs on x^2 = y^3:
  // cancellation needs ord(x^2) = ord(y^3), i.e. orders (3c, 2c); below the
  // truncation both monomials must individually vanish. Cross-checked with
  // the counting oracle below.
  const std::vector<long long> fiber_dims = {2, 3, 4, 5, 7};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(table.rows[i].dim_sing_fiber == fiber_dims[i]);
    CHECK(table.rows[i].dim_total == std::max<long long>(fiber_dims[i], table.rows[i].m + 1));
  }
  CHECK(table.monotone);

  auto datum = cusp();
  std::vector<std::uint32_t> primes = {5, 7};
  for (std::size_t m = 1; m <= 5; ++m) {
    std::vector<Coefficient> origin(2, Coefficient::rational(0));
    auto fiber = fiber_ideal(jet_equations(datum, m), origin);
    auto est = dimension_estimate(fiber, primes);
    REQUIRE(est.conclusive);
    CHECK(est.estimate == fiber_dims[m - 1]);
  }
}

TEST_CASE("monotonicity and level descent on the corpus") {
  std::vector<VarietyDatum> corpus = {a1_surface(), cusp(), quasihom_235(), odp_3fold()};
  for (const auto& datum : corpus) {
    const std::size_t n = datum.ring->arity() - 1;
    auto table = jet_dimension_table(datum, 3);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.monotone);
    for (std::size_t i = 0; i + 1 < table.rows.size(); ++i)
      CHECK(table.rows[i + 1].dim_sing_fiber >=
            table.rows[i].dim_sing_fiber + static_cast<long long>(n));

    // Irreducible at m+1 implies irreducible at m.
    for (std::size_t m = 1; m <= 2; ++m) {
      auto hi = certify_jets(datum, m + 1);
      if (hi.verdict == JetVerdictKind::Irreducible)
        CHECK(certify_jets(datum, m).verdict == JetVerdictKind::Irreducible);
    }
  }
}

TEST_CASE("diagonal analyzer verdicts") {
  std::vector<std::size_t> d235 = {2, 3, 5};
  auto r235 = analyze_diagonal(d235, 2);
  CHECK(r235.all_irreducible);  // 1/2 + 1/3 + 1/5 = 31/30 > 1
  CHECK(r235.reciprocal_sum == mpq_class(31, 30));

  std::vector<std::size_t> d237 = {2, 3, 7};
  CHECK_FALSE(analyze_diagonal(d237, 2).all_irreducible);  // 41/42 < 1

  std::vector<std::size_t> d333 = {3, 3, 3};
  auto r333 = analyze_diagonal(d333, 2);
  CHECK_FALSE(r333.all_irreducible);  // the inequality is strict

  std::vector<std::size_t> two = {2, 2};
  CHECK_THROWS_AS(analyze_diagonal(two, 2), InputError);
}

TEST_CASE("diagonal analyzer stratum bounds cover the fiber dimensions") {
  // At each level the largest stratum bound dominates the computed fiber
  // dimension over the origin.
  std::vector<std::vector<std::size_t>> degree_sets = {{2, 2, 2}, {2, 3, 5}, {3, 3, 3}};
  for (const auto& degrees : degree_sets) {
    std::string f;
    const std::vector<std::string> vars = {"x", "y", "z"};
    for (std::size_t i = 0; i < 3; ++i)
      f += (i ? " + " : "") + vars[i] + "^" + std::to_string(degrees[i]);
    auto datum = hypersurface(vars, f);
    for (std::size_t m = 1; m <= 2; ++m) {
      auto report = analyze_diagonal(degrees, m);
      std::uint64_t best = 0;
      for (const auto& s : report.strata) best = std::max(best, s.dim_bound);
      auto v = certify_jets(datum, m);
      CHECK(v.dim_sing_fiber <= static_cast<long long>(best));
    }
  }
}

TEST_CASE("diagonal analyzer verdict matches certification on the corpus") {
  std::vector<std::vector<std::size_t>> degree_sets = {{2, 2, 2}, {2, 3, 5}, {3, 3, 3}};
  for (const auto& degrees : degree_sets) {
    std::string f;
    const std::vector<std::string> vars = {"x", "y", "z"};
    for (std::size_t i = 0; i < 3; ++i)
      f += (i ? " + " : "") + vars[i] + "^" + std::to_string(degrees[i]);
    auto datum = hypersurface(vars, f);
    bool all = analyze_diagonal(degrees, 1).all_irreducible;
    bool saw_failure = false;
    for (std::size_t m = 1; m <= 3; ++m) {
      auto v = certify_jets(datum, m);
      if (v.verdict != JetVerdictKind::Irreducible) saw_failure = true;
      if (all) CHECK(v.verdict == JetVerdictKind::Irreducible);
    }
    if (!all) CHECK(saw_failure);
  }
}

TEST_CASE("lct estimates") {
  auto r2 = PolyRing::create({"x", "y"}, 0);

  auto smooth = lct_estimate(parse_polynomial("x", r2), 3);
  CHECK(smooth.estimate == 1);
  CHECK(smooth.jet_dims == std::vector<long long>{1, 2, 3, 4});

  auto dbl = lct_estimate(parse_polynomial("x^2", r2), 3);
  CHECK(dbl.estimate == mpq_class(1, 2));
  CHECK(dbl.max_ratio == mpq_class(3, 2));
  CHECK(dbl.argmax_m == 1);  // dim D_1 = 3
  CHECK(dbl.jet_dims == std::vector<long long>{1, 3, 4, 6});

  auto cuspd = lct_estimate(parse_polynomial("x^2 - y^3", r2), 5, 6);
  CHECK(cuspd.estimate == mpq_class(5, 6));
  CHECK(cuspd.max_ratio == mpq_class(7, 6));
  CHECK(cuspd.argmax_m == 5);
  CHECK(cuspd.exact);  // period 6 divides m + 1 = 6

  CHECK_THROWS_AS(lct_estimate(Polynomial::constant(r2, 3), 2), InputError);
}

TEST_CASE("resolution data checks") {
  ResolutionDatum smooth{1, {{1, 0}}};
  auto vs = check_resolution_data(smooth);
  CHECK(vs.canonical_condition);
  CHECK(vs.log_canonical_condition);

  // One point blow-up of the quadric cone in A^3: multiplicity 2, discrepancy 2.
  ResolutionDatum a1{1, {{1, 0}, {2, 2}}};
  auto va = check_resolution_data(a1);
  CHECK(va.canonical_condition);
  CHECK(va.log_canonical_condition);

  // Three blow-ups resolving the plane cusp.
  ResolutionDatum cuspres{1, {{1, 0}, {2, 1}, {3, 2}, {6, 4}}};
  auto vc = check_resolution_data(cuspres);
  CHECK_FALSE(vc.log_canonical_condition);
  REQUIRE(vc.log_canonical_fail_index.has_value());
  CHECK(cuspres.divisors[*vc.log_canonical_fail_index] == std::pair<std::uint64_t, std::uint64_t>{6, 4});
  CHECK(vc.predicted.find("exceeds") != std::string::npos);

  ResolutionDatum bad{2, {{1, 0}}};  // b_1 must be r - 1 = 1
  CHECK_THROWS_AS(check_resolution_data(bad), InputError);
}

TEST_CASE("tangent space bound") {
  auto datum = cusp();
  std::vector<Coefficient> origin = {Coefficient::rational(0), Coefficient::rational(0)};
  auto rep = tangent_bound_check(datum, origin, 1);
  CHECK(rep.lhs == 3);
  CHECK(rep.rhs == 3);  // dim_x X + m dim T_x X = 1 + 2
  CHECK(rep.holds);

  // Smooth point: equality with lhs = 2 dim X.
  auto line = hypersurface({"x", "y"}, "x - y");
  std::vector<Coefficient> pt = {Coefficient::rational(1), Coefficient::rational(1)};
  auto smooth = tangent_bound_check(line, pt, 1);
  CHECK(smooth.lhs == 2);
  CHECK(smooth.rhs == 2);
  CHECK(smooth.holds);

  auto a1 = a1_surface();
  std::vector<Coefficient> origin3(3, Coefficient::rational(0));
  auto va = tangent_bound_check(a1, origin3, 1);
  CHECK(va.tangent_dim == 3);
  CHECK(va.rhs == 5);
  CHECK(va.holds);
}

TEST_CASE("multiplicity bound") {
  auto r2 = PolyRing::create({"x", "y"}, 0);
  std::vector<Coefficient> origin2 = {Coefficient::rational(0), Coefficient::rational(0)};
  auto rep = mult_bound_check(parse_polynomial("x^2 - y^3", r2), origin2, 4);
  CHECK(rep.multiplicity == 2);
  REQUIRE(rep.rows.size() == 4);
  for (const auto& row : rep.rows) CHECK(row.holds);
  CHECK(rep.rows[3].bound == 6);  // 2*4 - [4/2]

  auto r1 = PolyRing::create({"x"}, 0);
  std::vector<Coefficient> origin1 = {Coefficient::rational(0)};
  auto lin = mult_bound_check(parse_polynomial("x", r1), origin1, 3);
  CHECK(lin.multiplicity == 1);
  for (const auto& row : lin.rows) {
    CHECK(row.fiber_dim == 0);
    CHECK(row.bound == 0);
    CHECK(row.holds);
  }

  auto r3 = PolyRing::create({"x", "y", "z"}, 0);
  std::vector<Coefficient> origin3(3, Coefficient::rational(0));
  auto cone = mult_bound_check(parse_polynomial("x^2 + y*z", r3), origin3, 2);
  CHECK(cone.multiplicity == 2);
  CHECK(cone.rows[1].bound == 5);
  // The fiber is the irreducible quadric (x^(1))^2 + y^(1) z^(1) in A^6:
  // dimension 5, meeting the bound with equality.
  CHECK(cone.rows[1].fiber_dim == 5);
  CHECK(cone.rows[1].holds);

  std::vector<Coefficient> off = {Coefficient::rational(1), Coefficient::rational(0)};
  CHECK_THROWS_AS(mult_bound_check(parse_polynomial("x^2 - y^3", r2), off, 2), InputError);
}

TEST_CASE("Segre cone: not a complete intersection, dimensions still reported") {
  // 2x2 minors of a generic 2x3 matrix: codimension 2 with three generators.
  auto r = PolyRing::create({"u1", "u2", "u3", "v1", "v2", "v3"}, 0);
  auto segre = make_variety(r,
                            {parse_polynomial("u1*v2 - u2*v1", r),
                             parse_polynomial("u1*v3 - u3*v1", r),
                             parse_polynomial("u2*v3 - u3*v2", r)},
                            2, true);

  auto v1 = certify_jets(segre, 1);
  CHECK(v1.verdict == JetVerdictKind::Inconclusive);
  CHECK(v1.dim_sing_fiber == 6);  // every level-1 equation vanishes over the origin
  CHECK(v1.dim_total == 8);
  CHECK_FALSE(v1.warnings.empty());

  auto v2 = certify_jets(segre, 2);
  CHECK(v2.verdict == JetVerdictKind::Inconclusive);
  // The fiber over the origin repeats the cone two levels down: 4 + 6.
  CHECK(v2.dim_sing_fiber == 10);
  CHECK(v2.dim_total == 12);
}
