#include <catch2/catch_amalgamated.hpp>

#include "jetforge/counting.hpp"
#include "jetforge/jets.hpp"
#include "jetforge/parser.hpp"
#include "test_util.hpp"

using namespace jetforge;
namespace jt = jetforge::testing;

namespace {

VarietyDatum cusp_datum(std::uint32_t characteristic = 0) {
  auto r = PolyRing::create({"x", "y"}, characteristic);
  return make_variety(r, {parse_polynomial("x^2 - y^3", r)}, 1);
}

std::vector<Coefficient> qpoint(std::initializer_list<long> vals) {
  std::vector<Coefficient> out;
  for (long v : vals) out.push_back(Coefficient::rational(v));
  return out;
}

}  // namespace

TEST_CASE("derivation of jet variables") {
  auto jr = PolyRing::create_jet({"u"}, 0, 0);
  auto u0 = Polynomial::variable(jr, 0);
  auto d = jet_derivation(u0);
  CHECK(d.ring()->jet()->level == 1);
  CHECK(d == Polynomial::variable(d.ring(), 1));  // D(u^(0)) = u^(1)

  CHECK(jet_derivation(Polynomial::constant(jr, 7)).is_zero());

  // Leibniz on a product of two level-0 variables.
  auto jr2 = PolyRing::create_jet({"u", "v"}, 0, 0);
  auto prod = Polynomial::variable(jr2, 0) * Polynomial::variable(jr2, 1);
  auto dp = jet_derivation(prod);
  auto target = dp.ring();
  auto expect = Polynomial::variable(target, target->jet_index(0, 1)) *
                    Polynomial::variable(target, target->jet_index(1, 0)) +
                Polynomial::variable(target, target->jet_index(0, 0)) *
                    Polynomial::variable(target, target->jet_index(1, 1));
  CHECK(dp == expect);
}

TEST_CASE("derivation characteristic guard") {
  auto jr = PolyRing::create_jet({"u"}, 2, 3);
  auto f = Polynomial::variable(jr, jr->jet_index(0, 0));
  CHECK_THROWS_AS(jet_derivation(f), InputError);  // p = 3 <= level of use
}

TEST_CASE("jet equations by substitution") {
  auto r = PolyRing::create({"x"}, 0);
  auto datum = make_variety(r, {parse_polynomial("x^2", r)}, 1);
  auto jets = jet_equations(datum, 1);
  REQUIRE(jets.equations.size() == 1);
  const auto& row = jets.equations[0];
  auto jr = jets.jet_ring;
  CHECK(row[0] == parse_polynomial("x_0^2", jr));
  CHECK(row[1] == parse_polynomial("2*x_0*x_1", jr));

  auto cusp = jet_equations(cusp_datum(), 1);
  auto cr = cusp.jet_ring;
  CHECK(cusp.equations[0][0] == parse_polynomial("x_0^2 - y_0^3", cr));
  CHECK(cusp.equations[0][1] == parse_polynomial("2*x_0*x_1 - 3*y_0^2*y_1", cr));

  auto r3 = PolyRing::create({"x", "y", "z"}, 0);
  auto quadric = make_variety(r3, {parse_polynomial("x*y - z^2", r3)}, 1);
  auto q2 = jet_equations(quadric, 2);
  auto qr = q2.jet_ring;
  CHECK(q2.equations[0][2] ==
        parse_polynomial("x_0*y_2 + x_1*y_1 + x_2*y_0 - 2*z_0*z_2 - z_1^2", qr));
}

TEST_CASE("substitution identity: equations evaluated at a series") {
  auto rng = jt::make_rng(71);
  for (std::uint32_t characteristic : {0u, 5u}) {
    auto r = PolyRing::create({"x", "y", "z"}, characteristic);
    for (int it = 0; it < 30; ++it) {
      auto f = jt::random_polynomial(rng, r, 3, 4);
      if (f.is_zero()) continue;
      const std::size_t m = 3;
      auto datum = make_variety(r, {f}, 1);
      auto jets = jet_equations(datum, m);

      std::vector<TruncSeries<Coefficient>> arcs;
      std::vector<Coefficient> flat;  // level-major jet coordinates
      for (std::size_t i = 0; i < 3; ++i) arcs.push_back(jt::random_series(rng, m + 1, characteristic));
      for (std::size_t j = 0; j <= m; ++j)
        for (std::size_t i = 0; i < 3; ++i) flat.push_back(arcs[i][j]);

      auto direct = substitute_series(f, arcs);
      for (std::size_t j = 0; j <= m; ++j)
        CHECK(jets.equations[0][j].evaluate(flat) == direct[j]);
    }
  }
}

TEST_CASE("derivation provenance matches substitution in normalized coordinates") {
  // D^j(f) equals j! * F_j after the diagonal change U^(a) -> U^(a)/a!, the
  // coordinate change between the raw and the normalized jet embeddings.
  auto rng = jt::make_rng(73);
  auto r = PolyRing::create({"x", "y"}, 0);
  for (int it = 0; it < 20; ++it) {
    auto f = jt::random_polynomial(rng, r, 4, 4);
    if (f.is_zero()) continue;
    auto datum = make_variety(r, {f}, 1);
    const std::size_t m = 3;
    auto sub = jet_equations(datum, m, JetProvenance::Substitution);
    auto der = jet_equations(datum, m, JetProvenance::Derivation);
    auto jr = sub.jet_ring;

    std::vector<Polynomial> normalize;
    long fact = 1;
    for (std::size_t v = 0; v < jr->arity(); ++v) {
      const std::size_t lvl = jr->level_of(v);
      if (v % 2 == 0) {
        fact = 1;
        for (std::size_t k = 2; k <= lvl; ++k) fact *= static_cast<long>(k);
      }
      normalize.push_back(
          Polynomial::variable(jr, v).scaled(Coefficient::rational(1, fact)));
    }

    long jfact = 1;
    for (std::size_t j = 0; j <= m; ++j) {
      if (j > 0) jfact *= static_cast<long>(j);
      auto rescaled = sub.equations[0][j].substitute(normalize).scaled(
          Coefficient::rational(jfact));
      CHECK(der.equations[0][j] == rescaled);
    }
  }

  // The two ideals differ by a monomial-preserving change of coordinates, so
  // dimensions agree.
  auto cusp = cusp_datum();
  auto ds = dimension(jet_equations(cusp, 2, JetProvenance::Substitution).ideal());
  auto dd = dimension(jet_equations(cusp, 2, JetProvenance::Derivation).ideal());
  REQUIRE(ds.has_value());
  REQUIRE(dd.has_value());
  CHECK(ds->dim == dd->dim);
}

TEST_CASE("fiber grading under the jet weights") {
  // For homogeneous f, the fiber-over-origin part of F_j is weighted
  // homogeneous of degree j when U^(j) has weight j.
  auto r = PolyRing::create({"x", "y", "z"}, 0);
  auto f = parse_polynomial("x^3 + y^3 + z^3", r);
  auto datum = make_variety(r, {f}, 1);
  auto jets = jet_equations(datum, 4);
  auto weights = jets.jet_ring->jet_weights();
  std::vector<Coefficient> origin = qpoint({0, 0, 0});
  auto fiber = fiber_ideal(jets, origin);
  auto fweights = std::vector<std::uint64_t>(weights.begin() + 3, weights.end());
  for (const auto& g : fiber.generators) {
    const std::uint64_t d = g.terms()[0].mono.weighted_degree(fweights);
    for (const auto& t : g.terms()) CHECK(t.mono.weighted_degree(fweights) == d);
  }
}

TEST_CASE("rescaling action") {
  auto rng = jt::make_rng(77);
  const std::size_t m = 3;
  std::vector<Coefficient> coords;
  for (int i = 0; i < 8; ++i) coords.push_back(jt::random_coeff(rng, 0));

  auto same = rescale_jet(coords, Coefficient::rational(1), m);
  CHECK(same == coords);

  // a = 0 keeps level-0 coordinates and kills the rest.
  auto collapsed = rescale_jet(coords, Coefficient::rational(0), m);
  for (std::size_t i = 0; i < 2; ++i) CHECK(collapsed[i] == coords[i]);
  for (std::size_t i = 2; i < 8; ++i) CHECK(collapsed[i].is_zero());

  // Composition: rescale by a then b equals rescale by a*b.
  auto a = Coefficient::rational(2, 3), b = Coefficient::rational(-5);
  CHECK(rescale_jet(rescale_jet(coords, a, m), b, m) == rescale_jet(coords, a * b, m));

  // F_j(rescale(v, a)) = a^j F_j(v) on fibers over the origin.
  auto r = PolyRing::create({"x", "y"}, 0);
  auto datum = make_variety(r, {parse_polynomial("x^2 - y^3", r)}, 1);
  auto jets = jet_equations(datum, m);
  std::vector<Coefficient> v = coords;
  v[0] = Coefficient::rational(0);
  v[1] = Coefficient::rational(0);
  auto scaled = rescale_jet(v, a, m);
  Coefficient apow = Coefficient::rational(1);
  for (std::size_t j = 0; j <= m; ++j) {
    CHECK(jets.equations[0][j].evaluate(scaled) == apow * jets.equations[0][j].evaluate(v));
    apow = apow * a;
  }
}

TEST_CASE("fiber ideals of the cusp over the origin") {
  auto datum = cusp_datum();
  std::vector<Coefficient> origin = qpoint({0, 0});

  // m = 1: both coefficients vanish at the origin, so the fiber is A^2.
  auto f1 = fiber_ideal(jet_equations(datum, 1), origin);
  CHECK(f1.generators.empty());
  CHECK(f1.ring->arity() == 2);

  // m = 2: one surviving equation (x_1)^2; dimension 3.
  auto f2 = fiber_ideal(jet_equations(datum, 2), origin);
  REQUIRE(f2.generators.size() == 1);
  CHECK(f2.generators[0] == parse_polynomial("x_1^2", f2.ring));
  auto d2 = dimension(f2);
  REQUIRE(d2.has_value());
  CHECK(d2->dim == 3);

  CHECK_THROWS_AS(fiber_ideal(jet_equations(datum, 1), qpoint({1, 2})), InputError);
}

TEST_CASE("fibers over smooth points are affine spaces") {
  auto r = PolyRing::create({"x", "y"}, 0);
  auto datum = make_variety(r, {parse_polynomial("x - y", r)}, 1);
  auto jets = jet_equations(datum, 3);
  auto fiber = fiber_ideal(jets, qpoint({1, 1}));
  auto report = dimension(fiber);
  REQUIRE(report.has_value());
  CHECK(report->dim == 3);  // affine bundle with fiber A^{m n}, n = 1
}

TEST_CASE("singular locus ideals") {
  auto cusp = singular_locus_ideal(cusp_datum());
  CHECK(cusp.conclusive);
  REQUIRE(cusp.ideal.generators.size() == 3);
  CHECK(variety_contained_in_origin(cusp.ideal));

  auto r3 = PolyRing::create({"x", "y", "z"}, 0);
  auto cone = make_variety(r3, {parse_polynomial("x^2 + y*z", r3)}, 1);
  auto sing = singular_locus_ideal(cone);
  CHECK(variety_contained_in_origin(sing.ideal));

  auto line = make_variety(PolyRing::create({"x", "y"}, 0),
                           {parse_polynomial("x - y", PolyRing::create({"x", "y"}, 0))}, 1);
  // Smooth: the singular ideal contains a unit.
  auto smooth = singular_locus_ideal(line);
  auto gb = buchberger(smooth.ideal, MonomialOrder::grevlex());
  CHECK(gb.contains_one());

  // Not a complete intersection: flagged heuristic.
  auto segre = make_variety(
      r3, {parse_polynomial("x*y", r3), parse_polynomial("y*z", r3), parse_polynomial("x*z", r3)},
      2, true);
  CHECK_FALSE(singular_locus_ideal(segre).conclusive);
}

TEST_CASE("variety_contained_in_origin rejects positive-dimensional loci") {
  auto r = PolyRing::create({"x", "y"}, 0);
  auto axis = make_ideal(r, {parse_polynomial("x", r)});
  CHECK_FALSE(variety_contained_in_origin(axis));
  auto shifted = make_ideal(r, {parse_polynomial("x - 1", r), parse_polynomial("y", r)});
  CHECK_FALSE(variety_contained_in_origin(shifted));
}

TEST_CASE("jacobian rank at points") {
  // Level-1 jets of the cusp: rank 0 at the origin, maximal over smooth points.
  auto jets = jet_equations(cusp_datum(), 1);
  auto idl = jets.ideal();
  std::vector<Coefficient> origin = qpoint({0, 0, 0, 0});
  CHECK(jacobian_rank_at(idl, origin) == 0);

  // (1,1) is a smooth point of the cusp; lift it with 2*x_1 = 3*y_1.
  std::vector<Coefficient> lifted = qpoint({1, 1, 3, 2});
  CHECK(jacobian_rank_at(idl, lifted) == 2);

  CHECK_THROWS_AS(jacobian_rank_at(idl, qpoint({1, 2, 0, 0})), InputError);

  // Jets of a hyperplane are cut out by independent linear equations.
  auto r = PolyRing::create({"x", "y"}, 0);
  auto plane = make_variety(r, {parse_polynomial("x", r)}, 1);
  auto pj = jet_equations(plane, 2);
  std::vector<Coefficient> zero6 = qpoint({0, 0, 0, 0, 0, 0});
  CHECK(jacobian_rank_at(pj.ideal(), zero6) == 3);  // m + 1 equations
}

TEST_CASE("variety validation checks the asserted codimension") {
  auto r = PolyRing::create({"x", "y"}, 0);
  CHECK(validate_variety(cusp_datum()) == 1);
  auto bad = make_variety(r, {parse_polynomial("x*y", r)}, 2);  // claims codim 2
  CHECK_THROWS_AS(validate_variety(bad), InputError);
}
