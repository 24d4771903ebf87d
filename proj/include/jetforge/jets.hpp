// Jet rings and jet ideals of affine varieties: truncated-substitution
// equations, the shift derivation, the t-rescaling action, fiber ideals,
// and singular-locus data.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jetforge/errors.hpp"
#include "jetforge/groebner.hpp"
#include "jetforge/polynomial.hpp"
#include "jetforge/ring.hpp"
#include "jetforge/series.hpp"

namespace jetforge {

// A variety presentation: generators in N variables together with the
// asserted codimension and integrality. The codimension claim is checked,
// not trusted; integrality stays an assertion.
struct VarietyDatum {
  RingPtr ring;
  std::vector<Polynomial> generators;
  std::size_t asserted_codim = 0;
  bool asserted_integral = true;

  bool is_lci() const { return generators.size() == asserted_codim; }
};

inline VarietyDatum make_variety(RingPtr ring, std::vector<Polynomial> gens,
                                 std::size_t asserted_codim, bool asserted_integral = true) {
  VarietyDatum d;
  d.ring = std::move(ring);
  for (auto& g : gens) {
    if (g.is_zero()) throw InputError("variety generators must be nonzero");
    check_same_ring(d.ring, g.ring());
    d.generators.push_back(std::move(g));
  }
  if (asserted_codim == 0 || asserted_codim > d.ring->arity())
    throw InputError("asserted codimension out of range");
  d.asserted_codim = asserted_codim;
  d.asserted_integral = asserted_integral;
  return d;
}

// Checks dim V(generators) = N - r and returns n = N - r.
inline std::size_t validate_variety(const VarietyDatum& datum, const GroebnerOptions& opts = {}) {
  auto report = dimension(make_ideal(datum.ring, datum.generators), opts);
  if (!report)
    throw InputError("variety is empty; the codimension assertion cannot hold");
  const std::size_t expected = datum.ring->arity() - datum.asserted_codim;
  if (report->dim != expected)
    throw InputError("asserted codimension fails: dim = " + std::to_string(report->dim) +
                     ", expected " + std::to_string(expected));
  return expected;
}

enum class JetProvenance { Substitution, Derivation };

struct JetIdealResult {
  RingPtr jet_ring;
  std::size_t level = 0;
  // equations[g][j] is the t^j coefficient for generator g, 0 <= j <= level.
  std::vector<std::vector<Polynomial>> equations;
  JetProvenance provenance = JetProvenance::Substitution;
  VarietyDatum datum;

  std::vector<Polynomial> all_equations() const {
    std::vector<Polynomial> out;
    for (const auto& row : equations)
      for (const auto& f : row) out.push_back(f);
    return out;
  }

  Ideal ideal() const { return make_ideal(jet_ring, all_equations()); }
};

namespace detail {

inline void require_characteristic_above(const PolyRing& ring, std::size_t level,
                                         const char* what) {
  const std::uint32_t p = ring.characteristic();
  if (p != 0 && p <= level)
    throw InputError(std::string(what) + " needs characteristic 0 or > " + std::to_string(level));
}

// Leibniz image of f under the shift U^(j) -> U^(j+1), inside a ring with
// headroom for the extra level.
inline Polynomial shift_derivation_terms(const Polynomial& f, const RingPtr& target,
                                         std::size_t top_level) {
  const auto& ring = *f.ring();
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    for (std::size_t v = 0; v < ring.arity(); ++v) {
      const std::uint32_t e = t.mono.exponent(v);
      if (e == 0) continue;
      const std::size_t lvl = ring.level_of(v);
      if (lvl + 1 > top_level) throw InputError("derivation exceeds the jet truncation level");
      const std::size_t up = target->jet_index(ring.base_of(v), lvl + 1);
      Coefficient c = t.coeff * target->coeff_of_integer(static_cast<long>(e));
      if (c.is_zero()) continue;
      Monomial m = t.mono.with_exponent(v, e - 1);
      // Reinterpret in the target arity, then bump the shifted variable.
      std::vector<std::uint32_t> exps(target->arity(), 0);
      for (std::size_t i = 0; i < m.arity(); ++i) exps[i] = m.exponent(i);
      exps[up] += 1;
      out.push_back({Monomial(std::move(exps)), c});
    }
  }
  return Polynomial::from_terms(target, std::move(out));
}

}  // namespace detail

// The derivation taking U_i^(j) to U_i^(j+1); lands in the jet ring one
// level up.
inline Polynomial jet_derivation(const Polynomial& f) {
  const auto& ring = *f.ring();
  if (!ring.jet()) throw InputError("derivation needs a jet ring");
  const std::size_t next = ring.jet()->level + 1;
  detail::require_characteristic_above(ring, next, "jet derivation");
  // Recover the base names by stripping the level suffix.
  std::vector<std::string> raw;
  for (std::size_t i = 0; i < ring.jet()->base_arity; ++i) {
    const std::string& n = ring.name(i);
    raw.push_back(n.substr(0, n.rfind("_")));
  }
  RingPtr target = PolyRing::create_jet(raw, next, ring.characteristic(), ring.jet()->scheme);
  return detail::shift_derivation_terms(f, target, next);
}

// Same derivation, staying inside f's ring; requires level headroom.
inline Polynomial jet_derivation_within(const Polynomial& f) {
  const auto& ring = *f.ring();
  if (!ring.jet()) throw InputError("derivation needs a jet ring");
  detail::require_characteristic_above(ring, ring.jet()->level, "jet derivation");
  return detail::shift_derivation_terms(f, f.ring(), ring.jet()->level);
}

// Embeds a base-ring polynomial as the level-0 slice of a jet ring.
inline Polynomial embed_at_level_zero(const Polynomial& f, const RingPtr& jet_ring) {
  const std::size_t base = jet_ring->jet()->base_arity;
  if (f.ring()->arity() != base) throw InputError("base arity mismatch in jet embedding");
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    std::vector<std::uint32_t> exps(jet_ring->arity(), 0);
    for (std::size_t i = 0; i < base; ++i) exps[i] = t.mono.exponent(i);
    terms.push_back({Monomial(std::move(exps)), t.coeff});
  }
  return Polynomial::from_terms(jet_ring, std::move(terms));
}

// Equations F_0..F_m of the level-m jet scheme for each generator: the
// coefficients of t^j in f(sum_j U^(j) t^j) truncated at t^(m+1).
inline JetIdealResult jet_equations(const VarietyDatum& datum, std::size_t m,
                                    JetProvenance provenance = JetProvenance::Substitution,
                                    WeightScheme scheme = WeightScheme::A) {
  JetIdealResult result;
  result.level = m;
  result.provenance = provenance;
  result.datum = datum;
  result.jet_ring = PolyRing::create_jet(datum.ring->names(), m, datum.ring->characteristic(), scheme);
  const RingPtr& jr = result.jet_ring;
  const std::size_t base = datum.ring->arity();

  if (provenance == JetProvenance::Substitution) {
    std::vector<TruncSeries<Polynomial>> series;
    series.reserve(base);
    for (std::size_t i = 0; i < base; ++i) {
      TruncSeries<Polynomial> s(m + 1, Polynomial::zero(jr));
      for (std::size_t j = 0; j <= m; ++j) s[j] = Polynomial::variable(jr, jr->jet_index(i, j));
      series.push_back(std::move(s));
    }
    for (const auto& f : datum.generators) {
      auto coeffs = substitute_series_generic<Polynomial>(
          f, series, Polynomial::zero(jr), Polynomial::constant(jr, 1),
          [&](const Coefficient& c) { return Polynomial::constant(jr, c); });
      result.equations.push_back(coeffs.coefficients());
    }
  } else {
    detail::require_characteristic_above(*datum.ring, m, "derivation-based jet equations");
    for (const auto& f : datum.generators) {
      std::vector<Polynomial> row;
      row.push_back(embed_at_level_zero(f, jr));
      for (std::size_t j = 1; j <= m; ++j)
        row.push_back(detail::shift_derivation_terms(row.back(), jr, m));
      result.equations.push_back(std::move(row));
    }
  }
  return result;
}

// The t -> a*t action on jet coordinates: U_i^(j) scales by a^j.
inline std::vector<Coefficient> rescale_jet(std::span<const Coefficient> coords,
                                            const Coefficient& a, std::size_t m) {
  if (coords.size() % (m + 1) != 0)
    throw InputError("coordinate count is not a multiple of m+1");
  const std::size_t base = coords.size() / (m + 1);
  std::vector<Coefficient> out(coords.begin(), coords.end());
  Coefficient f = a;
  for (std::size_t j = 1; j <= m; ++j) {
    for (std::size_t i = 0; i < base; ++i) out[j * base + i] = coords[j * base + i] * f;
    if (j < m) f = f * a;
  }
  return out;
}

// Ring of the jet variables of levels 1..m (the ambient space of fibers).
inline RingPtr fiber_ring(const RingPtr& jet_ring) {
  const auto& js = *jet_ring->jet();
  if (js.level == 0) throw InputError("fibers need jet level >= 1");
  std::vector<std::string> names(jet_ring->names().begin() + js.base_arity,
                                 jet_ring->names().end());
  return PolyRing::create(std::move(names), jet_ring->characteristic());
}

// Substitute U^(0) := point; the result generates the ideal of the fiber of
// the jet projection over that point.
inline Ideal fiber_ideal(const JetIdealResult& jets, std::span<const Coefficient> point) {
  const std::size_t base = jets.datum.ring->arity();
  if (point.size() != base) throw InputError("fiber point arity mismatch");
  for (const auto& f : jets.datum.generators)
    if (!f.evaluate(point).is_zero()) throw InputError("fiber point does not lie on the variety");

  RingPtr fr = fiber_ring(jets.jet_ring);
  std::vector<Polynomial> gens;
  for (const auto& row : jets.equations) {
    for (const auto& f : row) {
      std::vector<Term> terms;
      for (const auto& t : f.terms()) {
        Coefficient c = t.coeff;
        for (std::size_t i = 0; i < base; ++i) {
          const std::uint32_t e = t.mono.exponent(i);
          if (e) c = c * point[i].pow(e);
        }
        if (c.is_zero()) continue;
        std::vector<std::uint32_t> exps(fr->arity(), 0);
        for (std::size_t i = base; i < jets.jet_ring->arity(); ++i)
          exps[i - base] = t.mono.exponent(i);
        terms.push_back({Monomial(std::move(exps)), c});
      }
      Polynomial g = Polynomial::from_terms(fr, std::move(terms));
      if (!g.is_zero()) gens.push_back(std::move(g));
    }
  }
  return make_ideal(fr, std::move(gens));
}

namespace detail {

inline Polynomial poly_determinant(const std::vector<std::vector<Polynomial>>& m,
                                   std::vector<std::size_t> rows, std::vector<std::size_t> cols,
                                   const RingPtr& ring) {
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  Polynomial acc = Polynomial::zero(ring);
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Polynomial& pivot = m[rows[0]][cols[k]];
    if (pivot.is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (j != k) sub_cols.push_back(cols[j]);
    Polynomial minor = poly_determinant(m, sub_rows, sub_cols, ring);
    Polynomial contrib = pivot * minor;
    acc = (k % 2 == 0) ? acc + contrib : acc - contrib;
  }
  return acc;
}

}  // namespace detail

struct SingularLocus {
  Ideal ideal;
  // False when the datum is not a complete intersection; the minors are then
  // only a heuristic and downstream verdicts must say so.
  bool conclusive = true;
};

// Generators plus all r x r minors of their Jacobian; cuts out the singular
// locus of a complete intersection of codimension r.
inline SingularLocus singular_locus_ideal(const VarietyDatum& datum) {
  const std::size_t r = datum.asserted_codim;
  const std::size_t n_gens = datum.generators.size();
  const std::size_t n_vars = datum.ring->arity();

  std::vector<std::vector<Polynomial>> jac(n_gens);
  for (std::size_t g = 0; g < n_gens; ++g)
    for (std::size_t v = 0; v < n_vars; ++v)
      jac[g].push_back(datum.generators[g].partial_derivative(v));

  std::vector<Polynomial> gens = datum.generators;
  if (r <= n_gens) {
    // All r-subsets of rows and columns.
    std::vector<std::size_t> rows(r), cols(r);
    auto choose = [&](auto&& self, std::vector<std::size_t>& sel, std::size_t from,
                      std::size_t total, std::size_t depth, auto&& emit) -> void {
      if (depth == sel.size()) {
        emit();
        return;
      }
      for (std::size_t i = from; i < total; ++i) {
        sel[depth] = i;
        self(self, sel, i + 1, total, depth + 1, emit);
      }
    };
    choose(choose, rows, 0, n_gens, 0, [&] {
      choose(choose, cols, 0, n_vars, 0, [&] {
        Polynomial det = detail::poly_determinant(jac, rows, cols, datum.ring);
        if (!det.is_zero()) gens.push_back(det);
      });
    });
  }

  SingularLocus out{make_ideal(datum.ring, std::move(gens)), datum.is_lci()};
  return out;
}

// Rank over the coefficient field by Gaussian elimination.
inline std::size_t matrix_rank(std::vector<std::vector<Coefficient>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    Coefficient inv = m[rank][c].inv();
    for (std::size_t cc = c; cc < cols; ++cc) m[rank][cc] = m[rank][cc] * inv;
    for (std::size_t rr = 0; rr < rows; ++rr) {
      if (rr == rank || m[rr][c].is_zero()) continue;
      Coefficient factor = m[rr][c];
      for (std::size_t cc = c; cc < cols; ++cc)
        m[rr][cc] = m[rr][cc] - factor * m[rank][cc];
    }
    ++rank;
  }
  return rank;
}

// Rank of the Jacobian of the ideal's generators at a point of its variety.
inline std::size_t jacobian_rank_at(const Ideal& ideal, std::span<const Coefficient> point) {
  for (const auto& g : ideal.generators)
    if (!g.evaluate(point).is_zero()) throw InputError("point does not satisfy the generators");
  std::vector<std::vector<Coefficient>> m;
  for (const auto& g : ideal.generators) {
    std::vector<Coefficient> row;
    for (std::size_t v = 0; v < ideal.ring->arity(); ++v)
      row.push_back(g.partial_derivative(v).evaluate(point));
    m.push_back(std::move(row));
  }
  return matrix_rank(std::move(m));
}

inline bool origin_on_variety(const Ideal& ideal) {
  for (const auto& g : ideal.generators)
    if (!g.constant_term().is_zero()) return false;
  return true;
}

// Certifies V(ideal) is contained in the origin: every variable lies in the
// radical, checked with one auxiliary-variable basis per coordinate.
inline bool variety_contained_in_origin(const Ideal& ideal, const GroebnerOptions& opts = {}) {
  const std::size_t n = ideal.ring->arity();
  std::vector<std::string> ext_names = ideal.ring->names();
  std::string aux = "_rad";
  while (ideal.ring->index_of(aux)) aux += "_";
  ext_names.push_back(aux);
  RingPtr ext = PolyRing::create(ext_names, ideal.ring->characteristic());

  std::vector<Polynomial> lifted;
  for (const auto& g : ideal.generators) {
    std::vector<Term> terms;
    for (const auto& t : g.terms()) {
      std::vector<std::uint32_t> exps = t.mono.exponents();
      exps.push_back(0);
      terms.push_back({Monomial(std::move(exps)), t.coeff});
    }
    lifted.push_back(Polynomial::from_terms(ext, std::move(terms)));
  }

  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Polynomial> gens = lifted;
    Polynomial one = Polynomial::constant(ext, 1);
    Polynomial wx = Polynomial::variable(ext, n) * Polynomial::variable(ext, v);
    gens.push_back(one - wx);
    auto gb = buchberger(make_ideal(ext, std::move(gens)), MonomialOrder::grevlex(), opts);
    if (!gb.contains_one()) return false;
  }
  return true;
}

}  // namespace jetforge
