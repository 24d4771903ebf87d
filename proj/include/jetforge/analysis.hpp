// Decision procedures on jet schemes: the irreducibility / pure-dimension
// criterion for complete intersections, dimension tables, the diagonal
// hypersurface analyzer, log-canonical-threshold estimates, resolution-data
// condition checks, and the tangent/multiplicity dimension bounds.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jetforge/groebner.hpp"
#include "jetforge/jets.hpp"
#include "jetforge/polynomial.hpp"

namespace jetforge {

enum class JetVerdictKind { Irreducible, PureDimensionalOnly, NotPureDimensional, Inconclusive };

inline const char* to_string(JetVerdictKind v) {
  switch (v) {
    case JetVerdictKind::Irreducible: return "Irreducible";
    case JetVerdictKind::PureDimensionalOnly: return "PureDimensionalOnly";
    case JetVerdictKind::NotPureDimensional: return "NotPureDimensional";
    case JetVerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct JetVerdict {
  std::size_t m = 0;
  std::size_t base_dim = 0;            // n = dim X
  long long dim_total = -1;            // dim X_m
  long long dim_sing_fiber = -1;       // dim of jets over the singular locus; -1 when empty
  bool sing_locus_empty = false;
  JetVerdictKind verdict = JetVerdictKind::Inconclusive;
  std::optional<DimensionReport> fiber_report;
  std::vector<std::string> warnings;
};

namespace detail {

struct SingularAnalysis {
  std::size_t base_dim = 0;
  SingularLocus locus;
  bool empty = false;        // smooth variety
  bool origin_only = false;  // certified X_sing = {0}
};

inline SingularAnalysis analyze_singular_locus(const VarietyDatum& datum,
                                               const GroebnerOptions& opts) {
  SingularAnalysis a;
  a.base_dim = validate_variety(datum, opts);
  a.locus = singular_locus_ideal(datum);
  auto gb = buchberger(a.locus.ideal, MonomialOrder::grevlex(), opts);
  a.empty = gb.contains_one();
  if (!a.empty) a.origin_only = variety_contained_in_origin(a.locus.ideal, opts);
  return a;
}

// Dimension of the jets over the singular locus at level m; empty() when the
// variety is smooth. Uses the fiber-over-origin specialization whenever
// X_sing = {0} is certified, the combined ideal otherwise.
inline std::optional<DimensionReport> singular_fiber_dimension(const VarietyDatum& datum,
                                                               const SingularAnalysis& a,
                                                               std::size_t m,
                                                               const GroebnerOptions& opts) {
  if (a.empty) return std::nullopt;
  auto jets = jet_equations(datum, m);
  if (a.origin_only) {
    std::vector<Coefficient> origin(datum.ring->arity(), datum.ring->coeff_zero());
    auto fiber = fiber_ideal(jets, origin);
    auto report = dimension(fiber, opts);
    if (!report) throw InputError("internal: fiber over a point of X cannot be empty");
    return report;
  }
  std::vector<Polynomial> gens = jets.all_equations();
  for (const auto& g : a.locus.ideal.generators)
    gens.push_back(embed_at_level_zero(g, jets.jet_ring));
  auto report = dimension(make_ideal(jets.jet_ring, std::move(gens)), opts);
  if (!report) throw InputError("internal: jets over a nonempty locus cannot be empty");
  return report;
}

inline long long expected_dim(std::size_t n, std::size_t m) {
  return static_cast<long long>(n) * static_cast<long long>(m + 1);
}

}  // namespace detail

// Applies the dimension criterion: X_m is irreducible iff the jets over the
// singular locus have dimension < n(m+1), and pure dimensional iff
// dim X_m <= n(m+1). Sound for integral complete intersections; anything
// else gets Inconclusive with the dimensions attached.
inline JetVerdict certify_jets(const VarietyDatum& datum, std::size_t m,
                               const GroebnerOptions& opts = {}) {
  if (m == 0) throw InputError("jet certification needs level m >= 1");
  detail::SingularAnalysis analysis = detail::analyze_singular_locus(datum, opts);

  JetVerdict out;
  out.m = m;
  out.base_dim = analysis.base_dim;
  out.sing_locus_empty = analysis.empty;

  auto fiber = detail::singular_fiber_dimension(datum, analysis, m, opts);
  if (fiber) {
    out.dim_sing_fiber = static_cast<long long>(fiber->dim);
    out.fiber_report = *fiber;
  }

  const long long expected = detail::expected_dim(analysis.base_dim, m);
  if (datum.asserted_integral) {
    // X_m is jets-over-smooth (a bundle of dimension n(m+1) over the dense
    // smooth locus) together with the jets over the singular locus.
    out.dim_total = std::max(expected, out.dim_sing_fiber);
  } else {
    auto full = dimension(jet_equations(datum, m).ideal(), opts);
    out.dim_total = full ? static_cast<long long>(full->dim) : -1;
    out.warnings.push_back("integrality not asserted: total dimension computed from the full jet ideal");
  }

  if (!datum.is_lci()) {
    out.verdict = JetVerdictKind::Inconclusive;
    out.warnings.push_back(
        "not a complete intersection presentation: criteria do not apply, dimensions are reported as evidence");
  } else if (!datum.asserted_integral) {
    out.verdict = JetVerdictKind::Inconclusive;
    out.warnings.push_back("variety not asserted integral: irreducibility criterion withheld");
  } else if (analysis.empty || out.dim_sing_fiber < expected) {
    out.verdict = JetVerdictKind::Irreducible;
  } else if (out.dim_sing_fiber == expected) {
    out.verdict = JetVerdictKind::PureDimensionalOnly;
  } else {
    out.verdict = JetVerdictKind::NotPureDimensional;
  }
  return out;
}

struct JetTableRow {
  std::size_t m = 0;
  long long dim_total = -1;
  long long dim_sing_fiber = -1;
};

struct JetDimensionTable {
  std::size_t base_dim = 0;
  bool sing_locus_empty = false;
  std::vector<JetTableRow> rows;
  // Fiber dimensions must grow by at least n per level for complete
  // intersections; reported so callers can assert it.
  bool monotone = true;
  std::optional<std::size_t> truncated_at_m;
};

inline JetDimensionTable jet_dimension_table(const VarietyDatum& datum, std::size_t max_m,
                                             const GroebnerOptions& opts = {}) {
  if (max_m == 0) throw InputError("dimension table needs max level >= 1");
  detail::SingularAnalysis analysis = detail::analyze_singular_locus(datum, opts);

  JetDimensionTable table;
  table.base_dim = analysis.base_dim;
  table.sing_locus_empty = analysis.empty;

  for (std::size_t m = 1; m <= max_m; ++m) {
    JetTableRow row;
    row.m = m;
    try {
      auto fiber = detail::singular_fiber_dimension(datum, analysis, m, opts);
      row.dim_sing_fiber = fiber ? static_cast<long long>(fiber->dim) : -1;
      if (datum.asserted_integral) {
        row.dim_total = std::max(detail::expected_dim(analysis.base_dim, m), row.dim_sing_fiber);
      } else {
        auto full = dimension(jet_equations(datum, m).ideal(), opts);
        row.dim_total = full ? static_cast<long long>(full->dim) : -1;
      }
    } catch (const BudgetExhausted&) {
      table.truncated_at_m = m;
      break;
    }
    table.rows.push_back(row);
  }

  if (datum.is_lci() && !analysis.empty) {
    for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
      if (table.rows[i + 1].dim_sing_fiber <
          table.rows[i].dim_sing_fiber + static_cast<long long>(analysis.base_dim))
        table.monotone = false;
    }
  }
  return table;
}

struct DiagonalStratum {
  std::vector<std::size_t> orders;
  std::uint64_t dim_bound = 0;
  bool auto_vanishing = false;  // all d_i a_i exceed the truncation
};

struct DiagonalReport {
  bool all_irreducible = false;
  mpq_class reciprocal_sum;
  std::size_t level = 0;
  std::vector<DiagonalStratum> strata;
};

// Diagonal hypersurface x_1^{d_1} + ... + x_n^{d_n}: jets are irreducible at
// every level iff sum 1/d_i > 1. The stratum table lists the dimension
// bounds by order vector at the given level.
inline DiagonalReport analyze_diagonal(std::span<const std::size_t> degrees, std::size_t m) {
  const std::size_t n = degrees.size();
  if (n < 3) throw InputError("diagonal analyzer needs at least 3 variables");
  for (auto d : degrees)
    if (d == 0) throw InputError("degrees must be positive");

  DiagonalReport out;
  out.level = m;
  out.reciprocal_sum = 0;
  for (auto d : degrees) out.reciprocal_sum += mpq_class(1, static_cast<unsigned long>(d));
  out.reciprocal_sum.canonicalize();
  out.all_irreducible = out.reciprocal_sum > 1;

  double rows = 1;
  for (std::size_t i = 0; i < n; ++i) rows *= static_cast<double>(m + 1);
  if (rows > 200000) throw InputError("stratum table too large; lower m");

  std::vector<std::size_t> a(n, 1);
  while (true) {
    DiagonalStratum s;
    s.orders = a;
    std::size_t r = degrees[0] * a[0], which = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (degrees[i] * a[i] < r) {
        r = degrees[i] * a[i];
        which = i;
      }
    }
    if (r >= m + 1) {
      s.auto_vanishing = true;
      std::uint64_t b = 0;
      for (std::size_t i = 0; i < n; ++i) b += (m + 1 - a[i]);
      s.dim_bound = b;
    } else {
      std::uint64_t b = r - a[which];
      for (std::size_t i = 0; i < n; ++i)
        if (i != which) b += (m + 1 - a[i]);
      s.dim_bound = b;
    }
    out.strata.push_back(std::move(s));

    std::size_t pos = n;
    while (pos-- > 0) {
      if (++a[pos] <= m + 1) break;
      a[pos] = 1;
      if (pos == 0) return out;
    }
  }
}

struct LctEstimate {
  std::size_t ambient_dim = 0;
  std::size_t scan_bound = 0;
  std::vector<long long> jet_dims;  // dim D_m for m = 0..scan_bound
  mpq_class max_ratio;
  mpq_class estimate;               // ambient_dim - max_ratio; an upper bound for the lct
  std::size_t argmax_m = 0;
  bool exact = false;
  std::optional<std::size_t> truncated_at_m;
};

// n - max_{m <= M} dim D_m / (m+1). The sup over all m dominates the scanned
// max, so the result is always an upper bound; it is flagged exact when a
// user-supplied period divides m+1 at some maximizing level.
inline LctEstimate lct_estimate(const Polynomial& f, std::size_t max_m, std::size_t period = 0,
                                const GroebnerOptions& opts = {}) {
  if (f.is_zero()) throw InputError("lct needs a nonzero divisor");
  if (f.is_constant()) throw InputError("lct needs a non-unit divisor");

  LctEstimate out;
  out.ambient_dim = f.ring()->arity();
  out.scan_bound = max_m;

  VarietyDatum datum;
  datum.ring = f.ring();
  datum.generators = {f};
  datum.asserted_codim = 1;
  datum.asserted_integral = false;

  for (std::size_t m = 0; m <= max_m; ++m) {
    std::optional<DimensionReport> report;
    try {
      report = dimension(jet_equations(datum, m).ideal(), opts);
    } catch (const BudgetExhausted&) {
      out.truncated_at_m = m;
      break;
    }
    if (!report) throw InputError("divisor has no points; lct undefined");
    out.jet_dims.push_back(static_cast<long long>(report->dim));
  }
  if (out.jet_dims.empty()) throw InputError("lct scan exhausted its budget before m = 0");

  std::vector<std::size_t> attaining;
  for (std::size_t m = 0; m < out.jet_dims.size(); ++m) {
    mpq_class ratio(static_cast<long>(out.jet_dims[m]), static_cast<unsigned long>(m + 1));
    ratio.canonicalize();
    if (m == 0 || ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.argmax_m = m;
      attaining.clear();
    }
    if (ratio == out.max_ratio) attaining.push_back(m);
  }
  out.estimate = mpq_class(static_cast<long>(out.ambient_dim)) - out.max_ratio;
  out.estimate.canonicalize();

  if (period > 0 && !out.truncated_at_m) {
    for (std::size_t m : attaining)
      if ((m + 1) % period == 0) out.exact = true;
  }
  return out;
}

struct ResolutionDatum {
  std::size_t codim = 0;  // r
  // (multiplicity a_i, discrepancy b_i); index 0 is the distinguished divisor
  // dominating X, with a_1 = 1 and b_1 = r - 1.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> divisors;
};

struct ResolutionVerdict {
  bool canonical_condition = false;      // b_i >= r a_i for all i >= 2
  bool log_canonical_condition = false;  // b_i >= r a_i - 1 for all i
  std::optional<std::size_t> canonical_fail_index;
  std::optional<std::size_t> log_canonical_fail_index;
  std::string predicted;
};

inline ResolutionVerdict check_resolution_data(const ResolutionDatum& datum) {
  if (datum.codim == 0) throw InputError("resolution data needs codimension >= 1");
  if (datum.divisors.empty()) throw InputError("resolution data needs at least one divisor");
  for (const auto& [a, b] : datum.divisors)
    if (a == 0) throw InputError("divisor multiplicities must be positive");
  if (datum.divisors[0].first != 1)
    throw InputError("the distinguished divisor must have multiplicity 1");
  if (datum.divisors[0].second != datum.codim - 1)
    throw InputError("the distinguished divisor must have discrepancy r - 1");

  ResolutionVerdict out;
  out.canonical_condition = true;
  out.log_canonical_condition = true;
  const std::uint64_t r = datum.codim;
  for (std::size_t i = 0; i < datum.divisors.size(); ++i) {
    const auto [a, b] = datum.divisors[i];
    if (i >= 1 && b < r * a && !out.canonical_fail_index) {
      out.canonical_condition = false;
      out.canonical_fail_index = i;
    }
    if (b + 1 < r * a && !out.log_canonical_fail_index) {
      out.log_canonical_condition = false;
      out.log_canonical_fail_index = i;
    }
  }

  if (out.canonical_condition) {
    out.predicted =
        "every jet level has dim X_m = (m+1)dim X with a unique component of maximal dimension; "
        "for a complete intersection the jet schemes are irreducible at every level";
  } else if (out.log_canonical_condition) {
    out.predicted =
        "every jet level has dim X_m = (m+1)dim X; for a complete intersection the jet schemes "
        "are pure dimensional, possibly with several maximal components";
  } else {
    out.predicted = "dim X_m exceeds (m+1)dim X at some level m";
  }
  return out;
}

struct TangentBoundReport {
  long long lhs = 0;  // dim of the fiber at level 2m over the point
  long long rhs = 0;  // dim_x X + m dim T_x X
  bool holds = false;
  std::size_t tangent_dim = 0;
  std::size_t local_dim = 0;
};

// Fiber of the level-2m projection over x has dimension at least
// dim_x X + m dim T_x X.
inline TangentBoundReport tangent_bound_check(const VarietyDatum& datum,
                                              std::span<const Coefficient> x, std::size_t m,
                                              const GroebnerOptions& opts = {}) {
  if (m == 0) throw InputError("tangent bound needs m >= 1");
  const std::size_t n = validate_variety(datum, opts);
  for (const auto& g : datum.generators)
    if (!g.evaluate(x).is_zero()) throw InputError("point does not lie on the variety");

  TangentBoundReport out;
  out.local_dim = n;
  const std::size_t rank = jacobian_rank_at(make_ideal(datum.ring, datum.generators), x);
  out.tangent_dim = datum.ring->arity() - rank;

  auto jets = jet_equations(datum, 2 * m);
  auto fiber = dimension(fiber_ideal(jets, x), opts);
  if (!fiber) throw InputError("internal: fiber over a point of X cannot be empty");
  out.lhs = static_cast<long long>(fiber->dim);
  out.rhs = static_cast<long long>(n + m * out.tangent_dim);
  out.holds = out.lhs >= out.rhs;
  return out;
}

struct MultBoundRow {
  std::size_t m = 0;
  long long fiber_dim = 0;
  long long bound = 0;  // N m - floor(m / a)
  bool holds = false;
};

struct MultBoundReport {
  std::size_t multiplicity = 0;
  std::vector<MultBoundRow> rows;
};

// Fibers of divisor jets over a point of multiplicity a are bounded by
// N m - [m/a] in dimension.
inline MultBoundReport mult_bound_check(const Polynomial& f, std::span<const Coefficient> y,
                                        std::size_t max_m, const GroebnerOptions& opts = {}) {
  if (f.is_zero() || f.is_constant()) throw InputError("the divisor must be a nonzero non-unit");
  if (!f.evaluate(y).is_zero()) throw InputError("point does not lie on the divisor");

  const std::size_t n = f.ring()->arity();
  // Multiplicity from the Taylor expansion at y.
  std::vector<Polynomial> shift;
  for (std::size_t i = 0; i < n; ++i)
    shift.push_back(Polynomial::variable(f.ring(), i) + Polynomial::constant(f.ring(), y[i]));
  const std::size_t mult = static_cast<std::size_t>(f.substitute(shift).min_total_degree());

  MultBoundReport out;
  out.multiplicity = mult;

  VarietyDatum datum;
  datum.ring = f.ring();
  datum.generators = {f};
  datum.asserted_codim = 1;

  for (std::size_t m = 1; m <= max_m; ++m) {
    auto jets = jet_equations(datum, m);
    auto fiber = dimension(fiber_ideal(jets, y), opts);
    if (!fiber) throw InputError("internal: fiber over a point of D cannot be empty");
    MultBoundRow row;
    row.m = m;
    row.fiber_dim = static_cast<long long>(fiber->dim);
    row.bound = static_cast<long long>(n * m - m / mult);
    row.holds = row.fiber_dim <= row.bound;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace jetforge
