// Buchberger's algorithm, normal forms, Krull dimension via independent
// variable sets of the initial ideal, and truncated Hilbert series.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "jetforge/errors.hpp"
#include "jetforge/monomial.hpp"
#include "jetforge/ordering.hpp"
#include "jetforge/polynomial.hpp"
#include "jetforge/ring.hpp"

namespace jetforge {

struct Ideal {
  RingPtr ring;
  std::vector<Polynomial> generators;
};

// Drops zero generators; rejects generators from foreign rings.
inline Ideal make_ideal(RingPtr ring, std::vector<Polynomial> gens) {
  Ideal idl{std::move(ring), {}};
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    check_same_ring(idl.ring, g.ring());
    idl.generators.push_back(std::move(g));
  }
  return idl;
}

// Counters shared across one user-level task, so budgets cap total effort.
struct BudgetLedger {
  std::uint64_t pair_reductions = 0;
  std::uint64_t points_enumerated = 0;
};

struct GroebnerOptions {
  std::uint64_t max_pair_reductions = 500000;
  BudgetLedger* ledger = nullptr;
};

struct GroebnerStats {
  std::uint64_t pairs_reduced = 0;
  std::uint64_t coprime_skips = 0;
  std::uint64_t chain_skips = 0;
  std::uint64_t zero_reductions = 0;
};

class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, MonomialOrder order, std::vector<Polynomial> basis,
                GroebnerStats stats)
      : ring_(std::move(ring)),
        order_(std::move(order)),
        basis_(std::move(basis)),
        stats_(stats) {}

  const RingPtr& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Polynomial>& basis() const { return basis_; }
  const GroebnerStats& stats() const { return stats_; }
  bool reduced() const { return true; }

  // Selection strategy recorded for reproducibility.
  static std::string strategy() { return "normal selection (lowest lcm degree, index tie-break), sugar disabled"; }

  bool contains_one() const {
    return basis_.size() == 1 && basis_[0].is_constant() && !basis_[0].is_zero();
  }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> lms;
    lms.reserve(basis_.size());
    for (const auto& g : basis_) lms.push_back(g.leading_term(order_).mono);
    return lms;
  }

 private:
  RingPtr ring_;
  MonomialOrder order_;
  std::vector<Polynomial> basis_;
  GroebnerStats stats_;
};

namespace detail {

inline Polynomial make_monic(const Polynomial& f, const MonomialOrder& order) {
  const Coefficient& lc = f.leading_term(order).coeff;
  return lc.is_one() ? f : f.scaled(lc.inv());
}

// Full remainder of f against the list, scanning divisors in list order.
inline Polynomial reduce_full(const Polynomial& f, const std::vector<Polynomial>& basis,
                              const MonomialOrder& order) {
  Polynomial work = f;
  Polynomial remainder = Polynomial::zero(f.ring());
  while (!work.is_zero()) {
    const Term& lt = work.leading_term(order);
    bool divided = false;
    for (const auto& g : basis) {
      const Term& glt = g.leading_term(order);
      if (glt.mono.divides(lt.mono)) {
        work = work - g.times_term(lt.mono / glt.mono, lt.coeff / glt.coeff);
        divided = true;
        break;
      }
    }
    if (!divided) {
      remainder = remainder + Polynomial::term(work.ring(), lt.mono, lt.coeff);
      work = work - Polynomial::term(work.ring(), lt.mono, lt.coeff);
    }
  }
  return remainder;
}

inline void validate_order_for_ring(const MonomialOrder& order, const PolyRing& ring) {
  if (order.kind() == MonomialOrder::Kind::JetRevLex && !ring.jet())
    throw InputError("jet-revlex order requires a jet ring");
  if (order.kind() == MonomialOrder::Kind::WeightedGrevLex &&
      order.weights().size() != ring.arity())
    throw InputError("order weight arity mismatch");
}

}  // namespace detail

// Reduced Groebner basis, deterministic for fixed inputs. Throws
// BudgetExhausted when the pair budget runs out; never returns a wrong
// answer.
inline GroebnerBasis buchberger(const Ideal& ideal, const MonomialOrder& order,
                                const GroebnerOptions& opts = {}) {
  detail::validate_order_for_ring(order, *ideal.ring);
  GroebnerStats stats;

  std::vector<Polynomial> basis;
  for (const auto& g : ideal.generators) {
    if (g.is_zero()) continue;
    check_same_ring(ideal.ring, g.ring());
    basis.push_back(detail::make_monic(g, order));
  }

  // Pending S-pairs keyed by (lcm degree, i, j).
  std::set<std::tuple<std::uint64_t, std::size_t, std::size_t>> queue;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto push_pair = [&](std::size_t i, std::size_t j) {
    const Monomial lcm = basis[i].leading_term(order).mono.lcm(basis[j].leading_term(order).mono);
    queue.insert({lcm.degree(), i, j});
    pending.insert({i, j});
  };
  for (std::size_t j = 1; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) push_pair(i, j);

  std::uint64_t spent = 0;
  while (!queue.empty()) {
    auto [deg, i, j] = *queue.begin();
    queue.erase(queue.begin());
    pending.erase({i, j});

    if (++spent > opts.max_pair_reductions)
      throw BudgetExhausted("groebner pair budget exhausted", spent, opts.max_pair_reductions);
    if (opts.ledger) ++opts.ledger->pair_reductions;
    ++stats.pairs_reduced;

    const Monomial& lmi = basis[i].leading_term(order).mono;
    const Monomial& lmj = basis[j].leading_term(order).mono;

    if (lmi.coprime(lmj)) {
      ++stats.coprime_skips;
      continue;
    }

    const Monomial lcm = lmi.lcm(lmj);
    bool chained = false;
    for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
      if (k == i || k == j) continue;
      if (!basis[k].leading_term(order).mono.divides(lcm)) continue;
      auto key_ik = std::minmax(i, k);
      auto key_jk = std::minmax(j, k);
      if (!pending.count({key_ik.first, key_ik.second}) &&
          !pending.count({key_jk.first, key_jk.second}))
        chained = true;
    }
    if (chained) {
      ++stats.chain_skips;
      continue;
    }

    Polynomial spoly = basis[i].times_term(lcm / lmi, ideal.ring->coeff_one()) -
                       basis[j].times_term(lcm / lmj, ideal.ring->coeff_one());
    Polynomial rem = detail::reduce_full(spoly, basis, order);
    if (rem.is_zero()) {
      ++stats.zero_reductions;
      continue;
    }
    basis.push_back(detail::make_monic(rem, order));
    const std::size_t t = basis.size() - 1;
    for (std::size_t k = 0; k < t; ++k) push_pair(k, t);
  }

  // Minimalize: drop elements whose leading monomial another one divides.
  std::sort(basis.begin(), basis.end(), [&](const Polynomial& a, const Polynomial& b) {
    return order.less(a.leading_term(order).mono, b.leading_term(order).mono);
  });
  std::vector<Polynomial> minimal;
  for (const auto& g : basis) {
    const Monomial& lm = g.leading_term(order).mono;
    bool redundant = false;
    for (const auto& h : minimal)
      if (h.leading_term(order).mono.divides(lm)) {
        redundant = true;
        break;
      }
    if (!redundant) minimal.push_back(g);
  }

  // Inter-reduce tails until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<Polynomial> others;
      others.reserve(minimal.size() - 1);
      for (std::size_t k = 0; k < minimal.size(); ++k)
        if (k != i) others.push_back(minimal[k]);
      Polynomial r = detail::reduce_full(minimal[i], others, order);
      r = detail::make_monic(r, order);
      if (r != minimal[i]) {
        minimal[i] = r;
        changed = true;
      }
    }
  }

  return GroebnerBasis(ideal.ring, order, std::move(minimal), stats);
}

// Remainder of f modulo the basis; zero iff f lies in the ideal.
inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb) {
  check_same_ring(f.ring(), gb.ring());
  return detail::reduce_full(f, gb.basis(), gb.order());
}

enum class DimensionMethod { Groebner, Counting, DiagonalFormula };

// A dimension value together with the certificate that produced it. For the
// Groebner method the certificate is a maximal independent variable set.
struct DimensionReport {
  std::size_t dim = 0;
  DimensionMethod method = DimensionMethod::Groebner;
  std::vector<std::size_t> independent_set;
};

namespace detail {

struct IndependentSetSearch {
  std::vector<std::uint64_t> supports;
  int best = -1;
  std::uint64_t best_mask = 0;
  std::unordered_set<std::uint64_t> seen;

  void run(std::uint64_t allowed) {
    if (!seen.insert(allowed).second) return;
    if (std::popcount(allowed) <= best) return;
    std::uint64_t blocking = 0;
    for (std::uint64_t s : supports) {
      if ((s & ~allowed) == 0) {
        blocking = s;
        break;
      }
    }
    if (blocking == 0) {
      best = std::popcount(allowed);
      best_mask = allowed;
      return;
    }
    while (blocking) {
      std::uint64_t bit = blocking & (~blocking + 1);
      blocking ^= bit;
      run(allowed & ~bit);
    }
  }
};

}  // namespace detail

// Krull dimension of ring/ideal from a computed basis: the largest variable
// subset touching no leading-monomial support in full. Empty result means
// the ideal is the whole ring.
inline std::optional<DimensionReport> dimension(const GroebnerBasis& gb) {
  if (gb.contains_one()) return std::nullopt;
  const std::size_t n = gb.ring()->arity();
  if (n > 63) throw InputError("dimension search supports at most 63 variables");

  detail::IndependentSetSearch search;
  std::vector<std::uint64_t> masks;
  for (const auto& lm : gb.leading_monomials()) masks.push_back(lm.support_mask());
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  for (std::uint64_t m : masks) {
    bool minimal = true;
    for (std::uint64_t o : masks)
      if (o != m && (o & ~m) == 0) {
        minimal = false;
        break;
      }
    if (minimal) search.supports.push_back(m);
  }

  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  search.run(all);

  DimensionReport report;
  report.dim = static_cast<std::size_t>(search.best);
  report.method = DimensionMethod::Groebner;
  for (std::size_t i = 0; i < n; ++i)
    if (search.best_mask & (std::uint64_t{1} << i)) report.independent_set.push_back(i);

  // The certificate must avoid every leading-monomial support.
  for (std::uint64_t s : search.supports)
    if ((s & ~search.best_mask) == 0) throw InputError("internal: invalid dimension certificate");
  return report;
}

inline std::optional<DimensionReport> dimension(const Ideal& ideal,
                                                const GroebnerOptions& opts = {},
                                                const MonomialOrder& order = MonomialOrder::grevlex()) {
  return dimension(buchberger(ideal, order, opts));
}

// Standard-monomial counts of ring/ideal per weighted degree 0..bound.
inline std::vector<long long> hilbert_coefficients(const GroebnerBasis& gb,
                                                   std::span<const std::uint64_t> weights,
                                                   std::size_t degree_bound) {
  const std::size_t n = gb.ring()->arity();
  if (weights.size() != n) throw InputError("hilbert weights arity mismatch");
  for (auto w : weights)
    if (w == 0) throw InputError("hilbert weights must be positive");

  std::vector<long long> counts(degree_bound + 1, 0);
  if (gb.contains_one()) return counts;

  const std::vector<Monomial> lms = gb.leading_monomials();
  std::vector<std::size_t> last_support(lms.size(), 0);
  for (std::size_t k = 0; k < lms.size(); ++k)
    for (std::size_t v = 0; v < n; ++v)
      if (lms[k].exponent(v) > 0) last_support[k] = v;

  // Depth-first over exponent vectors within the degree budget, carrying the
  // set of leading monomials still compatible with the chosen prefix.
  auto rec = [&](auto&& self, std::size_t var, std::uint64_t deg,
                 const std::vector<std::size_t>& active) -> void {
    if (var == n) {
      if (active.empty()) ++counts[deg];
      return;
    }
    const std::uint64_t w = weights[var];
    for (std::uint32_t e = 0;; ++e) {
      const std::uint64_t d = deg + w * e;
      if (d > degree_bound) break;
      std::vector<std::size_t> next;
      bool divisible = false;
      for (std::size_t k : active) {
        if (lms[k].exponent(var) > e) continue;
        if (last_support[k] <= var) {
          divisible = true;  // fully dominated: every completion is a multiple
          break;
        }
        next.push_back(k);
      }
      if (!divisible) self(self, var + 1, d, next);
    }
  };

  std::vector<std::size_t> all(lms.size());
  for (std::size_t k = 0; k < lms.size(); ++k) all[k] = k;
  rec(rec, 0, 0, all);
  return counts;
}

}  // namespace jetforge
