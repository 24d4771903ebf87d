// Brute-force F_q point counts of small ideals, and the log_q dimension
// heuristic built on them. Advisory only: certified dimensions always come
// from the Groebner path.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "jetforge/coefficient.hpp"
#include "jetforge/errors.hpp"
#include "jetforge/groebner.hpp"
#include "jetforge/polynomial.hpp"
#include "jetforge/ring.hpp"

namespace jetforge {

struct CountOptions {
  std::uint64_t max_points = 100000000;  // enumeration budget on q^v
  BudgetLedger* ledger = nullptr;
};

struct CountReport {
  std::uint32_t q = 0;
  std::size_t variables = 0;
  std::uint64_t count = 0;
  double log_ratio = 0.0;  // log_q(count); -inf when count is 0
};

// Threads available for enumeration; capped by JETFORGE_THREADS.
inline unsigned enumeration_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* s = std::getenv("JETFORGE_THREADS")) {
    long v = std::atol(s);
    if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
  }
  return hw;
}

namespace detail {

struct CompiledTerm {
  std::uint64_t coeff;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;  // (variable, exponent)
};

struct CompiledPoly {
  std::vector<CompiledTerm> terms;
};

inline std::uint64_t count_block(const std::vector<CompiledPoly>& gens, std::uint32_t p,
                                 std::size_t nvars, const std::vector<std::uint64_t>& pow_tab,
                                 std::uint32_t max_exp, std::uint64_t first_lo,
                                 std::uint64_t first_hi) {
  std::vector<std::uint64_t> point(nvars, 0);
  std::uint64_t hits = 0;
  const std::size_t stride = max_exp + 1;
  for (std::uint64_t v0 = first_lo; v0 < first_hi; ++v0) {
    point[0] = v0;
    std::fill(point.begin() + 1, point.end(), 0);
    while (true) {
      bool zero_everywhere = true;
      for (const auto& g : gens) {
        std::uint64_t acc = 0;
        for (const auto& t : g.terms) {
          std::uint64_t val = t.coeff;
          for (auto [var, e] : t.factors) val = (val * pow_tab[point[var] * stride + e]) % p;
          acc += val;
          if (acc >= p) acc -= p;  // val < p, so one conditional subtract suffices
        }
        if (acc != 0) {
          zero_everywhere = false;
          break;
        }
      }
      if (zero_everywhere) ++hits;

      std::size_t pos = nvars - 1;
      while (true) {
        if (pos == 0) goto next_first;  // first coordinate owned by the caller
        if (++point[pos] < p) break;
        point[pos] = 0;
        --pos;
      }
    }
  next_first:;
  }
  return hits;
}

}  // namespace detail

// Exact number of common zeros in F_q^v, q = p the ring characteristic.
inline CountReport count_points(const Ideal& ideal, const CountOptions& opts = {}) {
  const std::uint32_t p = ideal.ring->characteristic();
  if (p == 0) throw InputError("point counting needs a prime-field ring");
  const std::size_t v = ideal.ring->arity();
  if (v > 16) throw InputError("point counting supports at most 16 variables");

  double total = std::pow(static_cast<double>(p), static_cast<double>(v));
  if (total > static_cast<double>(opts.max_points))
    throw BudgetExhausted("enumeration needs " + std::to_string(static_cast<std::uint64_t>(total)) +
                              " points, budget is " + std::to_string(opts.max_points),
                          static_cast<std::uint64_t>(total), opts.max_points);

  std::uint32_t max_exp = 1;
  std::vector<detail::CompiledPoly> gens;
  for (const auto& g : ideal.generators) {
    check_same_ring(ideal.ring, g.ring());
    if (g.is_zero()) continue;
    detail::CompiledPoly cp;
    for (const auto& t : g.terms()) {
      detail::CompiledTerm ct;
      ct.coeff = t.coeff.residue_value();
      for (std::size_t i = 0; i < v; ++i) {
        std::uint32_t e = t.mono.exponent(i);
        if (e) {
          ct.factors.push_back({static_cast<std::uint32_t>(i), e});
          max_exp = std::max(max_exp, e);
        }
      }
      cp.terms.push_back(std::move(ct));
    }
    gens.push_back(std::move(cp));
  }

  // pow_tab[val * (max_exp+1) + e] = val^e mod p
  std::vector<std::uint64_t> pow_tab(static_cast<std::size_t>(p) * (max_exp + 1));
  for (std::uint64_t val = 0; val < p; ++val) {
    std::uint64_t acc = 1;
    for (std::uint32_t e = 0; e <= max_exp; ++e) {
      pow_tab[val * (max_exp + 1) + e] = acc;
      acc = (acc * val) % p;
    }
  }

  const unsigned want = enumeration_threads();
  std::uint64_t count = 0;
  if (want <= 1 || p < 2 * want) {
    count = detail::count_block(gens, p, v, pow_tab, max_exp, 0, p);
  } else {
    // Partition the search space by the leading coordinate.
    std::vector<std::uint64_t> partial(want, 0);
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < want; ++t) {
      std::uint64_t lo = p * static_cast<std::uint64_t>(t) / want;
      std::uint64_t hi = p * static_cast<std::uint64_t>(t + 1) / want;
      workers.emplace_back([&, t, lo, hi] {
        partial[t] = detail::count_block(gens, p, v, pow_tab, max_exp, lo, hi);
      });
    }
    for (auto& w : workers) w.join();
    for (std::uint64_t c : partial) count += c;
  }

  if (opts.ledger) opts.ledger->points_enumerated += static_cast<std::uint64_t>(total);

  CountReport report;
  report.q = p;
  report.variables = v;
  report.count = count;
  report.log_ratio = count == 0 ? -std::numeric_limits<double>::infinity()
                                : std::log(static_cast<double>(count)) / std::log(static_cast<double>(p));
  return report;
}

struct PerPrimeEstimate {
  std::uint32_t p = 0;
  std::uint64_t count = 0;
  double ratio = 0.0;
  bool usable = false;
  std::string note;
};

struct DimensionEstimate {
  bool conclusive = false;
  long long estimate = -1;
  std::vector<PerPrimeEstimate> per_prime;
};

// Heuristic dimension from point counts across several primes: the rounded
// median of log_q(count). Never overrides a Groebner dimension report.
inline DimensionEstimate dimension_estimate(const Ideal& ideal, std::span<const std::uint32_t> primes,
                                            const CountOptions& opts = {}) {
  if (ideal.ring->characteristic() != 0)
    throw InputError("dimension_estimate reduces a characteristic-zero ideal mod p");
  DimensionEstimate out;
  std::vector<double> usable;
  for (std::uint32_t p : primes) {
    PerPrimeEstimate pe;
    pe.p = p;
    if (!is_prime_u32(p)) {
      pe.note = "not prime";
      out.per_prime.push_back(pe);
      continue;
    }
    try {
      auto modp_ring = PolyRing::create(ideal.ring->names(), p);
      std::vector<Polynomial> gens;
      bool proper = true;
      for (const auto& g : ideal.generators) {
        std::vector<Term> terms;
        for (const auto& t : g.terms())
          terms.push_back({t.mono, Coefficient::residue_of_rational(t.coeff.rational_value(), p)});
        Polynomial gm = Polynomial::from_terms(modp_ring, std::move(terms));
        if (gm.is_zero()) {
          proper = false;
          break;
        }
        gens.push_back(std::move(gm));
      }
      if (!proper) {
        pe.note = "a generator vanishes mod p";
        out.per_prime.push_back(pe);
        continue;
      }
      CountReport report = count_points(make_ideal(modp_ring, std::move(gens)), opts);
      pe.count = report.count;
      pe.ratio = report.log_ratio;
      double full = std::pow(static_cast<double>(p), static_cast<double>(report.variables));
      if (report.count == 0) {
        pe.note = "no points mod p";
      } else if (!ideal.generators.empty() &&
                 static_cast<double>(report.count) >= full) {
        pe.note = "ideal collapses mod p";
      } else {
        pe.usable = true;
        usable.push_back(pe.ratio);
      }
    } catch (const BudgetExhausted& e) {
      pe.note = std::string("enumeration budget: ") + e.what();
    } catch (const InputError& e) {
      pe.note = e.what();
    }
    out.per_prime.push_back(pe);
  }

  if (usable.empty()) return out;  // inconclusive
  std::sort(usable.begin(), usable.end());
  double median = usable.size() % 2 == 1
                      ? usable[usable.size() / 2]
                      : 0.5 * (usable[usable.size() / 2 - 1] + usable[usable.size() / 2]);
  out.conclusive = true;
  out.estimate = std::llround(median);
  return out;
}

}  // namespace jetforge
