// Sparse multivariate polynomials with exact coefficients. Terms are kept
// sorted descending under graded reverse lex, so the leading term under any
// graded-revlex-compatible order is the front element.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jetforge/coefficient.hpp"
#include "jetforge/errors.hpp"
#include "jetforge/monomial.hpp"
#include "jetforge/ordering.hpp"
#include "jetforge/ring.hpp"

namespace jetforge {

struct Term {
  Monomial mono;
  Coefficient coeff;
};

namespace detail {

// Canonical storage comparison: graded revlex, first variable largest.
inline int cmp_canonical(const Monomial& a, const Monomial& b) {
  std::uint64_t da = a.degree(), db = b.degree();
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = a.arity(); i-- > 0;) {
    if (a.exponent(i) != b.exponent(i)) return a.exponent(i) < b.exponent(i) ? 1 : -1;
  }
  return 0;
}

struct CanonicalLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return cmp_canonical(a, b) < 0; }
};

}  // namespace detail

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }

  static Polynomial constant(RingPtr ring, const Coefficient& c) {
    Polynomial p(ring);
    if (!c.is_zero()) {
      check_coeff(*ring, c);
      p.terms_.push_back({Monomial(ring->arity()), c});
    }
    return p;
  }

  static Polynomial constant(RingPtr ring, long n) {
    auto c = ring->coeff_of_integer(n);
    return constant(std::move(ring), c);
  }

  static Polynomial variable(RingPtr ring, std::size_t i) {
    if (i >= ring->arity()) throw InputError("variable index out of range");
    Polynomial p(ring);
    p.terms_.push_back({Monomial(ring->arity()).with_exponent(i, 1), ring->coeff_one()});
    return p;
  }

  static Polynomial term(RingPtr ring, Monomial m, const Coefficient& c) {
    if (m.arity() != ring->arity()) throw InputError("monomial arity mismatch");
    Polynomial p(ring);
    if (!c.is_zero()) {
      check_coeff(*ring, c);
      p.terms_.push_back({std::move(m), c});
    }
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_unit());
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  std::uint64_t min_total_degree() const {
    if (terms_.empty()) return 0;
    std::uint64_t d = terms_[0].mono.degree();
    for (const auto& t : terms_) d = std::min(d, t.mono.degree());
    return d;
  }

  // Leading term under the given order; front of storage for revlex-style
  // orders, a scan otherwise.
  const Term& leading_term(const MonomialOrder& order) const {
    if (terms_.empty()) throw InputError("leading term of zero polynomial");
    if (order.kind() == MonomialOrder::Kind::GrevLex ||
        order.kind() == MonomialOrder::Kind::JetRevLex)
      return terms_.front();
    std::size_t best = 0;
    for (std::size_t i = 1; i < terms_.size(); ++i)
      if (order.greater(terms_[i].mono, terms_[best].mono)) best = i;
    return terms_[best];
  }

  Coefficient constant_term() const {
    if (terms_.empty()) return ring_->coeff_zero();
    const Term& back = terms_.back();
    return back.mono.is_unit() ? back.coeff : ring_->coeff_zero();
  }

  Polynomial operator-() const {
    Polynomial p(ring_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.mono, -t.coeff});
    return p;
  }

  Polynomial operator+(const Polynomial& o) const {
    check_same_ring(ring_, o.ring_);
    Polynomial out(ring_);
    out.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
      int c = detail::cmp_canonical(terms_[i].mono, o.terms_[j].mono);
      if (c > 0) {
        out.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        out.terms_.push_back(o.terms_[j++]);
      } else {
        Coefficient s = terms_[i].coeff + o.terms_[j].coeff;
        if (!s.is_zero()) out.terms_.push_back({terms_[i].mono, s});
        ++i;
        ++j;
      }
    }
    for (; i < terms_.size(); ++i) out.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) out.terms_.push_back(o.terms_[j]);
    return out;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    check_same_ring(ring_, o.ring_);
    if (is_zero() || o.is_zero()) return zero(ring_);
    std::map<Monomial, Coefficient, detail::CanonicalLess> acc;
    for (const auto& a : terms_) {
      for (const auto& b : o.terms_) {
        Monomial m = a.mono * b.mono;
        Coefficient c = a.coeff * b.coeff;
        auto it = acc.find(m);
        if (it == acc.end()) {
          acc.emplace(std::move(m), std::move(c));
        } else {
          it->second = it->second + c;
        }
      }
    }
    Polynomial out(ring_);
    out.terms_.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
      if (!it->second.is_zero()) out.terms_.push_back({it->first, it->second});
    return out;
  }

  Polynomial scaled(const Coefficient& c) const {
    if (c.is_zero()) return zero(ring_);
    check_coeff(*ring_, c);
    Polynomial p(ring_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.mono, t.coeff * c});
    return p;
  }

  // Multiplication by a single term preserves the storage order.
  Polynomial times_term(const Monomial& m, const Coefficient& c) const {
    if (c.is_zero()) return zero(ring_);
    Polynomial p(ring_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
    return p;
  }

  Polynomial pow(std::uint64_t e) const {
    Polynomial acc = constant(ring_, 1);
    Polynomial base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      if (e >>= 1) base = base * base;
    }
    return acc;
  }

  Coefficient evaluate(std::span<const Coefficient> point) const {
    if (point.size() != ring_->arity()) throw InputError("evaluation point arity mismatch");
    for (const auto& c : point) check_coeff(*ring_, c);
    Coefficient acc = ring_->coeff_zero();
    for (const auto& t : terms_) {
      Coefficient v = t.coeff;
      for (std::size_t i = 0; i < point.size(); ++i) {
        std::uint32_t e = t.mono.exponent(i);
        if (e) v = v * point[i].pow(e);
      }
      acc = acc + v;
    }
    return acc;
  }

  Polynomial partial_derivative(std::size_t var) const {
    if (var >= ring_->arity()) throw InputError("variable index out of range");
    Polynomial out(ring_);
    std::map<Monomial, Coefficient, detail::CanonicalLess> acc;
    for (const auto& t : terms_) {
      std::uint32_t e = t.mono.exponent(var);
      if (e == 0) continue;
      Coefficient c = t.coeff * ring_->coeff_of_integer(static_cast<long>(e));
      if (c.is_zero()) continue;
      acc.emplace(t.mono.with_exponent(var, e - 1), std::move(c));
    }
    out.terms_.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it) out.terms_.push_back({it->first, it->second});
    return out;
  }

  // Substitute every variable by a polynomial of the target ring.
  Polynomial substitute(std::span<const Polynomial> images) const {
    if (images.size() != ring_->arity()) throw InputError("substitution arity mismatch");
    RingPtr target = images.empty() ? ring_ : images[0].ring();
    std::vector<std::vector<Polynomial>> powers(images.size());
    Polynomial acc = zero(target);
    for (const auto& t : terms_) {
      Polynomial v = constant(target, Coefficient::of_integer(1, target->characteristic()));
      bool first = true;
      for (std::size_t i = 0; i < images.size(); ++i) {
        std::uint32_t e = t.mono.exponent(i);
        if (!e) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(images[i]);
        while (pw.size() < e) pw.push_back(pw.back() * images[i]);
        v = first && t.coeff.is_one() ? pw[e - 1] : v * pw[e - 1];
        first = false;
      }
      Coefficient c = coefficient_in(*target, t.coeff);
      acc = acc + v.scaled(c);
    }
    return acc;
  }

  bool operator==(const Polynomial& o) const {
    if (!ring_->same_structure(*o.ring_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const Term& t = terms_[i];
      std::string c = t.coeff.str();
      bool negative = !c.empty() && c[0] == '-';
      std::string mag = negative ? c.substr(1) : c;
      if (i == 0) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      bool unit_mono = t.mono.is_unit();
      if (mag != "1" || unit_mono) {
        out += mag;
        if (!unit_mono) out += "*";
      }
      if (!unit_mono) {
        bool first = true;
        for (std::size_t v = 0; v < t.mono.arity(); ++v) {
          std::uint32_t e = t.mono.exponent(v);
          if (!e) continue;
          if (!first) out += "*";
          first = false;
          out += ring_->name(v);
          if (e > 1) out += "^" + std::to_string(e);
        }
      }
    }
    return out;
  }

  // Rebuilds the invariants from arbitrary term data (internal helper).
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms) {
    std::map<Monomial, Coefficient, detail::CanonicalLess> acc;
    for (auto& t : terms) {
      if (t.mono.arity() != ring->arity()) throw InputError("monomial arity mismatch");
      if (t.coeff.is_zero()) continue;
      check_coeff(*ring, t.coeff);
      auto it = acc.find(t.mono);
      if (it == acc.end()) {
        acc.emplace(std::move(t.mono), std::move(t.coeff));
      } else {
        it->second = it->second + t.coeff;
      }
    }
    Polynomial out(std::move(ring));
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
      if (!it->second.is_zero()) out.terms_.push_back({it->first, it->second});
    return out;
  }

 private:
  static void check_coeff(const PolyRing& ring, const Coefficient& c) {
    if (c.characteristic() != ring.characteristic())
      throw InputError("coefficient does not belong to the ring's field");
  }

  static Coefficient coefficient_in(const PolyRing& target, const Coefficient& c) {
    if (c.characteristic() == target.characteristic()) return c;
    if (c.characteristic() == 0 && target.characteristic() != 0)
      return Coefficient::residue_of_rational(c.rational_value(), target.characteristic());
    throw InputError("coefficient does not embed in the target field");
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

}  // namespace jetforge
