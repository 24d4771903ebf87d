// Global monomial orders: lex, graded reverse lex, weighted variants, and
// the jet-graded reverse lex used to read off initial ideals of fiber
// equations (level-major layout, higher jet levels are smaller variables).
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jetforge/errors.hpp"
#include "jetforge/monomial.hpp"

namespace jetforge {

enum class Ordering { Less, Equal, Greater };

class MonomialOrder {
 public:
  enum class Kind { Lex, GrevLex, WeightedGrevLex, JetRevLex };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::GrevLex, {}); }

  static MonomialOrder weighted_grevlex(std::vector<std::uint64_t> weights) {
    for (auto w : weights)
      if (w == 0) throw InputError("order weights must be positive");
    if (weights.empty()) throw InputError("empty weight vector");
    return MonomialOrder(Kind::WeightedGrevLex, std::move(weights));
  }

  // On a level-major jet ring this realizes: reverse lexicographic where
  // U_i^(j) < U_{i'}^(j') whenever j > j', or j = j' and i > i'.
  static MonomialOrder jet_revlex() { return MonomialOrder(Kind::JetRevLex, {}); }

  Kind kind() const { return kind_; }
  const std::vector<std::uint64_t>& weights() const { return weights_; }

  Ordering compare(const Monomial& u, const Monomial& v) const {
    if (u.arity() != v.arity()) throw InputError("monomial arity mismatch in compare");
    if (kind_ == Kind::WeightedGrevLex && weights_.size() != u.arity())
      throw InputError("order weight arity mismatch");
    switch (kind_) {
      case Kind::Lex: {
        for (std::size_t i = 0; i < u.arity(); ++i) {
          if (u.exponent(i) != v.exponent(i))
            return u.exponent(i) > v.exponent(i) ? Ordering::Greater : Ordering::Less;
        }
        return Ordering::Equal;
      }
      case Kind::GrevLex:
      case Kind::JetRevLex:
        return graded_revlex(u, v, u.degree(), v.degree());
      case Kind::WeightedGrevLex:
        return graded_revlex(u, v, u.weighted_degree(weights_), v.weighted_degree(weights_));
    }
    return Ordering::Equal;
  }

  bool less(const Monomial& u, const Monomial& v) const {
    return compare(u, v) == Ordering::Less;
  }
  bool greater(const Monomial& u, const Monomial& v) const {
    return compare(u, v) == Ordering::Greater;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::Lex: return "lex";
      case Kind::GrevLex: return "grevlex";
      case Kind::WeightedGrevLex: return "weighted-grevlex";
      case Kind::JetRevLex: return "jet-revlex";
    }
    return "?";
  }

 private:
  MonomialOrder(Kind kind, std::vector<std::uint64_t> weights)
      : kind_(kind), weights_(std::move(weights)) {}

  // Degree first; ties broken by the last differing position, where the
  // smaller exponent wins (the trailing variables are the small ones).
  static Ordering graded_revlex(const Monomial& u, const Monomial& v, std::uint64_t du,
                                std::uint64_t dv) {
    if (du != dv) return du > dv ? Ordering::Greater : Ordering::Less;
    for (std::size_t i = u.arity(); i-- > 0;) {
      if (u.exponent(i) != v.exponent(i))
        return u.exponent(i) < v.exponent(i) ? Ordering::Greater : Ordering::Less;
    }
    return Ordering::Equal;
  }

  Kind kind_;
  std::vector<std::uint64_t> weights_;
};

}  // namespace jetforge
