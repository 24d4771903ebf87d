// Exponent vectors of a fixed arity, with the divisibility lattice.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "jetforge/errors.hpp"

namespace jetforge {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : e_(arity, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : e_(std::move(exps)) {}

  std::size_t arity() const { return e_.size(); }
  std::uint32_t exponent(std::size_t i) const { return e_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return e_; }

  bool is_unit() const {
    return std::all_of(e_.begin(), e_.end(), [](std::uint32_t x) { return x == 0; });
  }

  std::uint64_t degree() const {
    return std::accumulate(e_.begin(), e_.end(), std::uint64_t{0});
  }

  std::uint64_t weighted_degree(std::span<const std::uint64_t> weights) const {
    if (weights.size() != e_.size()) throw InputError("weight vector arity mismatch");
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < e_.size(); ++i) d += weights[i] * e_[i];
    return d;
  }

  Monomial with_exponent(std::size_t i, std::uint32_t v) const {
    Monomial m = *this;
    m.e_[i] = v;
    return m;
  }

  Monomial operator*(const Monomial& o) const {
    check_arity(o);
    Monomial m(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] += o.e_[i];
    return m;
  }

  bool divides(const Monomial& o) const {
    check_arity(o);
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  // Exact quotient; caller guarantees divisibility.
  Monomial operator/(const Monomial& o) const {
    check_arity(o);
    Monomial m(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (o.e_[i] > e_[i]) throw InputError("monomial quotient does not exist");
      m.e_[i] -= o.e_[i];
    }
    return m;
  }

  Monomial lcm(const Monomial& o) const {
    check_arity(o);
    Monomial m(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = std::max(m.e_[i], o.e_[i]);
    return m;
  }

  bool coprime(const Monomial& o) const {
    check_arity(o);
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] != 0 && o.e_[i] != 0) return false;
    return true;
  }

  // Bitmask of variables with positive exponent; arity must fit in 64 bits.
  std::uint64_t support_mask() const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] != 0) m |= std::uint64_t{1} << i;
    return m;
  }

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return e_ != o.e_; }

 private:
  void check_arity(const Monomial& o) const {
    if (e_.size() != o.e_.size()) throw InputError("monomial arity mismatch");
  }

  std::vector<std::uint32_t> e_;
};

}  // namespace jetforge
