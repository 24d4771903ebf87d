// Polynomial rings: named variables over Q or F_p, optionally carrying jet
// structure (base arity, truncation level, weight scheme). Jet variables
// are laid out level-major: all level-0 variables first, then level 1, ...
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jetforge/coefficient.hpp"
#include "jetforge/errors.hpp"

namespace jetforge {

// Scheme A grades U^(j) by j (fiber grading); scheme B by j + 1.
enum class WeightScheme { A, B };

struct JetStructure {
  std::size_t base_arity;
  std::size_t level;
  WeightScheme scheme;

  bool operator==(const JetStructure&) const = default;
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
 public:
  static RingPtr create(std::vector<std::string> names, std::uint32_t characteristic) {
    validate_names(names);
    if (characteristic != 0 && !is_prime_u32(characteristic))
      throw InputError("field characteristic must be 0 or a prime");
    return RingPtr(new PolyRing(std::move(names), characteristic, std::nullopt));
  }

  // Jet ring over the given base names at a truncation level.
  static RingPtr create_jet(const std::vector<std::string>& base_names, std::size_t level,
                            std::uint32_t characteristic, WeightScheme scheme = WeightScheme::A) {
    validate_names(base_names);
    if (characteristic != 0 && !is_prime_u32(characteristic))
      throw InputError("field characteristic must be 0 or a prime");
    std::vector<std::string> names;
    names.reserve(base_names.size() * (level + 1));
    for (std::size_t j = 0; j <= level; ++j)
      for (const auto& b : base_names) names.push_back(b + "_" + std::to_string(j));
    JetStructure js{base_names.size(), level, scheme};
    return RingPtr(new PolyRing(std::move(names), characteristic, js));
  }

  std::size_t arity() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::uint32_t characteristic() const { return characteristic_; }
  const std::optional<JetStructure>& jet() const { return jet_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  std::size_t jet_index(std::size_t base_var, std::size_t level) const {
    const auto& js = require_jet();
    if (base_var >= js.base_arity || level > js.level)
      throw InputError("jet variable index out of range");
    return level * js.base_arity + base_var;
  }

  std::size_t level_of(std::size_t var) const { return var / require_jet().base_arity; }
  std::size_t base_of(std::size_t var) const { return var % require_jet().base_arity; }

  // Per-variable weights of the ring's jet grading.
  std::vector<std::uint64_t> jet_weights() const {
    const auto& js = require_jet();
    std::vector<std::uint64_t> w(arity());
    for (std::size_t i = 0; i < arity(); ++i)
      w[i] = level_of(i) + (js.scheme == WeightScheme::B ? 1 : 0);
    return w;
  }

  bool same_structure(const PolyRing& o) const {
    return names_ == o.names_ && characteristic_ == o.characteristic_ && jet_ == o.jet_;
  }

  Coefficient coeff_zero() const { return Coefficient::zero(characteristic_); }
  Coefficient coeff_one() const { return Coefficient::one(characteristic_); }
  Coefficient coeff_of_integer(long n) const { return Coefficient::of_integer(n, characteristic_); }

 private:
  PolyRing(std::vector<std::string> names, std::uint32_t characteristic,
           std::optional<JetStructure> jet)
      : names_(std::move(names)), characteristic_(characteristic), jet_(jet) {}

  const JetStructure& require_jet() const {
    if (!jet_) throw InputError("ring has no jet structure");
    return *jet_;
  }

  static void validate_names(const std::vector<std::string>& names) {
    if (names.empty()) throw InputError("ring needs at least one variable");
    for (const auto& n : names) {
      if (n.empty() || (!std::isalpha(static_cast<unsigned char>(n[0])) && n[0] != '_'))
        throw InputError("invalid variable name: '" + n + "'");
      for (char c : n)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
          throw InputError("invalid variable name: '" + n + "'");
    }
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i + 1; j < names.size(); ++j)
        if (names[i] == names[j]) throw InputError("duplicate variable name: '" + names[i] + "'");
  }

  std::vector<std::string> names_;
  std::uint32_t characteristic_;
  std::optional<JetStructure> jet_;
};

inline void check_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return;
  if (!a || !b || !a->same_structure(*b)) throw InputError("ring mismatch");
}

}  // namespace jetforge
