// Truncated power series in t, generic over the coefficient type so the
// same substitution code serves field coefficients and polynomial ones.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "jetforge/errors.hpp"
#include "jetforge/polynomial.hpp"

namespace jetforge {

template <class T>
class TruncSeries {
 public:
  TruncSeries(std::size_t length, T zero) : c_(length, zero), zero_(std::move(zero)) {
    if (length == 0) throw InputError("series truncation length must be positive");
  }

  std::size_t length() const { return c_.size(); }
  const T& operator[](std::size_t i) const { return c_[i]; }
  T& operator[](std::size_t i) { return c_[i]; }
  const std::vector<T>& coefficients() const { return c_; }

  TruncSeries operator+(const TruncSeries& o) const {
    check(o);
    TruncSeries out(*this);
    for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = out.c_[i] + o.c_[i];
    return out;
  }

  TruncSeries operator*(const TruncSeries& o) const {
    check(o);
    TruncSeries out(c_.size(), zero_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      for (std::size_t j = 0; i + j < c_.size(); ++j)
        out.c_[i + j] = out.c_[i + j] + c_[i] * o.c_[j];
    }
    return out;
  }

 private:
  void check(const TruncSeries& o) const {
    if (c_.size() != o.c_.size()) throw InputError("series truncation length mismatch");
  }

  std::vector<T> c_;
  T zero_;
};

// f(series_1, ..., series_N) truncated to the common length. `embed` lifts a
// field coefficient of f into the series coefficient type.
template <class T>
TruncSeries<T> substitute_series_generic(const Polynomial& f,
                                         std::span<const TruncSeries<T>> series, T zero, T one,
                                         const std::function<T(const Coefficient&)>& embed) {
  if (series.size() != f.ring()->arity()) throw InputError("series count must match ring arity");
  const std::size_t len = series.empty() ? 1 : series[0].length();
  for (const auto& s : series)
    if (s.length() != len) throw InputError("series truncation length mismatch");

  std::vector<std::vector<TruncSeries<T>>> powers(series.size());
  TruncSeries<T> acc(len, zero);
  for (const auto& t : f.terms()) {
    TruncSeries<T> v(len, zero);
    v[0] = one;
    for (std::size_t i = 0; i < series.size(); ++i) {
      std::uint32_t e = t.mono.exponent(i);
      if (!e) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(series[i]);
      while (pw.size() < e) pw.push_back(pw.back() * series[i]);
      v = v * pw[e - 1];
    }
    T c = embed(t.coeff);
    TruncSeries<T> scaled(len, zero);
    for (std::size_t i = 0; i < len; ++i) scaled[i] = v[i] * c;
    acc = acc + scaled;
  }
  return acc;
}

// Coefficients of f(x_1(t), ..., x_N(t)) modulo t^length.
inline TruncSeries<Coefficient> substitute_series(
    const Polynomial& f, std::span<const TruncSeries<Coefficient>> series) {
  const std::uint32_t p = f.ring()->characteristic();
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.length(); ++i)
      if (s[i].characteristic() != p) throw InputError("series field mismatch");
  return substitute_series_generic<Coefficient>(
      f, series, Coefficient::zero(p), Coefficient::one(p),
      [](const Coefficient& c) { return c; });
}

}  // namespace jetforge
