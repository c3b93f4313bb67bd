#pragma once

#include <cmath>
#include <limits>

namespace vdw {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLn2 = 0.69314718055994530942;

/// A real number carried as value * exp(log_scale).
///
/// Used for quantities whose magnitude spans far beyond the double range
/// (modified spherical Bessel functions at high order, Mie coefficient
/// numerators).  Products combine by multiplying values and adding
/// log_scales; exp() is applied only to combined exponents that are known
/// to be moderate.
struct ScaledValue {
  double value = 0.0;
  double log_scale = 0.0;

  /// value * exp(log_scale); may over/underflow if the true magnitude does.
  double reconstruct() const { return value * std::exp(log_scale); }

  /// reconstruct() with an extra exp(shift) folded into the exponent.
  double reconstruct_shifted(double shift) const {
    return value * std::exp(log_scale + shift);
  }
};

/// Renormalize so that |value| lies in [0.5, 1); zero stays {0, 0}.
inline ScaledValue scaled_normalize(ScaledValue s) {
  if (s.value == 0.0) return {0.0, 0.0};
  int e;
  double m = std::frexp(s.value, &e);
  return {m, s.log_scale + e * kLn2};
}

// Inputs may carry mantissas anywhere in the double range (the Bessel tables
// present values in their natural e^{+-x} envelope), so every operation
// normalizes its operands before combining them; raw products of two
// unnormalized values could overflow.

inline ScaledValue scaled_mul(const ScaledValue& a, const ScaledValue& b) {
  const ScaledValue an = scaled_normalize(a);
  const ScaledValue bn = scaled_normalize(b);
  return scaled_normalize({an.value * bn.value, an.log_scale + bn.log_scale});
}

inline ScaledValue scaled_mul(const ScaledValue& a, double c) {
  const ScaledValue an = scaled_normalize(a);
  return scaled_normalize({an.value * c, an.log_scale});
}

/// a + b with the exponents brought to a common scale first.
inline ScaledValue scaled_add(const ScaledValue& a, const ScaledValue& b) {
  if (a.value == 0.0) return b;
  if (b.value == 0.0) return a;
  const ScaledValue an = scaled_normalize(a);
  const ScaledValue bn = scaled_normalize(b);
  if (an.log_scale >= bn.log_scale) {
    double d = bn.log_scale - an.log_scale;
    return scaled_normalize({an.value + bn.value * std::exp(d), an.log_scale});
  }
  double d = an.log_scale - bn.log_scale;
  return scaled_normalize({an.value * std::exp(d) + bn.value, bn.log_scale});
}

inline ScaledValue scaled_div(const ScaledValue& a, const ScaledValue& b) {
  const ScaledValue an = scaled_normalize(a);
  const ScaledValue bn = scaled_normalize(b);
  return scaled_normalize({an.value / bn.value, an.log_scale - bn.log_scale});
}

/// Present with the requested log_scale when that keeps value representable,
/// otherwise fall back to the normalized form.
inline ScaledValue scaled_rebase(ScaledValue s, double target_log) {
  s = scaled_normalize(s);
  if (s.value == 0.0) return {0.0, target_log};
  double d = s.log_scale - target_log;
  if (std::abs(d) < 690.0) return {s.value * std::exp(d), target_log};
  return s;
}

}  // namespace vdw
