#pragma once

#include <cmath>
#include <complex>

namespace summability::detail {

// Integrals of e^{w s} and s e^{w s} over s in [0, 1], stable near w = 0.
inline std::complex<double> exp_moment0(std::complex<double> w) {
  if (std::abs(w) < 0.5) {
    std::complex<double> term = 1.0;
    std::complex<double> sum = 1.0;
    for (int n = 1; n < 24; ++n) {
      term *= w / static_cast<double>(n + 1);
      sum += term;
    }
    return sum;
  }
  return (std::exp(w) - 1.0) / w;
}

inline std::complex<double> exp_moment1(std::complex<double> w) {
  if (std::abs(w) < 0.5) {
    std::complex<double> power = 1.0;  // w^n / n!
    std::complex<double> sum = 0.5;
    for (int n = 1; n < 24; ++n) {
      power *= w / static_cast<double>(n);
      sum += power / static_cast<double>(n + 2);
    }
    return sum;
  }
  return (std::exp(w) * (w - 1.0) + 1.0) / (w * w);
}

// Integral over [a, a+h] of the line through (a, va), (a+h, vb) times e^{z u}.
inline std::complex<double> linear_times_exp(double a, double h, std::complex<double> va,
                                             std::complex<double> vb, std::complex<double> z) {
  const std::complex<double> w = z * h;
  return std::exp(z * a) * h * (va * exp_moment0(w) + (vb - va) * exp_moment1(w));
}

}  // namespace summability::detail
