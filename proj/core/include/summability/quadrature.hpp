#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace summability::quadrature {

using Complex = std::complex<double>;
using Integrand = std::function<Complex(double)>;

// Returns the next panel boundary strictly greater than its argument.
using BreakFn = std::function<double(double)>;

struct Result {
  Complex value{};
  double error = 0.0;
};

struct Stats {
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

// Per-thread counters; callers snapshot before and after a computation.
Stats& stats() noexcept;

struct Options {
  double abs_tol = 1e-10;
  int max_depth = 48;
  std::size_t max_intervals = 50000;
};

// Globally adaptive Gauss-Kronrod (7/15) on a finite interval. Throws
// QuadratureError with the worst subinterval when max_depth or max_intervals
// is exhausted before the error estimate meets abs_tol.
Result integrate(const Integrand& f, double a, double b, const Options& opts = {});

// Splits [a, b] at the boundaries produced by next_break and integrates each
// panel adaptively. A null next_break means a single panel.
Result integrate_panels(const Integrand& f, double a, double b, const BreakFn& next_break,
                        const Options& opts = {});

// Single 15-point Kronrod rule with QUADPACK-style error estimate.
Result gauss_kronrod15(const Integrand& f, double a, double b);

}  // namespace summability::quadrature
