#pragma once

#include <optional>
#include <string>
#include <vector>

#include "summability/kernel.hpp"

namespace summability {

// Transform of the zero-extended additive kernel, int_0^inf phi(t) e^{-i xi t} dt.
// Closed forms are summed analytically; sampled kernels are integrated exactly
// against their piecewise-linear interpolant plus the exponential tail.
Complex fourier_transform(const Kernel& k, double xi);

// int_1^inf psi(t) t^{-ix} dt/t for a multiplicative kernel.
Complex mellin_transform(const Kernel& k, double x);

// Flavor-dispatching transform.
Complex kernel_transform(const Kernel& k, double freq);

// Independent routes by adaptive quadrature in the native variable (t for the
// Fourier integral, t with dt/t for the Mellin integral).
Complex fourier_transform_by_quadrature(const Kernel& k, double xi, double tol = 1e-11);
Complex mellin_transform_by_quadrature(const Kernel& k, double x, double tol = 1e-11);

// Transform of the reflected kernel phi*(x) = phi~(-x), by quadrature.
Complex reflected_fourier_transform(const Kernel& k, double xi, double tol = 1e-11);

enum class VerdictKind { NonvanishingOnWindow, ZeroFound, Inconclusive };

const char* to_string(VerdictKind v) noexcept;

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  double margin = 0.0;          // NonvanishingOnWindow: certified lower bound of |transform|
  double zero_frequency = 0.0;  // ZeroFound
  double zero_modulus = 0.0;    // ZeroFound
  std::string reason;
};

struct SpectrumProfile {
  Flavor flavor = Flavor::Additive;
  double window = 50.0;
  std::vector<double> frequencies;
  std::vector<Complex> values;
  double min_modulus = 0.0;
  std::optional<double> lipschitz_bound;
  double grid_step = 0.0;
  Verdict verdict;
  std::optional<std::string> analytic;  // closed-form identifier when a proof is encoded
};

struct SpectrumOptions {
  double window = 50.0;
  std::size_t coarse_points = 401;
  double zero_epsilon = 1e-9;
  int max_bisection = 60;
  int max_refinements = 3;
  std::size_t max_points = std::size_t{1} << 20;
};

SpectrumProfile classify_wiener(const Kernel& k, const SpectrumOptions& opts = {});

// Tabulates the transform on a uniform grid without classification.
SpectrumProfile tabulate_transform(const Kernel& k, double window, std::size_t points);

struct DualTransformReport {
  std::vector<double> frequencies;
  std::vector<Complex> reflected;  // transform of phi* by quadrature
  std::vector<Complex> mirrored;   // transform of phi~ at -xi
  double max_deviation = 0.0;
  // max |reflected(xi) - conj(transform(xi))|, reported for real-valued kernels.
  std::optional<double> max_conjugate_deviation;
};

DualTransformReport dual_transform_identity_check(const Kernel& k, double window = 50.0,
                                                  std::size_t points = 201);

}  // namespace summability
