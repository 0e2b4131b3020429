#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "summability/kernel.hpp"
#include "summability/test_function.hpp"

namespace summability {

enum class Variant { Forward, Dual };

const char* to_string(Variant v) noexcept;

struct MethodDescriptor {
  Kernel kernel;
  Variant variant = Variant::Forward;
  int iterations = 1;
  std::string label;

  Flavor flavor() const noexcept { return kernel.flavor(); }
};

// Validates normalization and the iteration count.
MethodDescriptor make_method(Kernel kernel, Variant variant = Variant::Forward, int iterations = 1,
                             std::string label = {});

enum class LimitStatus { Converged, Oscillating, Diverged, Inconclusive };

const char* to_string(LimitStatus s) noexcept;
std::optional<LimitStatus> parse_limit_status(const std::string& s);

struct TracePoint {
  double x = 0.0;
  Complex value;
};

struct SummationResult {
  std::optional<Complex> estimate;
  LimitStatus status = LimitStatus::Inconclusive;
  std::vector<TracePoint> trace;
  // Aitken-extrapolated values aligned with the tail of trace; filled when used.
  std::vector<TracePoint> accelerated_trace;
  bool accelerated = false;
  double oscillation_amplitude = 0.0;
  double tolerance_used = 0.0;
  std::size_t evaluations = 0;
};

struct EngineOptions {
  double tol_quad = 1e-8;
  std::optional<double> tol_limit;  // default 1e-4 (1 + |f|)
  double x0 = 4.0;
  double ratio = 2.0;
  int max_ladder = 24;
  int window = 5;
  std::vector<double> abscissae;  // replaces the geometric ladder when nonempty
  double cache_step = 1.0 / 1024.0;
  bool accelerate = true;
  bool nested_iterates = true;  // false: forward iterates go through power(kernel, k)
};

// (U f)(x): int_0^x f(t) phi(x - t) dt, or int_1^x f(t) psi(x/t) dt/t.
Complex apply_forward(const Kernel& k, const TestFunction& f, double x, double tol_quad = 1e-8);

// (U* f)(x): int_x^inf f(t) phi(t - x) dt, or int_x^inf f(t) psi(t/x) dt/t.
Complex apply_dual(const Kernel& k, const TestFunction& f, double x, double tol_quad = 1e-8);

// U_{k_n} ... U_{k_2} U_{k_1} f at x, by recursion on a cached uniform grid in the
// group coordinate. kernels.front() is applied first.
Complex apply_composed(const std::vector<Kernel>& kernels, const TestFunction& f, double x,
                       const EngineOptions& opts = {});

SummationResult estimate_limit(const MethodDescriptor& method, const TestFunction& f,
                               const EngineOptions& opts = {});

// |f| (int |phi(u) - phi(u + delta)| du + int_0^delta |phi|) in the group coordinate:
// an upper bound on |Uf(x) - Uf(y)| for |x - y| <= delta.
double continuity_modulus_bound(const Kernel& k, double f_bound, double delta, double tol = 1e-11);

namespace methods {

// Forward method with kernel PowerLaw(r): (r/x^r) int_1^x f(t) t^{r-1} dt.
MethodDescriptor Mr(double r);
// r x^r int_x^inf f(t) t^{-r-1} dt
MethodDescriptor Mr_dual(double r);
// k-fold Cesaro operator.
MethodDescriptor holder(int k);
// Wiener-kernel stand-ins for the weak* translation (K) and dilation (P) methods.
MethodDescriptor k_estimator(Flavor flavor);
MethodDescriptor S(const Kernel& k, Variant variant = Variant::Forward, int iterations = 1,
                   std::string label = {});

}  // namespace methods

}  // namespace summability
