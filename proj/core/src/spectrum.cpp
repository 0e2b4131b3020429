#include "summability/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "summability/detail/cell_integrals.hpp"
#include "summability/error.hpp"
#include "summability/quadrature.hpp"

namespace summability {
namespace {

constexpr Complex kI{0.0, 1.0};

Complex group_transform(const Kernel& k, double freq) {
  if (!std::isfinite(freq)) throw Error(ErrorCode::TransformFailed, "non-finite frequency");
  if (const auto* terms = k.exp_terms()) {
    Complex acc{};
    for (const auto& t : *terms) acc += t.coefficient / (t.rate + kI * freq);
    return acc;
  }
  const auto& s = std::get<Sampled>(k.body());
  const Complex z = -kI * freq;
  const double u0 = s.nodes.front();
  // constant extension on [0, u0]
  Complex acc = u0 > 0.0 ? detail::linear_times_exp(0.0, u0, s.values.front(), s.values.front(), z)
                         : Complex{};
  for (std::size_t i = 0; i + 1 < s.nodes.size(); ++i) {
    acc += detail::linear_times_exp(s.nodes[i], s.nodes[i + 1] - s.nodes[i], s.values[i],
                                    s.values[i + 1], z);
  }
  if (!std::isinf(s.tail_rate)) {
    acc += s.values.back() * std::exp(z * s.nodes.back()) / (s.tail_rate + kI * freq);
  }
  return acc;
}

bool analytic_nonvanishing(const Kernel& k, std::string& id) {
  const auto* cf = std::get_if<ClosedForm>(&k.body());
  if (!cf || cf->terms.size() != 1) return false;
  const auto& e = cf->entry;
  if (e.id == CatalogId::Exponential) {
    id = "exponential: |phi^(xi)|^2 = l^2/(l^2+xi^2) > 0";
    return true;
  }
  if (e.id == CatalogId::PowerLaw) {
    id = "power_law: |psi^(x)|^2 = r^2/(r^2+x^2) > 0";
    return true;
  }
  return false;
}

void fill_grid(const Kernel& k, SpectrumProfile& p, double window, std::size_t points) {
  points = std::max<std::size_t>(points, 2);
  p.frequencies.resize(points);
  p.values.resize(points);
  p.grid_step = 2.0 * window / static_cast<double>(points - 1);
  p.min_modulus = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    const double xi = -window + static_cast<double>(i) * p.grid_step;
    p.frequencies[i] = xi;
    p.values[i] = group_transform(k, xi);
    p.min_modulus = std::min(p.min_modulus, std::abs(p.values[i]));
  }
}

// Golden-section minimisation of |transform| on [a, b].
double refine_minimum(const Kernel& k, double a, double b, int iterations) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = std::abs(group_transform(k, c));
  double fd = std::abs(group_transform(k, d));
  for (int i = 0; i < iterations; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = std::abs(group_transform(k, c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = std::abs(group_transform(k, d));
    }
  }
  return fc < fd ? c : d;
}

std::optional<Verdict> search_zero(const Kernel& k, const SpectrumProfile& p, const SpectrumOptions& opts) {
  const std::size_t n = p.values.size();
  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::abs(p.values[i]);
    const bool left = i == 0 || m <= std::abs(p.values[i - 1]);
    const bool right = i + 1 == n || m <= std::abs(p.values[i + 1]);
    if (left && right) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(p.values[a]) < std::abs(p.values[b]); });
  if (minima.size() > 8) minima.resize(8);

  std::optional<Verdict> best;
  for (std::size_t i : minima) {
    const double lo = p.frequencies[i == 0 ? 0 : i - 1];
    const double hi = p.frequencies[std::min(i + 1, n - 1)];
    const double xi = refine_minimum(k, lo, hi, opts.max_bisection);
    const double mod = std::abs(group_transform(k, xi));
    if (mod < opts.zero_epsilon && (!best || mod < best->zero_modulus)) {
      Verdict v;
      v.kind = VerdictKind::ZeroFound;
      v.zero_frequency = xi;
      v.zero_modulus = mod;
      v.reason = "local minimum refined below zero_epsilon";
      best = v;
    }
  }
  return best;
}

}  // namespace

const char* to_string(VerdictKind v) noexcept {
  switch (v) {
    case VerdictKind::NonvanishingOnWindow: return "NonvanishingOnWindow";
    case VerdictKind::ZeroFound: return "ZeroFound";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

Complex fourier_transform(const Kernel& k, double xi) {
  if (k.flavor() != Flavor::Additive) {
    throw Error(ErrorCode::FlavorMismatch, "fourier_transform expects an additive kernel");
  }
  return group_transform(k, xi);
}

Complex mellin_transform(const Kernel& k, double x) {
  if (k.flavor() != Flavor::Multiplicative) {
    throw Error(ErrorCode::FlavorMismatch, "mellin_transform expects a multiplicative kernel");
  }
  return group_transform(k, x);
}

Complex kernel_transform(const Kernel& k, double freq) { return group_transform(k, freq); }

Complex fourier_transform_by_quadrature(const Kernel& k, double xi, double tol) {
  if (k.flavor() != Flavor::Additive) {
    throw Error(ErrorCode::FlavorMismatch, "fourier_transform expects an additive kernel");
  }
  const double upper = k.tail_cutoff(0.1 * tol);
  const double width = std::min(1.0, 2.0 / (1.0 + std::abs(xi)));
  quadrature::Options opts;
  opts.abs_tol = tol;
  try {
    return quadrature::integrate_panels([&](double t) { return k(t) * std::exp(-kI * xi * t); }, 0.0,
                                        upper, [width](double t) { return t + width; }, opts)
        .value;
  } catch (const QuadratureError& e) {
    throw Error(ErrorCode::TransformFailed, e.what());
  }
}

Complex mellin_transform_by_quadrature(const Kernel& k, double x, double tol) {
  if (k.flavor() != Flavor::Multiplicative) {
    throw Error(ErrorCode::FlavorMismatch, "mellin_transform expects a multiplicative kernel");
  }
  const double upper = std::exp(k.tail_cutoff(0.1 * tol));
  // Characters t^{-ix} oscillate uniformly in log t, so panels grow geometrically.
  const double ratio = std::exp(std::min(0.5, 2.0 / (1.0 + std::abs(x))));
  quadrature::Options opts;
  opts.abs_tol = tol;
  try {
    return quadrature::integrate_panels(
               [&](double t) { return k(t) * std::exp(-kI * x * std::log(t)) / t; }, 1.0, upper,
               [ratio](double t) { return t * ratio; }, opts)
        .value;
  } catch (const QuadratureError& e) {
    throw Error(ErrorCode::TransformFailed, e.what());
  }
}

Complex reflected_fourier_transform(const Kernel& k, double xi, double tol) {
  if (k.flavor() != Flavor::Additive) {
    throw Error(ErrorCode::FlavorMismatch, "reflected transform expects an additive kernel");
  }
  // phi*(s) = phi(-s) on (-inf, 0]; substitute s = -t.
  const double upper = k.tail_cutoff(0.1 * tol);
  const double width = std::min(1.0, 2.0 / (1.0 + std::abs(xi)));
  quadrature::Options opts;
  opts.abs_tol = tol;
  return quadrature::integrate_panels([&](double t) { return k(t) * std::exp(kI * xi * t); }, 0.0, upper,
                                      [width](double t) { return t + width; }, opts)
      .value;
}

SpectrumProfile tabulate_transform(const Kernel& k, double window, std::size_t points) {
  SpectrumProfile p;
  p.flavor = k.flavor();
  p.window = window;
  p.lipschitz_bound = k.first_moment();
  fill_grid(k, p, window, points);
  return p;
}

SpectrumProfile classify_wiener(const Kernel& k, const SpectrumOptions& opts) {
  if (!(opts.window > 0.0)) throw Error(ErrorCode::InvalidArgument, "window must be positive");
  if (opts.coarse_points < 2) throw Error(ErrorCode::InvalidArgument, "need at least two grid points");
  SpectrumProfile p = tabulate_transform(k, opts.window, opts.coarse_points);

  std::string id;
  if (analytic_nonvanishing(k, id)) {
    const auto& t = k.exp_terms()->front();
    p.analytic = id;
    p.verdict.kind = VerdictKind::NonvanishingOnWindow;
    p.verdict.margin = std::abs(t.coefficient) / std::abs(t.rate + kI * opts.window);
    p.verdict.reason = "analytic";
    return p;
  }

  if (auto zero = search_zero(k, p, opts)) {
    p.verdict = *zero;
    return p;
  }

  if (!p.lipschitz_bound || !(*p.lipschitz_bound > 0.0) || !std::isfinite(*p.lipschitz_bound)) {
    p.verdict.kind = VerdictKind::Inconclusive;
    p.verdict.reason = "no Lipschitz bound available";
    return p;
  }

  const double lip = *p.lipschitz_bound;
  for (int pass = 0; pass <= opts.max_refinements; ++pass) {
    const double margin = p.min_modulus - lip * p.grid_step / 2.0;
    if (margin > 0.0) {
      p.verdict.kind = VerdictKind::NonvanishingOnWindow;
      p.verdict.margin = margin;
      std::ostringstream os;
      os << "certified by Lipschitz bound " << lip << " at step " << p.grid_step;
      p.verdict.reason = os.str();
      return p;
    }
    if (pass == opts.max_refinements) break;
    const double step = std::min(p.grid_step / 2.0, p.min_modulus / (2.0 * lip));
    if (!(step > 0.0)) break;
    const double points = 2.0 * opts.window / step + 1.0;
    if (points > static_cast<double>(opts.max_points)) break;
    fill_grid(k, p, opts.window, static_cast<std::size_t>(std::ceil(points)));
    if (auto zero = search_zero(k, p, opts)) {
      p.verdict = *zero;
      return p;
    }
  }
  p.verdict.kind = VerdictKind::Inconclusive;
  p.verdict.reason = "window could not be certified within the refinement budget";
  return p;
}

DualTransformReport dual_transform_identity_check(const Kernel& k, double window, std::size_t points) {
  if (k.flavor() != Flavor::Additive) {
    throw Error(ErrorCode::FlavorMismatch, "dual transform check expects an additive kernel");
  }
  DualTransformReport r;
  points = std::max<std::size_t>(points, 2);
  bool real_kernel = true;
  if (const auto* terms = k.exp_terms()) {
    for (const auto& t : *terms) real_kernel &= t.coefficient.imag() == 0.0 && t.rate.imag() == 0.0;
  } else {
    for (const auto& v : std::get<Sampled>(k.body()).values) real_kernel &= v.imag() == 0.0;
  }
  double conj_dev = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double xi = -window + 2.0 * window * static_cast<double>(i) / static_cast<double>(points - 1);
    const Complex refl = reflected_fourier_transform(k, xi);
    const Complex mirr = group_transform(k, -xi);
    r.frequencies.push_back(xi);
    r.reflected.push_back(refl);
    r.mirrored.push_back(mirr);
    r.max_deviation = std::max(r.max_deviation, std::abs(refl - mirr));
    if (real_kernel) conj_dev = std::max(conj_dev, std::abs(refl - std::conj(group_transform(k, xi))));
  }
  if (real_kernel) r.max_conjugate_deviation = conj_dev;
  return r;
}

}  // namespace summability
