#include "summability/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "summability/detail/cell_integrals.hpp"
#include "summability/error.hpp"
#include "summability/quadrature.hpp"

namespace summability {
namespace {

constexpr Complex kI{0.0, 1.0};
using Weight = std::function<Complex(double)>;

double to_group(Flavor fl, double x) { return fl == Flavor::Additive ? x : std::log(x); }
double from_group(Flavor fl, double u) { return fl == Flavor::Additive ? u : std::exp(u); }

void check_inputs(const Kernel& k, const TestFunction& f, double x) {
  if (k.flavor() != f.domain) {
    throw Error(ErrorCode::FlavorMismatch, "kernel is " + std::string(to_string(k.flavor())) +
                                               " but " + f.label + " lives on the " +
                                               to_string(f.domain) + " domain");
  }
  if (!f.evaluate) throw Error(ErrorCode::InvalidArgument, "test function has no evaluator");
  const double origin = k.flavor() == Flavor::Additive ? 0.0 : 1.0;
  if (!std::isfinite(x) || x < origin) {
    std::ostringstream os;
    os << "x = " << x << " lies outside the domain";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

double error_target(const Kernel& k, const TestFunction& f, double tol) {
  return tol * (1.0 + f.bound * k.l1_norm());
}

// Widest panel (group coordinate) that still resolves the kernel's own scale.
double kernel_panel(const Kernel& k) {
  if (const auto* terms = k.exp_terms()) {
    double m = 0.0;
    for (const auto& t : *terms) m = std::max(m, std::abs(t.rate));
    return m > 0.0 ? std::min(1.0, 4.0 / m) : 1.0;
  }
  return 1.0;
}

quadrature::BreakFn panel_breaks(const TestFunction& f, Flavor fl, double width) {
  quadrature::BreakFn kern;
  if (fl == Flavor::Additive) {
    kern = [width](double t) { return t + width; };
  } else {
    kern = [r = std::exp(width)](double t) { return t * r; };
  }
  if (!f.next_break) return kern;
  return [nb = f.next_break, kern](double t) { return std::min(nb(t), kern(t)); };
}

// int_{wa}^{wb} f(w) weight(w) dw with f pulled to the group coordinate. The
// integration itself runs in the native variable so panel hints apply directly.
Complex integrate_group(const TestFunction& f, Flavor fl, double wa, double wb, const Weight& weight,
                        double abs_tol, const quadrature::BreakFn& breaks) {
  if (!(wb > wa)) return {};
  quadrature::Options o;
  o.abs_tol = abs_tol;
  if (fl == Flavor::Additive) {
    return quadrature::integrate_panels([&](double t) { return f(t) * weight(t); }, wa, wb, breaks, o).value;
  }
  return quadrature::integrate_panels([&](double t) { return f(t) * weight(std::log(t)) / t; },
                                      std::exp(wa), std::exp(wb), breaks, o)
      .value;
}

double sum_abs_coefficients(const std::vector<ExpTerm>& terms) {
  double s = 0.0;
  for (const auto& t : terms) s += std::abs(t.coefficient);
  return s;
}

// Dual transform of an exponential-mode function against an exponential-sum kernel.
Complex dual_by_modes(const std::vector<ExpTerm>& terms, const TestFunction& f, Flavor fl, double x,
                      double target) {
  Complex total{};
  double weight = 0.0;
  for (const auto& m : f.modes) weight += std::abs(m.amplitude);
  weight *= sum_abs_coefficients(terms);
  for (const auto& mode : f.modes) {
    const Complex w = mode.frequency;
    for (const auto& term : terms) {
      const Complex c = term.coefficient * mode.amplitude;
      const Complex s = term.rate;
      if (fl == Flavor::Additive) {
        total += c * std::exp(kI * w * x) / (s - kI * w);
        continue;
      }
      if (std::abs(w) == 0.0) {
        total += c / s;
        continue;
      }
      // x^s int_x^inf e^{iwt} t^{-s-1} dt along t = x + d y, where e^{iwt} decays fastest.
      const double aw = std::abs(w);
      const Complex d = kI * std::conj(w) / aw;
      const Complex sigma = s + 1.0;
      const auto integrand = [&](double y) { return std::exp(-aw * y - sigma * std::log(1.0 + d * y / x)); };
      quadrature::Options o;
      o.abs_tol = std::max(0.1 * target * x / std::max(weight, 1e-300), 1e-15);
      const double ymax = 42.0 / aw;
      const auto r = quadrature::integrate_panels(integrand, 0.0, ymax, [aw](double y) { return y + 2.0 / aw; }, o);
      total += c * d * std::exp(kI * w * x) * r.value / x;
    }
  }
  return total;
}

// Cached recursive evaluation of U_{k_n} ... U_{k_1} f. Every level is
// tabulated on the nodes start + i h and linearly interpolated between them.
// Exponential-sum levels advance by the recursive filter
// I(u + h) = e^{-s h} I(u) + int_u^{u+h} g(w) e^{-s (u + h - w)} dw;
// other kernels use exact hat-function weights against the previous level.
class ComposedForward {
 public:
  ComposedForward(std::vector<Kernel> kernels, const TestFunction& f, const EngineOptions& opts)
      : kernels_(std::move(kernels)), f_(f), opts_(opts) {
    if (kernels_.empty()) throw Error(ErrorCode::InvalidArgument, "no kernels to compose");
    fl_ = kernels_.front().flavor();
    for (const auto& k : kernels_) {
      if (k.flavor() != fl_ || f.domain != fl_) {
        throw Error(ErrorCode::FlavorMismatch, "composed kernels and function must share a flavor");
      }
    }
    h_ = opts.cache_step;
    if (!(h_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "cache_step must be positive");
    const std::size_t n = kernels_.size();
    double l1 = 1.0;
    for (const auto& k : kernels_) l1 *= k.l1_norm();
    target_ = opts.tol_quad * (1.0 + f.bound * l1);
    levels_.resize(n);
    double input_bound = f.bound;
    for (std::size_t j = 0; j < n; ++j) {
      Level& L = levels_[j];
      const Kernel& k = kernels_[j];
      const double eps = 0.05 * target_ / (static_cast<double>(n) * std::max(input_bound, 1e-300));
      L.cutoff = k.tail_cutoff(eps);
      if (const auto* terms = k.exp_terms()) {
        L.terms = *terms;
        L.exp_sum = true;
        L.decay.reserve(L.terms.size());
        for (const auto& t : L.terms) L.decay.push_back(std::exp(-t.rate * h_));
      } else {
        build_hat_weights(L, k);
      }
      total_cutoff_ += L.cutoff;
      input_bound *= k.l1_norm();
    }
    const auto& first = levels_.front();
    const double csum = first.exp_sum ? std::max(sum_abs_coefficients(first.terms), 1e-300) : 1.0;
    cell_density_ = 0.1 * target_ / ((first.cutoff + 1.0) * csum);
    breaks_ = panel_breaks(f_, fl_, kernel_panel(kernels_.front()));
  }

  Complex value(double x) {
    const double X = to_group(fl_, x);
    const double start = std::max(0.0, X - total_cutoff_);
    const bool extend = built_ && start == 0.0 && start_ == 0.0 && X >= node(count_ - 1);
    if (!extend) rebuild(start);
    while (node(count_ - 1) + h_ <= X) advance();
    return tip(X);
  }

 private:
  struct Level {
    double cutoff = 0.0;
    bool exp_sum = false;
    std::vector<ExpTerm> terms;
    std::vector<Complex> decay;  // e^{-s h}
    std::vector<Complex> state;  // recursive-filter integrals at the last node
    std::vector<Complex> beta;   // hat weights, generic kernels
    std::vector<Complex> table;
  };

  double node(std::size_t i) const { return start_ + static_cast<double>(i) * h_; }

  void build_hat_weights(Level& L, const Kernel& k) const {
    const auto m_max = static_cast<std::size_t>(std::ceil(L.cutoff / h_)) + 1;
    L.beta.assign(m_max + 1, Complex{});
    quadrature::Options o;
    o.abs_tol = 0.01 * target_ / static_cast<double>(m_max + 1);
    for (std::size_t m = 0; m <= m_max; ++m) {
      const double c = static_cast<double>(m) * h_;
      Complex b = quadrature::integrate([&](double v) { return (1.0 - (v - c) / h_) * k.at_group(v); }, c, c + h_, o)
                      .value;
      if (m > 0) {
        b += quadrature::integrate([&](double v) { return ((v - (c - h_)) / h_) * k.at_group(v); }, c - h_, c, o)
                 .value;
      }
      L.beta[m] = b;
    }
  }

  // int_a^b f(w) e^{-s (b - w)} dw
  Complex cell_f(double a, double b, Complex s) const {
    return integrate_group(
        f_, fl_, a, b, [&](double w) { return std::exp(-s * (b - w)); }, cell_density_ * (b - a), breaks_);
  }

  void rebuild(double start) {
    start_ = start;
    count_ = 1;
    built_ = true;
    for (std::size_t j = 0; j < levels_.size(); ++j) {
      Level& L = levels_[j];
      L.table.assign(1, Complex{});
      L.state.assign(L.terms.size(), Complex{});
    }
    Level& first = levels_.front();
    if (first.exp_sum) {
      const double lo = std::max(0.0, start - first.cutoff);
      Complex v{};
      for (std::size_t t = 0; t < first.terms.size(); ++t) {
        const Complex s = first.terms[t].rate;
        first.state[t] = integrate_group(
            f_, fl_, lo, start, [&](double w) { return std::exp(-s * (start - w)); },
            0.1 * target_ / std::max(sum_abs_coefficients(first.terms), 1e-300), breaks_);
        v += first.terms[t].coefficient * first.state[t];
      }
      first.table[0] = v;
    } else {
      first.table[0] = apply_forward(kernels_.front(), f_, from_group(fl_, start), opts_.tol_quad);
    }
  }

  void advance() {
    const std::size_t i = count_ - 1;
    const double a = node(i);
    const double b = node(i + 1);
    for (std::size_t j = 0; j < levels_.size(); ++j) {
      Level& L = levels_[j];
      Complex v{};
      if (j == 0) {
        if (L.exp_sum) {
          for (std::size_t t = 0; t < L.terms.size(); ++t) {
            L.state[t] = L.decay[t] * L.state[t] + cell_f(a, b, L.terms[t].rate);
            v += L.terms[t].coefficient * L.state[t];
          }
        } else {
          v = apply_forward(kernels_.front(), f_, from_group(fl_, b), opts_.tol_quad);
        }
      } else {
        const auto& prev = levels_[j - 1].table;
        if (L.exp_sum) {
          for (std::size_t t = 0; t < L.terms.size(); ++t) {
            const Complex s = L.terms[t].rate;
            L.state[t] = L.decay[t] * (L.state[t] + detail::linear_times_exp(0.0, h_, prev[i], prev[i + 1], s));
            v += L.terms[t].coefficient * L.state[t];
          }
        } else {
          const std::size_t top = std::min(i + 1, L.beta.size() - 1);
          for (std::size_t m = 0; m <= top; ++m) v += prev[i + 1 - m] * L.beta[m];
        }
      }
      L.table.push_back(v);
    }
    ++count_;
  }

  Complex tip(double X) const {
    const std::size_t n = count_ - 1;
    const double un = node(n);
    const double delta = X - un;
    Complex below{};
    for (std::size_t j = 0; j < levels_.size(); ++j) {
      const Level& L = levels_[j];
      Complex v{};
      if (delta <= 0.0) {
        v = L.table[n];
      } else if (j == 0) {
        if (L.exp_sum) {
          for (std::size_t t = 0; t < L.terms.size(); ++t) {
            const Complex s = L.terms[t].rate;
            v += L.terms[t].coefficient * (std::exp(-s * delta) * L.state[t] + cell_f(un, X, s));
          }
        } else {
          v = apply_forward(kernels_.front(), f_, from_group(fl_, X), opts_.tol_quad);
        }
      } else {
        const auto& prev = levels_[j - 1].table;
        if (L.exp_sum) {
          for (std::size_t t = 0; t < L.terms.size(); ++t) {
            const Complex s = L.terms[t].rate;
            v += L.terms[t].coefficient * std::exp(-s * delta) *
                 (L.state[t] + detail::linear_times_exp(0.0, delta, prev[n], below, s));
          }
        } else {
          v = generic_tip(j, X, below);
        }
      }
      below = v;
    }
    return below;
  }

  // int over [X - cutoff, X] of the previous level (with its value at X) against the kernel.
  Complex generic_tip(std::size_t j, double X, Complex prev_tip) const {
    const auto& prev = levels_[j - 1].table;
    const Kernel& k = kernels_[j];
    const std::size_t n = count_ - 1;
    const auto interp = [&](double w) -> Complex {
      if (w < start_) return {};
      const double pos = (w - start_) / h_;
      const auto i = static_cast<std::size_t>(pos);
      if (i >= n) {
        const double frac = (w - node(n)) / (X - node(n));
        return prev[n] + (prev_tip - prev[n]) * frac;
      }
      const double frac = pos - static_cast<double>(i);
      return prev[i] + (prev[i + 1] - prev[i]) * frac;
    };
    const double lo = std::max(start_, X - levels_[j].cutoff);
    quadrature::Options o;
    o.abs_tol = 0.1 * target_;
    const auto next = [&](double w) {
      const double nb = start_ + (std::floor((w - start_) / h_) + 1.0) * h_;
      return nb > w ? nb : w + h_;
    };
    return quadrature::integrate_panels([&](double w) { return interp(w) * k.at_group(X - w); }, lo, X, next, o)
        .value;
  }

  std::vector<Kernel> kernels_;
  const TestFunction& f_;
  EngineOptions opts_;
  Flavor fl_ = Flavor::Additive;
  double h_ = 0.0;
  double target_ = 0.0;
  double total_cutoff_ = 0.0;
  double cell_density_ = 0.0;
  quadrature::BreakFn breaks_;
  std::vector<Level> levels_;
  bool built_ = false;
  double start_ = 0.0;
  std::size_t count_ = 0;
};

double spread(const std::vector<Complex>& v, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t i = from; i < to; ++i) {
    for (std::size_t j = i + 1; j < to; ++j) s = std::max(s, std::abs(v[i] - v[j]));
  }
  return s;
}

std::string format_r(double r) {
  std::ostringstream os;
  const double inv = 1.0 / r;
  if (r < 1.0 && std::abs(inv - std::round(inv)) < 1e-12) {
    os << "1/" << std::llround(inv);
  } else {
    os << r;
  }
  return os.str();
}

}  // namespace

const char* to_string(Variant v) noexcept { return v == Variant::Forward ? "forward" : "dual"; }

const char* to_string(LimitStatus s) noexcept {
  switch (s) {
    case LimitStatus::Converged: return "Converged";
    case LimitStatus::Oscillating: return "Oscillating";
    case LimitStatus::Diverged: return "Diverged";
    case LimitStatus::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

std::optional<LimitStatus> parse_limit_status(const std::string& s) {
  for (auto st : {LimitStatus::Converged, LimitStatus::Oscillating, LimitStatus::Diverged, LimitStatus::Inconclusive}) {
    if (s == to_string(st)) return st;
  }
  return std::nullopt;
}

MethodDescriptor make_method(Kernel kernel, Variant variant, int iterations, std::string label) {
  if (iterations < 1) throw Error(ErrorCode::InvalidArgument, "iterations must be >= 1");
  if (std::abs(kernel.mass() - 1.0) > 1e-6) {
    throw Error(ErrorCode::InvalidArgument, "method kernels must be normalized (mass 1)");
  }
  if (label.empty()) {
    label = (variant == Variant::Dual ? "S*[" : "S[") + kernel.label() + "]";
    if (iterations > 1) label += "^" + std::to_string(iterations);
  }
  return MethodDescriptor{std::move(kernel), variant, iterations, std::move(label)};
}

Complex apply_forward(const Kernel& k, const TestFunction& f, double x, double tol_quad) {
  check_inputs(k, f, x);
  const Flavor fl = k.flavor();
  const double X = to_group(fl, x);
  if (X <= 0.0 || f.bound == 0.0) return {};
  const double target = error_target(k, f, tol_quad);
  const double T = k.tail_cutoff(0.1 * target / f.bound);
  return integrate_group(
      f, fl, std::max(0.0, X - T), X, [&](double w) { return k.at_group(X - w); }, 0.9 * target,
      panel_breaks(f, fl, kernel_panel(k)));
}

Complex apply_dual(const Kernel& k, const TestFunction& f, double x, double tol_quad) {
  check_inputs(k, f, x);
  const Flavor fl = k.flavor();
  if (f.bound == 0.0) return {};
  const double X = to_group(fl, x);
  const double target = error_target(k, f, tol_quad);
  if (const auto* terms = k.exp_terms(); terms != nullptr && !f.modes.empty()) {
    return dual_by_modes(*terms, f, fl, x, target);
  }
  const double eps = 0.1 * target;
  double V = k.tail_cutoff(eps / f.bound);
  const auto m0 = k.monotone_tail_start();
  if (f.primitive_variation && m0) {
    // Second mean value theorem: past V the tail is at most P times the weight at V.
    const double P = *f.primitive_variation;
    const auto g = [&](double v) {
      double w = P * std::abs(k.at_group(v));
      if (fl == Flavor::Multiplicative) w *= std::exp(-v) / x;
      return w;
    };
    if (g(*m0) <= eps) {
      V = std::min(V, *m0);
    } else if (g(V) <= eps) {
      double lo = *m0;
      double hi = V;
      for (int it = 0; it < 60 && hi - lo > 1e-9 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) <= eps ? hi : lo) = mid;
      }
      V = hi;
    }
  }
  return integrate_group(
      f, fl, X, X + V, [&](double w) { return k.at_group(w - X); }, 0.9 * target,
      panel_breaks(f, fl, kernel_panel(k)));
}

Complex apply_composed(const std::vector<Kernel>& kernels, const TestFunction& f, double x,
                       const EngineOptions& opts) {
  if (kernels.empty()) throw Error(ErrorCode::InvalidArgument, "no kernels to compose");
  check_inputs(kernels.front(), f, x);
  if (kernels.size() == 1) return apply_forward(kernels.front(), f, x, opts.tol_quad);
  ComposedForward c(kernels, f, opts);
  return c.value(x);
}

SummationResult estimate_limit(const MethodDescriptor& method, const TestFunction& f, const EngineOptions& opts) {
  if (method.iterations < 1) throw Error(ErrorCode::InvalidArgument, "iterations must be >= 1");
  if (method.kernel.flavor() != f.domain) {
    throw Error(ErrorCode::FlavorMismatch, method.label + " cannot act on " + f.label);
  }
  if (opts.window < 2) throw Error(ErrorCode::InvalidArgument, "window must be >= 2");
  const std::size_t evals_before = quadrature::stats().evaluations;
  SummationResult res;
  const double tol = opts.tol_limit.value_or(1e-4 * (1.0 + f.bound));
  res.tolerance_used = tol;
  const int k = method.iterations;
  const double cap = 10.0 * f.bound * std::pow(method.kernel.l1_norm(), k);

  std::optional<Kernel> powered;
  std::optional<ComposedForward> nested;
  if (k > 1) {
    if (method.variant == Variant::Forward && opts.nested_iterates) {
      nested.emplace(std::vector<Kernel>(static_cast<std::size_t>(k), method.kernel), f, opts);
    } else {
      powered = power(method.kernel, k);
    }
  }
  const Kernel& kern = powered ? *powered : method.kernel;
  const auto eval = [&](double x) -> Complex {
    if (nested) return nested->value(x);
    return method.variant == Variant::Forward ? apply_forward(kern, f, x, opts.tol_quad)
                                              : apply_dual(kern, f, x, opts.tol_quad);
  };

  std::vector<double> xs = opts.abscissae;
  if (xs.empty()) {
    for (int j = 0; j <= opts.max_ladder; ++j) xs.push_back(opts.x0 * std::pow(opts.ratio, j));
  }
  const auto W = static_cast<std::size_t>(opts.window);
  std::vector<Complex> v;
  std::vector<Complex> acc;  // acc[i] pairs with v[i]; NaN where undefined
  std::vector<double> q;     // difference ratios
  const Complex nan{std::numeric_limits<double>::quiet_NaN(), 0.0};
  const auto finish = [&]() {
    res.evaluations = quadrature::stats().evaluations - evals_before;
    return res;
  };

  for (double x : xs) {
    const Complex value = eval(x);
    v.push_back(value);
    res.trace.push_back({x, value});
    const std::size_t n = v.size();

    if (n >= W && spread(v, n - W, n) < tol) {
      res.status = LimitStatus::Converged;
      res.estimate = value;
      return finish();
    }

    // Aitken delta-squared on geometrically contracting differences.
    acc.push_back(nan);
    q.push_back(std::numeric_limits<double>::quiet_NaN());
    if (n >= 3) {
      const Complex d1 = v[n - 1] - v[n - 2];
      const Complex d0 = v[n - 2] - v[n - 3];
      if (std::abs(d0) > 1e-14 * (1.0 + std::abs(value))) {
        const Complex ratio = d1 / d0;
        if (std::abs(1.0 - ratio) > 1e-12) {
          acc[n - 1] = value + d1 * ratio / (1.0 - ratio);
          q[n - 1] = std::abs(ratio) < 0.9 && std::abs(ratio.imag()) < 0.05 * std::abs(ratio) ? ratio.real()
                                                                                             : std::nan("");
        }
      }
    }
    if (opts.accelerate && n >= W + 2) {
      bool stable = true;
      for (std::size_t i = n - W; i < n && stable; ++i) {
        if (std::isnan(q[i]) || std::isnan(acc[i].real())) stable = false;
        if (stable && i > n - W && std::abs(q[i] - q[i - 1]) >= 0.05) stable = false;
      }
      if (stable && spread(acc, n - W, n) < tol) {
        res.status = LimitStatus::Converged;
        res.estimate = acc[n - 1];
        res.accelerated = true;
        for (std::size_t i = n - W; i < n; ++i) res.accelerated_trace.push_back({res.trace[i].x, acc[i]});
        return finish();
      }
    }

    if (n >= W && std::abs(value) > cap) {
      bool growing = true;
      for (std::size_t i = n - W + 1; i < n; ++i) growing = growing && std::abs(v[i]) > std::abs(v[i - 1]);
      if (growing) {
        res.status = LimitStatus::Diverged;
        return finish();
      }
    }
  }

  const std::size_t n = v.size();
  if (n >= 2 * W) {
    const double recent = spread(v, n - W, n);
    const double earlier = spread(v, n - 2 * W, n - W);
    double peak = 0.0;
    for (std::size_t i = n - 2 * W; i < n; ++i) peak = std::max(peak, std::abs(v[i]));
    if (recent > tol && earlier > tol && recent <= 2.0 * earlier && earlier <= 2.0 * recent && peak <= cap) {
      res.status = LimitStatus::Oscillating;
      res.oscillation_amplitude = 0.5 * spread(v, n - 2 * W, n);
    }
  }
  return finish();
}

double continuity_modulus_bound(const Kernel& k, double f_bound, double delta, double tol) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw Error(ErrorCode::InvalidArgument, "delta must be >= 0");
  const double T = k.tail_cutoff(tol);
  quadrature::Options o;
  o.abs_tol = tol;
  const double width = std::min(kernel_panel(k), std::max(delta, 1e-3));
  const auto breaks = [width](double u) { return u + width; };
  const double shift =
      quadrature::integrate_panels([&](double u) { return Complex(std::abs(k.at_group(u) - k.at_group(u + delta))); },
                                   0.0, T + delta, breaks, o)
          .value.real();
  const double head =
      quadrature::integrate_panels([&](double u) { return Complex(std::abs(k.at_group(u))); }, 0.0, delta, breaks, o)
          .value.real();
  return f_bound * (shift + head + 2.0 * tol);
}

namespace methods {

MethodDescriptor Mr(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "M_r needs r > 0");
  return make_method(Kernel::power_law(r), Variant::Forward, 1, r == 1.0 ? "M" : "M_" + format_r(r));
}

MethodDescriptor Mr_dual(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "M*_r needs r > 0");
  return make_method(Kernel::power_law(r), Variant::Dual, 1, "M*_" + format_r(r));
}

MethodDescriptor holder(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "H_k needs k >= 1");
  return make_method(Kernel::power_law(1.0), Variant::Forward, k, "H_" + std::to_string(k));
}

MethodDescriptor k_estimator(Flavor flavor) {
  if (flavor == Flavor::Additive) {
    return make_method(Kernel::exponential(1.0), Variant::Forward, 1, "K~S[exponential(1)]");
  }
  return make_method(Kernel::power_law(1.0), Variant::Forward, 1, "P~M[power_law(1)]");
}

MethodDescriptor S(const Kernel& k, Variant variant, int iterations, std::string label) {
  return make_method(k, variant, iterations, std::move(label));
}

}  // namespace methods

}  // namespace summability
