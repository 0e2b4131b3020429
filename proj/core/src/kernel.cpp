#include "summability/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "summability/detail/cell_integrals.hpp"
#include "summability/error.hpp"
#include "summability/quadrature.hpp"

namespace summability {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Complex kI{0.0, 1.0};

bool finite(double v) { return std::isfinite(v); }

CatalogId flavor_partner(CatalogId id, Flavor target) {
  switch (id) {
    case CatalogId::Exponential:
    case CatalogId::PowerLaw:
      return target == Flavor::Additive ? CatalogId::Exponential : CatalogId::PowerLaw;
    case CatalogId::CounterexampleAdditive:
    case CatalogId::CounterexampleMultiplicative:
      return target == Flavor::Additive ? CatalogId::CounterexampleAdditive
                                        : CatalogId::CounterexampleMultiplicative;
    case CatalogId::Mixture:
      return CatalogId::Mixture;
  }
  return id;
}

std::optional<Flavor> natural_flavor(CatalogId id) {
  switch (id) {
    case CatalogId::Exponential:
    case CatalogId::CounterexampleAdditive:
      return Flavor::Additive;
    case CatalogId::PowerLaw:
    case CatalogId::CounterexampleMultiplicative:
      return Flavor::Multiplicative;
    case CatalogId::Mixture:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string entry_label(const CatalogEntry& e) {
  std::string name;
  switch (e.id) {
    case CatalogId::Exponential: name = "exponential"; break;
    case CatalogId::PowerLaw: name = "power_law"; break;
    case CatalogId::CounterexampleAdditive: name = "counterexample_additive"; break;
    case CatalogId::CounterexampleMultiplicative: name = "counterexample_multiplicative"; break;
    case CatalogId::Mixture: {
      std::ostringstream os;
      os << "mixture(";
      for (std::size_t i = 0; i < e.components.size(); ++i) {
        const auto& c = e.components[i];
        if (i) os << " + ";
        os << "(" << c.coefficient.real() << (c.coefficient.imag() < 0 ? "" : "+")
           << c.coefficient.imag() << "i)*" << entry_label(c.entry);
      }
      os << ")";
      return os.str();
    }
  }
  std::string out = name + "(";
  for (std::size_t i = 0; i < e.params.size(); ++i) {
    if (i) out += ",";
    out += format_number(e.params[i]);
  }
  return out + ")";
}

double single_param(const CatalogEntry& e, const char* what) {
  if (e.params.size() != 1) {
    throw Error(ErrorCode::InvalidKernel, std::string(what) + " takes exactly one parameter");
  }
  const double p = e.params[0];
  if (!finite(p)) throw Error(ErrorCode::InvalidKernel, std::string(what) + " parameter is not finite");
  return p;
}

std::vector<ExpTerm> terms_for(const CatalogEntry& e) {
  switch (e.id) {
    case CatalogId::Exponential:
    case CatalogId::PowerLaw: {
      const double rate = single_param(e, e.id == CatalogId::Exponential ? "exponential" : "power_law");
      if (!(rate > 0.0)) throw Error(ErrorCode::InvalidKernel, "rate must be positive");
      return {ExpTerm{rate, rate}};
    }
    case CatalogId::CounterexampleAdditive:
    case CatalogId::CounterexampleMultiplicative: {
      const double alpha = single_param(e, "counterexample");
      if (alpha == 0.0) throw Error(ErrorCode::InvalidKernel, "counterexample alpha must be nonzero");
      // c (e^{-u} - e^{-(1 - i alpha) u} / (1 + i alpha)) with c chosen for unit mass;
      // the transform c (1/(1+i xi) - 1/((1+i alpha)(1 - i alpha + i xi))) vanishes at xi = alpha.
      const double c = (1.0 + alpha * alpha) / (alpha * alpha);
      const Complex shift = 1.0 + kI * alpha;
      return {ExpTerm{c, 1.0}, ExpTerm{-c / shift, 1.0 - kI * alpha}};
    }
    case CatalogId::Mixture: {
      if (e.components.empty()) throw Error(ErrorCode::InvalidKernel, "empty mixture");
      std::vector<ExpTerm> out;
      for (const auto& comp : e.components) {
        if (!finite(comp.coefficient.real()) || !finite(comp.coefficient.imag())) {
          throw Error(ErrorCode::InvalidKernel, "mixture coefficient is not finite");
        }
        for (auto t : terms_for(comp.entry)) {
          t.coefficient *= comp.coefficient;
          out.push_back(t);
        }
      }
      return out;
    }
  }
  throw Error(ErrorCode::InvalidKernel, "unknown catalog entry");
}

void check_entry_flavor(const CatalogEntry& e, Flavor flavor) {
  if (e.id == CatalogId::Mixture) {
    for (const auto& c : e.components) check_entry_flavor(c.entry, flavor);
    return;
  }
  if (natural_flavor(e.id) != flavor) {
    throw Error(ErrorCode::FlavorMismatch,
                entry_label(e) + " is not a " + to_string(flavor) + " catalog entry");
  }
}

CatalogEntry retarget(const CatalogEntry& e, Flavor target) {
  CatalogEntry out = e;
  out.id = flavor_partner(e.id, target);
  for (auto& c : out.components) c.entry = retarget(c.entry, target);
  return out;
}

Complex sum_terms(const std::vector<ExpTerm>& terms, double u) {
  Complex acc{};
  for (const auto& t : terms) acc += t.coefficient * std::exp(-t.rate * u);
  return acc;
}

Complex sampled_value(const Sampled& s, double u) {
  const auto& x = s.nodes;
  const auto& v = s.values;
  if (u <= x.front()) return v.front();
  if (u >= x.back()) {
    if (std::isinf(s.tail_rate)) return u == x.back() ? v.back() : Complex{};
    return v.back() * std::exp(-s.tail_rate * (u - x.back()));
  }
  std::size_t i;
  if (s.step > 0.0) {
    i = static_cast<std::size_t>((u - x.front()) / s.step);
    i = std::min(i, x.size() - 2);
    // guard against rounding at cell edges
    if (u < x[i] && i > 0) --i;
    if (u > x[i + 1] && i + 2 < x.size()) ++i;
  } else {
    i = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), u) - x.begin()) - 1;
  }
  const double w = (u - x[i]) / (x[i + 1] - x[i]);
  return v[i] + w * (v[i + 1] - v[i]);
}

void fit_tail(Sampled& s) {
  const std::size_t n = s.nodes.size();
  const std::size_t count = std::max<std::size_t>(2, n / 10);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = n - std::min(count, n); i < n; ++i) {
    const double a = std::abs(s.values[i]);
    if (a <= 0.0) continue;
    const double y = std::log(a);
    const double x = s.nodes[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (std::abs(s.values.back()) == 0.0 || m == 0) {
    s.tail_rate = kInf;
    return;
  }
  if (m < 2) throw Error(ErrorCode::InvalidKernel, "too few nonzero tail samples to fit decay");
  const double denom = m * sxx - sx * sx;
  const double slope = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
  const double rate = -slope;
  if (!(rate > 0.0) || !finite(rate)) {
    throw Error(ErrorCode::InvalidKernel, "sampled tail is not summable (fitted decay rate <= 0)");
  }
  s.tail_rate = rate;
}

Sampled make_sampled(std::vector<double> nodes, std::vector<Complex> values) {
  if (nodes.size() != values.size()) throw Error(ErrorCode::InvalidKernel, "abscissae/values size mismatch");
  if (nodes.size() < 2) throw Error(ErrorCode::InvalidKernel, "sampled kernel needs at least two samples");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!finite(nodes[i]) || !finite(values[i].real()) || !finite(values[i].imag())) {
      throw Error(ErrorCode::InvalidKernel, "non-finite sample");
    }
    if (i > 0 && !(nodes[i] > nodes[i - 1])) {
      throw Error(ErrorCode::InvalidKernel, "abscissae must be strictly increasing");
    }
  }
  if (nodes.front() < 0.0) throw Error(ErrorCode::InvalidKernel, "samples outside the support half-line");
  Sampled s;
  s.nodes = std::move(nodes);
  s.values = std::move(values);
  const double h0 = s.nodes[1] - s.nodes[0];
  bool uniform = true;
  for (std::size_t i = 2; i < s.nodes.size() && uniform; ++i) {
    uniform = std::abs((s.nodes[i] - s.nodes[i - 1]) - h0) <= 1e-9 * h0;
  }
  s.step = uniform ? h0 : 0.0;
  fit_tail(s);

  const std::size_t n = s.nodes.size();
  s.abs_suffix.assign(n, 0.0);
  double acc = std::isinf(s.tail_rate) ? 0.0 : std::abs(s.values.back()) / s.tail_rate;
  s.abs_suffix[n - 1] = acc;
  for (std::size_t i = n - 1; i-- > 0;) {
    acc += 0.5 * (s.nodes[i + 1] - s.nodes[i]) * (std::abs(s.values[i]) + std::abs(s.values[i + 1]));
    s.abs_suffix[i] = acc;
  }
  return s;
}

}  // namespace

const char* to_string(Flavor f) noexcept {
  return f == Flavor::Additive ? "additive" : "multiplicative";
}

const char* to_string(CatalogId id) noexcept {
  switch (id) {
    case CatalogId::Exponential: return "exponential";
    case CatalogId::PowerLaw: return "power_law";
    case CatalogId::CounterexampleAdditive: return "counterexample_additive";
    case CatalogId::CounterexampleMultiplicative: return "counterexample_multiplicative";
    case CatalogId::Mixture: return "mixture";
  }
  return "unknown";
}

Kernel::Kernel(Flavor flavor, KernelBody body, std::string label)
    : flavor_(flavor), body_(std::move(body)), label_(std::move(label)) {
  finalize();
}

void Kernel::finalize() {
  if (const auto* cf = std::get_if<ClosedForm>(&body_)) {
    const auto& terms = cf->terms;
    mass_ = {};
    for (const auto& t : terms) mass_ += t.coefficient / t.rate;
    if (terms.size() == 1) {
      const double re = terms[0].rate.real();
      l1_norm_ = std::abs(terms[0].coefficient) / re;
      first_moment_ = std::abs(terms[0].coefficient) / (re * re);
      return;
    }
    // |phi| over [0, U]; the tail beyond U is below 1e-14 by the cutoff bound.
    const double upper = tail_cutoff(1e-14);
    quadrature::Options opts;
    opts.abs_tol = 1e-13;
    const auto panels = [](double a) { return a + 1.0; };
    l1_norm_ = quadrature::integrate_panels(
                   [&](double u) { return Complex(std::abs(sum_terms(terms, u))); }, 0.0, upper,
                   panels, opts)
                   .value.real();
    first_moment_ = quadrature::integrate_panels(
                        [&](double u) { return Complex(u * std::abs(sum_terms(terms, u))); }, 0.0,
                        upper, panels, opts)
                        .value.real();
    return;
  }

  const auto& s = std::get<Sampled>(body_);
  const std::size_t n = s.nodes.size();
  const double u0 = s.nodes.front();
  mass_ = u0 * s.values.front();
  double moment = 0.5 * u0 * u0 * std::abs(s.values.front());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = s.nodes[i + 1] - s.nodes[i];
    mass_ += 0.5 * h * (s.values[i] + s.values[i + 1]);
    moment += 0.5 * h * (s.nodes[i] * std::abs(s.values[i]) + s.nodes[i + 1] * std::abs(s.values[i + 1]));
  }
  if (!std::isinf(s.tail_rate)) {
    const double b = s.tail_rate;
    mass_ += s.values.back() / b;
    moment += std::abs(s.values.back()) * (s.nodes.back() / b + 1.0 / (b * b));
  }
  l1_norm_ = u0 * std::abs(s.values.front()) + s.abs_suffix.front();
  first_moment_ = moment;
}

Kernel Kernel::exponential(double rate) {
  return from_catalog(Flavor::Additive, CatalogEntry{CatalogId::Exponential, {rate}, {}});
}

Kernel Kernel::power_law(double r) {
  return from_catalog(Flavor::Multiplicative, CatalogEntry{CatalogId::PowerLaw, {r}, {}});
}

Kernel Kernel::counterexample_additive(double alpha) {
  return from_catalog(Flavor::Additive, CatalogEntry{CatalogId::CounterexampleAdditive, {alpha}, {}});
}

Kernel Kernel::counterexample_multiplicative(double alpha) {
  return from_catalog(Flavor::Multiplicative,
                      CatalogEntry{CatalogId::CounterexampleMultiplicative, {alpha}, {}});
}

Kernel Kernel::mixture(Flavor flavor, std::vector<MixtureComponent> components) {
  return from_catalog(flavor, CatalogEntry{CatalogId::Mixture, {}, std::move(components)});
}

Kernel Kernel::from_catalog(Flavor flavor, const CatalogEntry& entry) {
  check_entry_flavor(entry, flavor);
  auto terms = terms_for(entry);
  return Kernel(flavor, ClosedForm{entry, std::move(terms)}, entry_label(entry));
}

Kernel Kernel::sampled(Flavor flavor, std::vector<double> abscissae, std::vector<Complex> values) {
  if (flavor == Flavor::Multiplicative) {
    for (double& t : abscissae) {
      if (!(t >= 1.0)) throw Error(ErrorCode::InvalidKernel, "multiplicative samples must have t >= 1");
      t = std::log(t);
    }
  }
  return sampled_group(flavor, std::move(abscissae), std::move(values));
}

Kernel Kernel::sampled_group(Flavor flavor, std::vector<double> nodes, std::vector<Complex> values) {
  std::ostringstream label;
  label << "sampled[" << nodes.size() << "]";
  return Kernel(flavor, make_sampled(std::move(nodes), std::move(values)), label.str());
}

const std::vector<ExpTerm>* Kernel::exp_terms() const noexcept {
  if (const auto* cf = std::get_if<ClosedForm>(&body_)) return &cf->terms;
  return nullptr;
}

Complex Kernel::at_group(double u) const {
  if (std::isnan(u)) throw Error(ErrorCode::InvalidArgument, "evaluation point is NaN");
  if (u < 0.0) return {};
  if (const auto* cf = std::get_if<ClosedForm>(&body_)) return sum_terms(cf->terms, u);
  return sampled_value(std::get<Sampled>(body_), u);
}

Complex Kernel::operator()(double t) const {
  if (std::isnan(t)) throw Error(ErrorCode::InvalidArgument, "evaluation point is NaN");
  if (flavor_ == Flavor::Additive) return at_group(t);
  if (t < 1.0) return {};
  return at_group(std::log(t));
}

double Kernel::tail_cutoff(double eps) const {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "tail tolerance must be positive");
  if (const auto* cf = std::get_if<ClosedForm>(&body_)) {
    double bound = 0.0;
    double slowest = kInf;
    for (const auto& t : cf->terms) {
      const double re = t.rate.real();
      bound += std::abs(t.coefficient) / re;
      slowest = std::min(slowest, re);
    }
    if (bound <= eps) return 0.0;
    return std::log(bound / eps) / slowest;
  }
  const auto& s = std::get<Sampled>(body_);
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    if (s.abs_suffix[i] <= eps) return s.nodes[i];
  }
  const double b = s.tail_rate;
  const double a = std::abs(s.values.back());
  return s.nodes.back() + std::max(0.0, std::log(a / (b * eps)) / b);
}

std::optional<double> Kernel::monotone_tail_start() const {
  if (const auto* cf = std::get_if<ClosedForm>(&body_)) {
    for (const auto& t : cf->terms) {
      if (t.rate.imag() != 0.0 || t.coefficient.imag() != 0.0 || t.coefficient.real() < 0.0) {
        return std::nullopt;
      }
    }
    return 0.0;
  }
  const auto& s = std::get<Sampled>(body_);
  const Complex last = s.values.back();
  if (last.real() >= 0.0 && std::abs(last.imag()) <= 1e-14 * std::abs(last)) return s.nodes.back();
  return std::nullopt;
}

Kernel Kernel::scaled(Complex factor) const {
  Kernel out = *this;
  if (auto* cf = std::get_if<ClosedForm>(&out.body_)) {
    if (cf->entry.id == CatalogId::Mixture) {
      for (auto& c : cf->entry.components) c.coefficient *= factor;
      if (cf->entry.components.size() == 1 && cf->entry.components[0].coefficient == Complex(1.0, 0.0)) {
        CatalogEntry inner = cf->entry.components[0].entry;
        cf->entry = std::move(inner);
      }
    } else {
      cf->entry = CatalogEntry{CatalogId::Mixture, {}, {MixtureComponent{factor, cf->entry}}};
    }
    for (auto& t : cf->terms) t.coefficient *= factor;
    out.label_ = entry_label(cf->entry);
  } else {
    auto& s = std::get<Sampled>(out.body_);
    for (auto& v : s.values) v *= factor;
    for (auto& a : s.abs_suffix) a *= std::abs(factor);
  }
  out.finalize();
  return out;
}

Kernel Kernel::with_flavor(Flavor flavor) const {
  Kernel out = *this;
  out.flavor_ = flavor;
  if (auto* cf = std::get_if<ClosedForm>(&out.body_)) {
    cf->entry = retarget(cf->entry, flavor);
    out.label_ = entry_label(cf->entry);
  }
  return out;
}

Complex evaluate(const Kernel& k, double t) { return k(t); }

Kernel normalize(const Kernel& k) {
  const Complex m = k.mass();
  if (std::abs(m) < kMassEpsilon) {
    throw Error(ErrorCode::DegenerateKernel, "kernel mass is (numerically) zero");
  }
  if (std::abs(m - 1.0) <= 1e-12) return k;
  Kernel out = k.scaled(1.0 / m);
  out.normalization_ = k.normalization_ / m;
  return out;
}

Kernel to_additive(const Kernel& k) {
  if (k.flavor() != Flavor::Multiplicative) {
    throw Error(ErrorCode::FlavorMismatch, "to_additive expects a multiplicative kernel");
  }
  return k.with_flavor(Flavor::Additive);
}

namespace {

// (a * b)(u) for two exponential sums, exact.
Complex exp_sum_convolution(const std::vector<ExpTerm>& a, const std::vector<ExpTerm>& b, double u) {
  Complex acc{};
  for (const auto& p : a) {
    for (const auto& q : b) {
      // integral_0^u e^{-p(u-v)} e^{-q v} dv = u e^{-p u} E1((p - q) u)
      acc += p.coefficient * q.coefficient * u * std::exp(-p.rate * u) *
             detail::exp_moment0((p.rate - q.rate) * u);
    }
  }
  return acc;
}

// (a * b)(u) for an exponential sum a and a sampled kernel b, exact against the
// piecewise-linear interpolant and exponential tail of b. Per term, the running
// integral at each node is advanced by a recursive filter.
class ExpSampledConvolution {
 public:
  ExpSampledConvolution(const std::vector<ExpTerm>& a, const Sampled& b) : terms_(a), b_(b) {
    const auto& x = b.nodes;
    running_.resize(terms_.size());
    for (std::size_t j = 0; j < terms_.size(); ++j) {
      const Complex s = terms_[j].rate;
      auto& g = running_[j];
      g.resize(x.size());
      g[0] = cell(s, x[0], b.values[0], b.values[0]);
      for (std::size_t k = 0; k + 1 < x.size(); ++k) {
        const double h = x[k + 1] - x[k];
        g[k + 1] = std::exp(-s * h) * g[k] + cell(s, h, b.values[k], b.values[k + 1]);
      }
    }
  }

  Complex operator()(double u) const {
    const auto& x = b_.nodes;
    const auto& v = b_.values;
    Complex acc{};
    for (std::size_t j = 0; j < terms_.size(); ++j) {
      const Complex s = terms_[j].rate;
      Complex val;
      if (u < x.front()) {
        val = cell(s, u, v.front(), v.front());
      } else if (u >= x.back()) {
        const double d = u - x.back();
        val = std::exp(-s * d) * running_[j].back();
        if (!std::isinf(b_.tail_rate) && d > 0.0) {
          val += v.back() * d * std::exp(-s * d) * detail::exp_moment0((s - b_.tail_rate) * d);
        }
      } else {
        const std::size_t k =
            static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), u) - x.begin()) - 1;
        const double d = u - x[k];
        const double w = d / (x[k + 1] - x[k]);
        val = std::exp(-s * d) * running_[j][k] + cell(s, d, v[k], v[k] + w * (v[k + 1] - v[k]));
      }
      acc += terms_[j].coefficient * val;
    }
    return acc;
  }

 private:
  // int_0^h e^{-s (h - v)} (va + (vb - va) v / h) dv
  static Complex cell(Complex s, double h, Complex va, Complex vb) {
    if (h <= 0.0) return {};
    return std::exp(-s * h) * detail::linear_times_exp(0.0, h, va, vb, s);
  }

  const std::vector<ExpTerm>& terms_;
  const Sampled& b_;
  std::vector<std::vector<Complex>> running_;
};

}  // namespace

Kernel convolve(const Kernel& a, const Kernel& b, const ConvolveOptions& opts) {
  if (a.flavor() != b.flavor()) {
    throw Error(ErrorCode::FlavorMismatch, "cannot convolve additive with multiplicative kernel");
  }
  const double eps = 0.1 * opts.tol;
  const double upper = a.tail_cutoff(eps / std::max(1.0, b.l1_norm())) +
                       b.tail_cutoff(eps / std::max(1.0, a.l1_norm()));

  const auto* ta = a.exp_terms();
  const auto* tb = b.exp_terms();
  std::optional<ExpSampledConvolution> mixed;
  if (ta && !tb) mixed.emplace(*ta, std::get<Sampled>(b.body()));
  if (tb && !ta) mixed.emplace(*tb, std::get<Sampled>(a.body()));
  quadrature::Options qopts;
  qopts.abs_tol = 0.01 * opts.tol;
  auto node_value = [&](double u) -> Complex {
    if (u <= 0.0) return {};
    if (ta && tb) return exp_sum_convolution(*ta, *tb, u);
    if (mixed) return (*mixed)(u);
    return quadrature::integrate([&](double v) { return a.at_group(u - v) * b.at_group(v); }, 0.0, u, qopts)
        .value;
  };

  double h = opts.initial_step;
  std::size_t n = static_cast<std::size_t>(std::ceil(upper / h));
  n = std::max<std::size_t>(n, 16);
  std::vector<Complex> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = node_value(static_cast<double>(i) * h);

  while (true) {
    double err = 0.0;
    std::vector<Complex> finer(2 * n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex mid = node_value((static_cast<double>(i) + 0.5) * h);
      err = std::max(err, std::abs(mid - 0.5 * (values[i] + values[i + 1])));
      finer[2 * i] = values[i];
      finer[2 * i + 1] = mid;
    }
    finer[2 * n] = values[n];
    values = std::move(finer);
    n *= 2;
    h *= 0.5;
    if (err < opts.tol || h * 0.5 < opts.min_step) break;
  }

  std::vector<double> nodes(n + 1);
  for (std::size_t i = 0; i <= n; ++i) nodes[i] = static_cast<double>(i) * h;
  Kernel out = Kernel::sampled_group(a.flavor(), std::move(nodes), std::move(values));
  return out;
}

Kernel power(const Kernel& k, int n, const ConvolveOptions& opts) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "convolution power requires k >= 1");
  Kernel acc = k;
  for (int i = 1; i < n; ++i) acc = convolve(acc, k, opts);
  return acc;
}

}  // namespace summability
