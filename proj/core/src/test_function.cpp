#include "summability/test_function.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <cmath>
#include <sstream>

#include "summability/error.hpp"

namespace summability {
namespace {

constexpr Complex kI{0.0, 1.0};

std::string flavor_suffix(Flavor f) { return f == Flavor::Additive ? "@add" : "@mul"; }

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

quadrature::BreakFn fixed_width(double w) {
  return [w](double t) { return t + w; };
}

}  // namespace

const char* to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::Trivial: return "TRIVIAL";
    case Provenance::Derived: return "DERIVED";
    case Provenance::Paper: return "PAPER";
  }
  return "UNKNOWN";
}

namespace functions {

TestFunction constant(Flavor domain, Complex value) {
  TestFunction f;
  f.label = "const(" + num(value.real()) + (value.imag() != 0.0 ? "," + num(value.imag()) : "") + ")" +
            flavor_suffix(domain);
  f.domain = domain;
  f.evaluate = [value](double) { return value; };
  f.bound = std::abs(value);
  f.classical_limit = value;
  if (value == Complex{}) f.primitive_variation = 0.0;
  f.modes = {{value, 0.0}};
  return f;
}

TestFunction reciprocal_decay(Flavor domain, double alpha) {
  TestFunction f;
  f.label = "recip(" + num(alpha) + ")" + flavor_suffix(domain);
  f.domain = domain;
  f.evaluate = [alpha](double t) { return Complex(alpha + 1.0 / (1.0 + t)); };
  f.bound = std::abs(alpha) + 1.0;
  f.classical_limit = alpha;
  return f;
}

TestFunction exp_decay(Flavor domain, double alpha) {
  TestFunction f;
  f.label = "decay(" + num(alpha) + ")" + flavor_suffix(domain);
  f.domain = domain;
  f.evaluate = [alpha](double t) { return Complex(alpha + std::exp(-t)); };
  f.bound = std::abs(alpha) + 1.0;
  f.classical_limit = alpha;
  f.modes = {{alpha, 0.0}, {1.0, kI}};
  return f;
}

TestFunction sine(Flavor domain) {
  TestFunction f;
  f.label = std::string("sin") + flavor_suffix(domain);
  f.domain = domain;
  f.evaluate = [](double t) { return Complex(std::sin(t)); };
  f.bound = 1.0;
  f.next_break = fixed_width(3.0);
  f.primitive_variation = 2.0;
  f.modes = {{-0.5 * kI, 1.0}, {0.5 * kI, -1.0}};
  return f;
}

TestFunction cosine(Flavor domain) {
  TestFunction f;
  f.label = std::string("cos") + flavor_suffix(domain);
  f.domain = domain;
  f.evaluate = [](double t) { return Complex(std::cos(t)); };
  f.bound = 1.0;
  f.next_break = fixed_width(3.0);
  f.primitive_variation = 2.0;
  f.modes = {{0.5, 1.0}, {0.5, -1.0}};
  return f;
}

TestFunction additive_character(double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "character frequency must be positive");
  TestFunction f;
  f.label = "char(" + num(alpha) + ")@add";
  f.domain = Flavor::Additive;
  f.evaluate = [alpha](double t) { return std::exp(kI * (alpha * t)); };
  f.bound = 1.0;
  f.next_break = fixed_width(std::min(3.0, 3.0 / alpha));
  f.primitive_variation = 2.0 / alpha;
  f.modes = {{1.0, alpha}};
  return f;
}

TestFunction multiplicative_character(double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "character frequency must be positive");
  TestFunction f;
  f.label = "mchar(" + num(alpha) + ")@mul";
  f.domain = Flavor::Multiplicative;
  f.evaluate = [alpha](double t) { return std::exp(kI * (alpha * std::log(t))); };
  f.bound = 1.0;
  const double ratio = std::exp(std::min(0.5, 3.0 / alpha));
  f.next_break = [ratio](double t) { return t * ratio; };
  return f;
}

TestFunction chirp() {
  TestFunction f;
  f.label = "chirp@add";
  f.domain = Flavor::Additive;
  f.evaluate = [](double t) { return Complex(std::sin(t * t)); };
  f.bound = 1.0;
  // local period pi / t
  f.next_break = [](double t) { return t + 3.0 / (1.0 + 2.0 * t); };
  // int_0^t sin(s^2) ds lies in [0, 0.8949]
  f.primitive_variation = 0.9;
  return f;
}

}  // namespace functions

TestFunction embed_sequence(std::function<Complex(std::int64_t)> term, double bound, std::string label,
                            std::optional<double> primitive_variation) {
  if (!term) throw Error(ErrorCode::InvalidArgument, "empty sequence");
  TestFunction f;
  f.label = std::move(label);
  f.domain = Flavor::Multiplicative;
  f.evaluate = [term](double t) { return term(static_cast<std::int64_t>(std::floor(t))); };
  f.bound = bound;
  // integrate cell by cell so no panel straddles a jump
  f.next_break = [](double t) { return std::floor(t) + 1.0; };
  f.primitive_variation = primitive_variation;
  f.sequence = std::move(term);
  return f;
}

TestFunction embed_sequence(const std::vector<Complex>& a, std::string label) {
  if (a.empty()) throw Error(ErrorCode::InvalidArgument, "empty sequence");
  double bound = 0.0;
  for (const auto& v : a) bound = std::max(bound, std::abs(v));
  auto data = std::make_shared<std::vector<Complex>>(a);
  TestFunction f = embed_sequence(
      [data](std::int64_t n) {
        return n >= 1 && static_cast<std::size_t>(n) <= data->size() ? (*data)[static_cast<std::size_t>(n - 1)]
                                                                      : Complex{};
      },
      bound, std::move(label));
  f.classical_limit = Complex{};
  const std::size_t len = a.size();
  // past the last entry the step function is identically zero
  f.next_break = [len](double t) {
    return t >= static_cast<double>(len + 1) ? std::numeric_limits<double>::infinity() : std::floor(t) + 1.0;
  };
  return f;
}

TestFunction compose_exp(const TestFunction& f) {
  if (f.domain != Flavor::Multiplicative) {
    throw Error(ErrorCode::FlavorMismatch, "compose_exp expects a multiplicative-domain function");
  }
  TestFunction g;
  g.label = f.label + "∘exp";
  g.domain = Flavor::Additive;
  const auto inner = f.evaluate;
  g.evaluate = [inner](double u) { return inner(std::exp(u)); };
  g.bound = f.bound;
  g.classical_limit = f.classical_limit;
  if (f.next_break) {
    const auto nb = f.next_break;
    g.next_break = [nb](double u) {
      const double t = std::exp(u);
      const double next = nb(t);
      return std::isfinite(next) ? std::max(std::log(next), std::nextafter(u, HUGE_VAL)) : next;
    };
  }
  return g;
}

Complex discrete_cesaro_mean(const std::function<Complex(std::int64_t)>& term, std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "Cesaro mean needs n >= 1");
  Complex acc{};
  for (std::int64_t i = 1; i <= n; ++i) acc += term(i);
  return acc / static_cast<double>(n);
}

}  // namespace summability
