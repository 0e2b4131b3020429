#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace summability {

using Complex = std::complex<double>;

// Additive kernels live on [0, inf) with dx; multiplicative ones on [1, inf)
// with dt/t. Internally both are stored in the group coordinate u, where
// u = t for additive and u = log t for multiplicative kernels, so the
// multiplicative Haar measure becomes du.
enum class Flavor { Additive, Multiplicative };

const char* to_string(Flavor f) noexcept;

enum class CatalogId {
  Exponential,
  PowerLaw,
  CounterexampleAdditive,
  CounterexampleMultiplicative,
  Mixture,
};

const char* to_string(CatalogId id) noexcept;

struct MixtureComponent;

struct CatalogEntry {
  CatalogId id = CatalogId::Exponential;
  // Exponential: {rate}; PowerLaw: {r}; Counterexample*: {alpha}; Mixture: {}.
  std::vector<double> params;
  std::vector<MixtureComponent> components;  // Mixture only
};

struct MixtureComponent {
  Complex coefficient;
  CatalogEntry entry;
};

// c * exp(-rate * u) in the group coordinate.
struct ExpTerm {
  Complex coefficient;
  Complex rate;
};

struct ClosedForm {
  CatalogEntry entry;
  std::vector<ExpTerm> terms;
};

struct Sampled {
  std::vector<double> nodes;   // group coordinate, strictly increasing
  std::vector<Complex> values;
  double tail_rate = 0.0;      // |phi| ~ |v_last| exp(-tail_rate (u - u_last)); inf = no tail
  double step = 0.0;           // > 0 when nodes are uniformly spaced
  std::vector<double> abs_suffix;  // integral of |phi| from nodes[i] to infinity
};

using KernelBody = std::variant<ClosedForm, Sampled>;

class Kernel {
 public:
  static Kernel exponential(double rate);
  static Kernel power_law(double r);
  static Kernel counterexample_additive(double alpha);
  static Kernel counterexample_multiplicative(double alpha);
  static Kernel mixture(Flavor flavor, std::vector<MixtureComponent> components);
  static Kernel from_catalog(Flavor flavor, const CatalogEntry& entry);

  // Abscissae in the native coordinate (t >= 0, or t >= 1 for multiplicative).
  static Kernel sampled(Flavor flavor, std::vector<double> abscissae, std::vector<Complex> values);
  // Abscissae already in the group coordinate.
  static Kernel sampled_group(Flavor flavor, std::vector<double> nodes, std::vector<Complex> values);

  Flavor flavor() const noexcept { return flavor_; }
  const KernelBody& body() const noexcept { return body_; }
  bool is_closed_form() const noexcept { return std::holds_alternative<ClosedForm>(body_); }
  const std::vector<ExpTerm>* exp_terms() const noexcept;

  // Native-coordinate value; zero outside the support half-line.
  Complex operator()(double t) const;
  // Value at group coordinate u (phi(u), or psi(e^u)); zero for u < 0.
  Complex at_group(double u) const;

  Complex mass() const noexcept { return mass_; }
  double l1_norm() const noexcept { return l1_norm_; }
  std::optional<double> first_moment() const noexcept { return first_moment_; }

  // Smallest U (group coordinate) with the integral of |phi| over [U, inf) <= eps.
  double tail_cutoff(double eps) const;
  // Point after which phi is real, nonnegative and nonincreasing, if known.
  std::optional<double> monotone_tail_start() const;

  // Product of scale factors applied by normalize().
  Complex normalization() const noexcept { return normalization_; }
  const std::string& label() const noexcept { return label_; }

  Kernel scaled(Complex factor) const;
  Kernel with_flavor(Flavor flavor) const;

  friend Kernel normalize(const Kernel& k);

 private:
  Kernel(Flavor flavor, KernelBody body, std::string label);
  void finalize();

  Flavor flavor_ = Flavor::Additive;
  KernelBody body_;
  std::string label_;
  Complex mass_{};
  double l1_norm_ = 0.0;
  std::optional<double> first_moment_;
  Complex normalization_{1.0, 0.0};
};

struct ConvolveOptions {
  double tol = 1e-8;          // interpolation error target per node
  double initial_step = 1.0 / 64.0;
  double min_step = 1.0 / 4096.0;
};

inline constexpr double kMassEpsilon = 1e-10;

Complex evaluate(const Kernel& k, double t);
Kernel normalize(const Kernel& k);
Kernel convolve(const Kernel& a, const Kernel& b, const ConvolveOptions& opts = {});
Kernel power(const Kernel& k, int n, const ConvolveOptions& opts = {});
Kernel to_additive(const Kernel& k);

}  // namespace summability
