// Randomized invariants. Each property draws from a fixed-seed std::mt19937 so
// failures reproduce; the seed and trial index are printed on failure.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "summability/engine.hpp"
#include "summability/spectrum.hpp"
#include "summability/test_function.hpp"

using namespace summability;

namespace {

constexpr std::uint32_t kSeed = 20260611;
constexpr Complex kI{0.0, 1.0};

double uniform(std::mt19937& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Kernel random_exp_mixture(std::mt19937& rng) {
  const int n = std::uniform_int_distribution<int>(1, 3)(rng);
  std::vector<MixtureComponent> cs;
  for (int i = 0; i < n; ++i) {
    cs.push_back({Complex{uniform(rng, 0.1, 1.0), 0.0}, {CatalogId::Exponential, {uniform(rng, 0.3, 4.0)}, {}}});
  }
  return normalize(Kernel::mixture(Flavor::Additive, std::move(cs)));
}

Kernel random_additive(std::mt19937& rng) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return Kernel::exponential(uniform(rng, 0.3, 4.0));
    case 1: return Kernel::counterexample_additive(uniform(rng, 0.3, 3.0));
    default: return random_exp_mixture(rng);
  }
}

Kernel random_sampled(std::mt19937& rng) {
  const double rate = uniform(rng, 0.5, 3.0);
  const double wobble = uniform(rng, 0.0, 0.5);
  std::vector<double> ts;
  std::vector<Complex> vs;
  for (int i = 0; i <= 300; ++i) {
    const double t = i * 0.05;
    ts.push_back(t);
    vs.emplace_back(std::exp(-rate * t) * (1.0 + wobble * std::exp(-t) * std::cos(3.0 * t)), 0.0);
  }
  return Kernel::sampled(Flavor::Additive, ts, vs);
}

}  // namespace

TEST(Properties, NormalizeIsIdempotentAndUnitMass) {
  std::mt19937 rng(kSeed);
  for (int trial = 0; trial < 30; ++trial) {
    const Kernel k = (trial % 2 ? random_sampled(rng) : random_additive(rng)).scaled(Complex{uniform(rng, 0.2, 3.0),
                                                                                             uniform(rng, -1.0, 1.0)});
    const Kernel n1 = normalize(k);
    const Kernel n2 = normalize(n1);
    EXPECT_LT(std::abs(n1.mass() - 1.0), 1e-10) << "trial " << trial;
    for (double u : {0.0, 0.4, 2.0}) EXPECT_LT(std::abs(n1.at_group(u) - n2.at_group(u)), 1e-12) << trial;
    EXPECT_LT(std::abs(n1.at_group(0.7) * k.mass() - k.at_group(0.7)), 1e-10) << trial;
  }
}

TEST(Properties, TransformAtZeroIsMass) {
  std::mt19937 rng(kSeed + 1);
  for (int trial = 0; trial < 30; ++trial) {
    const Kernel k = trial % 3 == 0 ? random_sampled(rng) : random_additive(rng);
    EXPECT_LT(std::abs(fourier_transform(k, 0.0) - k.mass()), 1e-9) << trial;
  }
}

TEST(Properties, ConvolutionMassIsMultiplicative) {
  std::mt19937 rng(kSeed + 2);
  for (int trial = 0; trial < 15; ++trial) {
    const Kernel a = random_additive(rng);
    const Kernel b = trial % 3 == 0 ? random_sampled(rng) : random_additive(rng);
    const Kernel c = convolve(a, b);
    EXPECT_LT(std::abs(c.mass() - a.mass() * b.mass()), 1e-6) << trial;
  }
}

TEST(Properties, ConvolutionCommutesAndAssociates) {
  std::mt19937 rng(kSeed + 3);
  for (int trial = 0; trial < 8; ++trial) {
    const Kernel a = random_additive(rng);
    const Kernel b = random_additive(rng);
    const Kernel c = Kernel::exponential(uniform(rng, 0.5, 3.0));
    const Kernel ab = convolve(a, b);
    const Kernel ba = convolve(b, a);
    const Kernel ab_c = convolve(ab, c);
    const Kernel a_bc = convolve(a, convolve(b, c));
    for (double u : {0.1, 1.0, 3.7}) {
      EXPECT_LT(std::abs(ab(u) - ba(u)), 1e-7) << trial << " u=" << u;
      EXPECT_LT(std::abs(ab_c(u) - a_bc(u)), 1e-6) << trial << " u=" << u;
    }
  }
}

TEST(Properties, ConvolutionTheoremOnRandomPairs) {
  std::mt19937 rng(kSeed + 4);
  for (int trial = 0; trial < 10; ++trial) {
    const Kernel a = random_additive(rng);
    const Kernel b = random_additive(rng);
    const Kernel c = convolve(a, b);
    const double xi = uniform(rng, -10.0, 10.0);
    EXPECT_LT(std::abs(fourier_transform(c, xi) - fourier_transform(a, xi) * fourier_transform(b, xi)), 1e-6)
        << trial << " xi=" << xi;
  }
}

TEST(Properties, ToAdditiveIsHomomorphism) {
  std::mt19937 rng(kSeed + 5);
  for (int trial = 0; trial < 10; ++trial) {
    const Kernel p = Kernel::power_law(uniform(rng, 0.3, 4.0));
    const Kernel q = Kernel::power_law(uniform(rng, 0.3, 4.0));
    const Kernel lhs = to_additive(convolve(p, q));
    const Kernel rhs = convolve(to_additive(p), to_additive(q));
    for (double u : {0.2, 1.5}) EXPECT_LT(std::abs(lhs(u) - rhs(u)), 1e-7) << trial;
    const double x = uniform(rng, -20.0, 20.0);
    EXPECT_LT(std::abs(mellin_transform(p, x) - fourier_transform(to_additive(p), x)), 1e-12) << trial;
    EXPECT_LT(std::abs(to_additive(p).mass() - p.mass()), 1e-12) << trial;
  }
}

TEST(Properties, CounterexampleFamily) {
  std::mt19937 rng(kSeed + 6);
  for (int trial = 0; trial < 40; ++trial) {
    const double alpha = uniform(rng, 0.1, 10.0) * (trial % 2 ? 1.0 : -1.0);
    const Kernel a = Kernel::counterexample_additive(alpha);
    const Kernel m = Kernel::counterexample_multiplicative(alpha);
    EXPECT_LT(std::abs(a.mass() - 1.0), 1e-10) << alpha;
    EXPECT_LT(std::abs(m.mass() - 1.0), 1e-10) << alpha;
    EXPECT_LT(std::abs(fourier_transform(a, alpha)), 1e-10) << alpha;
    EXPECT_LT(std::abs(mellin_transform(m, alpha)), 1e-10) << alpha;
  }
}

TEST(Properties, ForwardOnConstantsAndCharacters) {
  std::mt19937 rng(kSeed + 7);
  for (int trial = 0; trial < 20; ++trial) {
    const double rate = uniform(rng, 0.3, 4.0);
    const double x = uniform(rng, 0.1, 30.0);
    const Complex c{uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0)};
    const Kernel k = Kernel::exponential(rate);
    EXPECT_LT(std::abs(apply_forward(k, functions::constant(Flavor::Additive, c), x) - c * (1.0 - std::exp(-rate * x))),
              1e-8 * (1.0 + std::abs(c)))
        << trial;
    // U e^{i w t} = e^{i w x} (phi^(w) - tail); for a pure exponential the tail is explicit.
    const double w = uniform(rng, 0.2, 5.0);
    const Complex expected = rate / (rate + kI * w) * (std::exp(kI * w * x) - std::exp(-rate * x));
    EXPECT_LT(std::abs(apply_forward(k, functions::additive_character(w), x) - expected), 1e-8) << trial;
  }
}

TEST(Properties, ForwardIsBoundedByL1TimesSup) {
  std::mt19937 rng(kSeed + 8);
  const TestFunction s = functions::sine(Flavor::Additive);
  for (int trial = 0; trial < 20; ++trial) {
    const Kernel k = random_additive(rng);
    const double x = uniform(rng, 0.0, 40.0);
    EXPECT_LE(std::abs(apply_forward(k, s, x)), k.l1_norm() * s.bound + 1e-8) << trial;
  }
}

TEST(Properties, TailCutoffMeetsTolerance) {
  std::mt19937 rng(kSeed + 9);
  for (int trial = 0; trial < 20; ++trial) {
    const Kernel k = trial % 2 ? random_sampled(rng) : random_additive(rng);
    const double eps = std::pow(10.0, uniform(rng, -10.0, -3.0));
    const double u = k.tail_cutoff(eps);
    double tail = 0.0;
    const double h = 1e-3;
    for (double t = u; t < u + 60.0; t += h) tail += h * std::abs(k.at_group(t + h / 2.0));
    EXPECT_LE(tail, eps * 1.01 + 1e-13) << trial;
  }
}

TEST(Properties, DualOfConstantIsConstant) {
  std::mt19937 rng(kSeed + 10);
  for (int trial = 0; trial < 10; ++trial) {
    const Kernel k = Kernel::power_law(uniform(rng, 0.3, 3.0));
    const Complex c{uniform(rng, -2.0, 2.0), 0.0};
    const double x = uniform(rng, 1.0, 100.0);
    EXPECT_LT(std::abs(apply_dual(k, functions::constant(Flavor::Multiplicative, c), x) - c), 1e-8) << trial;
  }
}

TEST(Properties, CesaroMeanOfEmbeddedSequence) {
  std::mt19937 rng(kSeed + 11);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> a(std::uniform_int_distribution<int>(1, 12)(rng));
    for (auto& v : a) v = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    const TestFunction f = embed_sequence(a, "random");
    const auto n = static_cast<std::int64_t>(a.size());
    // M f(x) = (1/x) int_1^x f, so at x = n + 1 it is the partial sum over n + 1.
    Complex expected{};
    for (const auto& v : a) expected += v;
    expected /= static_cast<double>(n + 1);
    EXPECT_LT(std::abs(apply_forward(Kernel::power_law(1.0), f, static_cast<double>(n + 1)) - expected), 1e-8)
        << trial;
  }
}
