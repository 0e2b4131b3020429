#include <cmath>

#include <gtest/gtest.h>

#include "oracle_values.hpp"
#include "summability/error.hpp"
#include "summability/kernel.hpp"

using namespace summability;

namespace {
constexpr Complex kI{0.0, 1.0};
}

TEST(Kernel, ExponentialBasics) {
  const Kernel k = Kernel::exponential(2.0);
  EXPECT_EQ(k.flavor(), Flavor::Additive);
  EXPECT_NEAR(std::abs(k.mass() - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(k.l1_norm(), 1.0, 1e-14);
  ASSERT_TRUE(k.first_moment());
  EXPECT_NEAR(*k.first_moment(), 0.5, 1e-14);
  EXPECT_NEAR(k(0.5).real(), 2.0 * std::exp(-1.0), 1e-15);
  EXPECT_EQ(k(-1.0), Complex{});
}

TEST(Kernel, PowerLawEvaluatesNatively) {
  const Kernel k = Kernel::power_law(0.5);
  EXPECT_EQ(k.flavor(), Flavor::Multiplicative);
  EXPECT_NEAR(k(4.0).real(), 0.25, 1e-15);  // r t^{-r}
  EXPECT_NEAR(k.at_group(std::log(4.0)).real(), 0.25, 1e-15);
  EXPECT_EQ(k(0.5), Complex{});
  EXPECT_NEAR(std::abs(k.mass() - 1.0), 0.0, 1e-14);
}

TEST(Kernel, InvalidParameters) {
  EXPECT_THROW(Kernel::exponential(0.0), Error);
  EXPECT_THROW(Kernel::exponential(-1.0), Error);
  EXPECT_THROW(Kernel::power_law(-0.5), Error);
  EXPECT_THROW(Kernel::counterexample_additive(0.0), Error);
  EXPECT_THROW(Kernel::exponential(std::nan("")), Error);
}

TEST(Kernel, NaNEvaluationIsRejected) {
  try {
    Kernel::exponential(1.0)(std::nan(""));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Kernel, CounterexampleMatchesOracle) {
  const Kernel k = Kernel::counterexample_additive(1.0);
  EXPECT_LT(std::abs(k(0.0) - oracle::cex1_value_u0), 1e-14);
  EXPECT_LT(std::abs(k(0.7) - oracle::cex1_value_u0p7), 1e-14);
  EXPECT_LT(std::abs(k(3.0) - oracle::cex1_value_u3), 1e-14);
  EXPECT_LT(std::abs(k.mass() - oracle::cex1_mass), 1e-12);
}

TEST(Kernel, MultiplicativeCounterexampleHasUnitMass) {
  for (double a : {0.5, 1.0, 3.0}) {
    const Kernel k = Kernel::counterexample_multiplicative(a);
    EXPECT_LT(std::abs(k.mass() - 1.0), 1e-12) << a;
    EXPECT_LT(std::abs(k(std::exp(0.7)) - Kernel::counterexample_additive(a)(0.7)), 1e-14);
  }
}

TEST(Kernel, FlavorMismatchOnCatalog) {
  try {
    Kernel::from_catalog(Flavor::Multiplicative, CatalogEntry{CatalogId::Exponential, {1.0}, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FlavorMismatch);
  }
}

TEST(Kernel, NormalizeMixture) {
  const Kernel raw = Kernel::mixture(Flavor::Additive, {{2.0, CatalogEntry{CatalogId::Exponential, {1.0}, {}}},
                                                        {1.0, CatalogEntry{CatalogId::Exponential, {4.0}, {}}}});
  EXPECT_NEAR(raw.mass().real(), 3.0, 1e-12);
  const Kernel k = normalize(raw);
  EXPECT_LT(std::abs(k.mass() - 1.0), 1e-12);
  EXPECT_LT(std::abs(k.normalization() - 1.0 / 3.0), 1e-12);
  EXPECT_NEAR(k(0.0).real(), (2.0 + 4.0) / 3.0, 1e-12);
}

TEST(Kernel, NormalizeUnitMassIsIdentity) {
  const Kernel k = Kernel::exponential(3.0);
  const Kernel n = normalize(k);
  EXPECT_EQ(n.normalization(), Complex(1.0));
  EXPECT_EQ(n(0.3), k(0.3));
}

TEST(Kernel, DegenerateKernelRejected) {
  const Kernel zero = Kernel::mixture(Flavor::Additive, {{1.0, CatalogEntry{CatalogId::Exponential, {1.0}, {}}},
                                                         {-1.0, CatalogEntry{CatalogId::Exponential, {1.0}, {}}}});
  try {
    normalize(zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateKernel);
  }
}

TEST(Kernel, ConvolutionMatchesOracle) {
  const Kernel c = convolve(Kernel::exponential(1.0), Kernel::exponential(2.0));
  EXPECT_LT(std::abs(c(0.25) - oracle::conv_exp1_exp2_u0p25), 1e-8);
  EXPECT_LT(std::abs(c(1.0) - oracle::conv_exp1_exp2_u1), 1e-8);
  EXPECT_LT(std::abs(c(4.0) - oracle::conv_exp1_exp2_u4), 1e-8);
  EXPECT_LT(std::abs(c.mass() - 1.0), 1e-8);
}

TEST(Kernel, ConvolutionWithCounterexample) {
  const Kernel c = convolve(Kernel::counterexample_additive(1.0), Kernel::exponential(1.0));
  EXPECT_LT(std::abs(c(0.25) - oracle::conv_cex1_exp1_u0p25), 1e-8);
  EXPECT_LT(std::abs(c(1.0) - oracle::conv_cex1_exp1_u1), 1e-8);
  EXPECT_LT(std::abs(c(4.0) - oracle::conv_cex1_exp1_u4), 1e-8);
}

TEST(Kernel, PowerMatchesOracle) {
  const Kernel p = power(Kernel::exponential(1.0), 2);
  EXPECT_LT(std::abs(p(0.25) - oracle::pow_exp1_2_u0p25), 1e-8);
  EXPECT_LT(std::abs(p(1.0) - oracle::pow_exp1_2_u1), 1e-8);
  EXPECT_LT(std::abs(p(4.0) - oracle::pow_exp1_2_u4), 1e-8);
  EXPECT_EQ(power(Kernel::exponential(1.0), 1)(0.3), Kernel::exponential(1.0)(0.3));
  EXPECT_THROW(power(Kernel::exponential(1.0), 0), Error);
}

TEST(Kernel, ConvolveRejectsMixedFlavors) {
  try {
    convolve(Kernel::exponential(1.0), Kernel::power_law(1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FlavorMismatch);
  }
}

TEST(Kernel, MultiplicativeConvolutionUsesHaarMeasure) {
  // u e^{-u} in the group coordinate, log(t)/t natively
  const Kernel p = power(Kernel::power_law(1.0), 2);
  EXPECT_EQ(p.flavor(), Flavor::Multiplicative);
  const double t = 3.0;
  EXPECT_NEAR(p(t).real(), std::log(t) / t, 1e-8);
}

TEST(Kernel, ToAdditive) {
  const Kernel a = to_additive(Kernel::power_law(1.0));
  EXPECT_EQ(a.flavor(), Flavor::Additive);
  EXPECT_NEAR(a(2.0).real(), std::exp(-2.0), 1e-15);
  EXPECT_THROW(to_additive(Kernel::exponential(1.0)), Error);
}

TEST(Kernel, SampledKernelInterpolatesAndFitsTail) {
  std::vector<double> t;
  std::vector<Complex> v;
  for (int i = 0; i <= 400; ++i) {
    t.push_back(0.05 * i);
    v.emplace_back(std::exp(-0.05 * i));
  }
  const Kernel k = Kernel::sampled(Flavor::Additive, t, v);
  EXPECT_NEAR(k(1.025).real(), std::exp(-1.025), 5e-4);
  EXPECT_NEAR(k(25.0).real(), std::exp(-25.0), 1e-12);
  EXPECT_NEAR(k.mass().real(), 1.0, 1e-3);
}

TEST(Kernel, SampledValidation) {
  const auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code_of([] { Kernel::sampled(Flavor::Additive, {0.0, 1.0, 0.5}, {1.0, 0.5, 0.2}); }),
            ErrorCode::InvalidKernel);
  EXPECT_EQ(code_of([] { Kernel::sampled(Flavor::Additive, {0.0, 1.0}, {1.0}); }), ErrorCode::InvalidKernel);
  EXPECT_EQ(code_of([] { Kernel::sampled(Flavor::Multiplicative, {0.5, 1.0, 2.0}, {1.0, 0.5, 0.2}); }),
            ErrorCode::InvalidKernel);
  // growing tail: no integrable extrapolation
  std::vector<double> t;
  std::vector<Complex> v;
  for (int i = 0; i < 50; ++i) {
    t.push_back(i);
    v.emplace_back(std::exp(0.1 * i));
  }
  EXPECT_EQ(code_of([&] { Kernel::sampled(Flavor::Additive, t, v); }), ErrorCode::InvalidKernel);
}

TEST(Kernel, TailCutoffBoundsTheTail) {
  const Kernel k = Kernel::exponential(1.0);
  const double U = k.tail_cutoff(1e-9);
  EXPECT_LE(std::exp(-U), 1e-9 * (1 + 1e-9));
  EXPECT_GT(std::exp(-U), 1e-10);
  const auto m = k.monotone_tail_start();
  ASSERT_TRUE(m);
  EXPECT_EQ(*m, 0.0);
}

TEST(Kernel, ScaledFoldsIntoMixture) {
  const Kernel k = Kernel::exponential(1.0).scaled(kI);
  EXPECT_LT(std::abs(k(0.0) - kI), 1e-15);
  EXPECT_LT(std::abs(k.mass() - kI), 1e-14);
}
