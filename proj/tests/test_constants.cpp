#include <gtest/gtest.h>

#include <cmath>

#include "ucs/constants.hpp"

using ucs::BigRational;

namespace {

/// Positive root of a p^2 + b p + c in floating point.
double float_root(double a, double b, double c) { return (-b + std::sqrt(b * b - 4 * a * c)) / (2 * a); }

double to_double(const BigRational& x) { return static_cast<double>(x); }

}  // namespace

TEST(Constants, ThresholdEquation) {
  const auto q = ucs::threshold_quadratic(3, 12, BigRational(2, 3));
  // Scaled by 3: 9p^2 + 36p - 1.
  EXPECT_EQ(q.a * 3, 9);
  EXPECT_EQ(q.b * 3, 36);
  EXPECT_EQ(q.c * 3, -1);
  EXPECT_LT(q.compare(BigRational(1, 37)), 0);
  EXPECT_LT(q.compare(0), 0);
  EXPECT_GT(q.compare(BigRational(1, 36)), 0);
}

TEST(Constants, C2FromC1) {
  EXPECT_EQ(ucs::c2_from_c1(BigRational(1, 37)), BigRational(2, 327));
  EXPECT_EQ(ucs::c2_from_c1(0), 0);
}

TEST(Constants, FirstRoundMatchesQuadraticFormula) {
  ucs::ConstantChain chain;
  const auto d = ucs::derive_constants(chain);
  ASSERT_EQ(d.rounds.size(), 1u);
  EXPECT_LE(BigRational(1, 37), d.c1_lower);
  EXPECT_LE(d.c1_lower, d.c1_upper);
  EXPECT_LE(d.c1_upper - d.c1_lower, BigRational(1, ucs::BigInt(1) << 64));
  EXPECT_NEAR(to_double(d.c1_lower), float_root(9, 36, -1), 1e-12);
  EXPECT_LT(d.threshold.compare(d.c1_lower), 0);
  EXPECT_GE(d.threshold.compare(d.c1_upper), 0);
}

TEST(Constants, FeedbackWithEighthConstant) {
  ucs::ConstantChain chain;
  chain.constant = 8;
  chain.feedback = true;
  const auto d = ucs::derive_constants(chain);
  EXPECT_GE(d.c1_lower, BigRational(1, 24));
  EXPECT_GE(d.c2_lower, BigRational(1, 104));
  EXPECT_GT(d.rounds.size(), 1u);
  // Each round lowers alpha and raises c1.
  for (std::size_t k = 1; k < d.rounds.size(); ++k) {
    EXPECT_LT(d.rounds[k].alpha, d.rounds[k - 1].alpha);
    EXPECT_GE(d.rounds[k].c1_lower, d.rounds[k - 1].c1_lower);
    EXPECT_EQ(d.rounds[k].alpha, BigRational(2, 3) - d.rounds[k - 1].c2_lower);
  }
  // Floating-point fixpoint of the same iteration.
  double alpha = 2.0 / 3.0;
  double c1 = 0;
  for (int k = 0; k < 200; ++k) {
    const double beta = 1 - alpha;
    c1 = float_root(9 * beta, 8, -beta);
    alpha = 2.0 / 3.0 - 2 * c1 / (9 - 6 * c1);
  }
  EXPECT_NEAR(to_double(d.c1_lower), c1, 1e-9);
}

TEST(Constants, SplitAdmissibility) {
  ucs::ConstantChain chain;
  chain.split = 2;
  EXPECT_FALSE(ucs::derive_constants(chain).split_admissible);
  const auto best = ucs::optimize_split(chain, {BigRational(2), BigRational(3), BigRational(4)});
  EXPECT_TRUE(best.split_admissible);
  // A smaller split raises the root, so t = 3 wins among admissible ones.
  chain.split = 3;
  EXPECT_EQ(best.c1_lower, ucs::derive_constants(chain).c1_lower);
  EXPECT_THROW(ucs::optimize_split(chain, {BigRational(1)}), ucs::DomainError);
}

TEST(Constants, Validation) {
  ucs::ConstantChain chain;
  chain.constant = 10;
  EXPECT_THROW(ucs::derive_constants(chain), ucs::DomainError);
  chain = {};
  chain.alpha = BigRational(3, 4);
  EXPECT_THROW(ucs::derive_constants(chain), ucs::DomainError);
  chain = {};
  chain.split = 0;
  EXPECT_THROW(ucs::derive_constants(chain), ucs::DomainError);
}

TEST(Constants, Formatting) {
  EXPECT_EQ(ucs::to_decimal(BigRational(1, 37), 6), "0.027027");
  EXPECT_EQ(ucs::to_decimal(BigRational(-7, 2), 2), "-3.50");
  EXPECT_EQ(ucs::to_fraction(BigRational(2, 327)), "2/327");
  EXPECT_EQ(ucs::to_fraction(BigRational(4)), "4");
}
