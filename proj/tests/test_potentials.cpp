#include <cmath>

#include <gtest/gtest.h>

#include <tortoise/potentials.hpp>

using namespace tortoise;

TEST(Potentials, Evaluate) {
  EXPECT_DOUBLE_EQ(evaluate(PotentialSpec{{2, -1}}, 10), 0.2);
  EXPECT_DOUBLE_EQ(evaluate(PotentialSpec{{1, 2}}, 3), 9);
  EXPECT_DOUBLE_EQ(evaluate(PotentialSpec{{1, -1}, {1, -1.5}}, 4), 0.375);
  EXPECT_EQ(evaluate(PotentialSpec{}, 3), 0.0);
}

TEST(Potentials, Derivative) {
  EXPECT_DOUBLE_EQ(derivative(PotentialSpec{{2, -1}}, 2), -0.5);
  EXPECT_DOUBLE_EQ(derivative(PotentialSpec{{1, 2}}, 3), 6);
  EXPECT_DOUBLE_EQ(derivative(PotentialSpec{{1, -0.5}}, 4), -0.0625);
}

TEST(Potentials, DerivativeMatchesFiniteDifferences) {
  PotentialSpec s{{2, -1}, {-0.7, -0.5}, {0.3, 1.7}};
  for (double r = 0.1; r <= 100; r *= 1.7) {
    double h = 1e-5 * r;
    double fd = (evaluate(s, r + h) - evaluate(s, r - h)) / (2 * h);
    EXPECT_LT(std::abs(fd - derivative(s, r)) / std::abs(derivative(s, r)), 1e-6) << r;
    double fd2 = (derivative(s, r + h) - derivative(s, r - h)) / (2 * h);
    EXPECT_LT(std::abs(fd2 - second_derivative(s, r)) / std::abs(second_derivative(s, r)), 1e-6) << r;
  }
}

TEST(Potentials, Overflow) {
  EXPECT_THROW(evaluate(PotentialSpec{{1, 400}}, 1e10), Error);
  try {
    evaluate(PotentialSpec{{1, 400}}, 1e10);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EvaluationOverflow);
  }
  EXPECT_THROW(evaluate(PotentialSpec{{1, 1}}, -1), Error);
}

TEST(Potentials, ConstructionMergesAndSorts) {
  PotentialSpec s{{1, 2}, {3, -1}, {2, 2}, {0.5, -1}, {4, 0.5}, {-4, 0.5}};
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.terms()[0], (PowerTerm{3.5, -1}));
  EXPECT_EQ(s.terms()[1], (PowerTerm{3, 2}));
  EXPECT_THROW(PotentialSpec({{NAN, 1}}), Error);
  EXPECT_THROW(PotentialSpec({{1, INFINITY}}), Error);
}

TEST(Potentials, LeadingBehavior) {
  EXPECT_EQ(*leading_behavior(PotentialSpec{{3, -2}, {1, -1}}), (PowerTerm{1, -1}));
  EXPECT_EQ(*leading_behavior(PotentialSpec{{1, 2}, {5, 0.5}}), (PowerTerm{1, 2}));
  EXPECT_EQ(*leading_behavior(PotentialSpec{{7, 0}}), (PowerTerm{7, 0}));
  EXPECT_FALSE(leading_behavior(PotentialSpec{}).has_value());
}

TEST(Potentials, ClassifyPaperExamples) {
  auto is = [](const PotentialSpec& s, Regime r, int n) {
    PotentialClass c = classify(s);
    return c.regime == r && c.n_index == NIndex::finite(n);
  };
  EXPECT_TRUE(is({{2, -1}}, Regime::Vanishing, 1));
  EXPECT_TRUE(is({{1, -0.5}}, Regime::Vanishing, 2));
  EXPECT_TRUE(is({{1, -1.5}}, Regime::Vanishing, 0));
  EXPECT_TRUE(is({{1, 2}}, Regime::Rising, 1));
  EXPECT_TRUE(is({{1, 2.0 / 3.0}}, Regime::Rising, 2));
  EXPECT_TRUE(is({{1, 6}}, Regime::Rising, 0));
  EXPECT_TRUE(is({}, Regime::Vanishing, 0));
  PotentialClass c = classify(PotentialSpec{{0.2, 0}});
  EXPECT_EQ(c.regime, Regime::Constant);
  EXPECT_TRUE(c.n_index.marginal);
}

TEST(Potentials, ClassifyBorderlinesAreInclusive) {
  for (int N = 1; N <= 12; ++N) {
    EXPECT_EQ(classify(PotentialSpec{{1, -1.0 / N}}).n_index.n, N) << N;
    EXPECT_EQ(classify(PotentialSpec{{1, 1.0 / (N - 0.5)}}).n_index.n, N) << N;
  }
  EXPECT_EQ(classify(PotentialSpec{{1, 2.0001}}).n_index.n, 0);
  EXPECT_EQ(classify(PotentialSpec{{1, -1.0001}}).n_index.n, 0);
}

TEST(Potentials, ClassifySweepSatisfiesBounds) {
  for (int i = 1; i <= 99; ++i) {
    double q = 0.01 * i;
    int N = classify(PotentialSpec{{1, -q}}).n_index.n;
    EXPECT_LT(1.0 / (N + 1), q + 1e-12) << q;
    EXPECT_LE(q, 1.0 / N + 1e-12) << q;
  }
  for (int i = 1; i <= 200; ++i) {
    double p = 0.01 * i;
    int N = classify(PotentialSpec{{1, p}}).n_index.n;
    EXPECT_LT(1.0 / (N + 0.5), p + 1e-12) << p;
    EXPECT_LE(p, 1.0 / (N - 0.5) + 1e-12) << p;
  }
}

TEST(Potentials, ClassifyScaleAndSubleadingInvariance) {
  for (double p : {-1.7, -1.0, -0.4, 0.3, 2.0 / 3.0, 2.0, 5.0}) {
    PotentialClass c = classify(PotentialSpec{{1, p}});
    for (double s : {-3.0, 0.01, 7.0}) {
      EXPECT_EQ(classify(PotentialSpec{{s, p}}).regime, c.regime);
      EXPECT_EQ(classify(PotentialSpec{{s, p}}).n_index, c.n_index);
    }
    PotentialClass d = classify(PotentialSpec{{1, p}, {5, p - 0.3}, {-2, p - 3}});
    EXPECT_EQ(d.regime, c.regime);
    EXPECT_EQ(d.n_index, c.n_index);
  }
}

TEST(Potentials, LogBuiltins) {
  LogPotential il{LogPotential::Kind::InverseLog, 2.0}, lg{LogPotential::Kind::Log, 0.5};
  EXPECT_DOUBLE_EQ(evaluate(il, std::exp(2.0)), 1.0);
  EXPECT_DOUBLE_EQ(evaluate(lg, std::exp(2.0)), 1.0);
  EXPECT_THROW(evaluate(il, 0.5), Error);
  EXPECT_EQ(classify(il).regime, Regime::Vanishing);
  EXPECT_TRUE(classify(il).n_index.marginal);
  EXPECT_EQ(classify(lg).regime, Regime::Rising);
  EXPECT_TRUE(classify(lg).n_index.marginal);
  for (double r : {1.5, 3.0, 40.0}) {
    double h = 1e-6 * r;
    EXPECT_NEAR(derivative(il, r), (evaluate(il, r + h) - evaluate(il, r - h)) / (2 * h), 1e-6 * std::abs(derivative(il, r)));
    EXPECT_NEAR(second_derivative(il, r), (derivative(il, r + h) - derivative(il, r - h)) / (2 * h),
                1e-5 * std::abs(second_derivative(il, r)));
  }
}
