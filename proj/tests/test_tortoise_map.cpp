#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <tortoise/tortoise_map.hpp>

using namespace tortoise;

namespace {
ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Parse;
}
}  // namespace

TEST(Sigma, Values) {
  EXPECT_EQ(sigma(0), -1.0);
  EXPECT_EQ(sigma(1), 0.5);
  EXPECT_EQ(sigma(2), 0.125);
  EXPECT_EQ(sigma(3), 0.0625);
}

TEST(Sigma, MatchesLogGamma) {
  for (int eta = 1; eta <= 64; ++eta) {
    double direct = std::exp(std::lgamma(eta - 0.5) - std::log(2 * std::sqrt(std::numbers::pi)) - std::lgamma(eta + 1.0));
    EXPECT_LT(std::abs(sigma(eta) - direct) / direct, 1e-12) << eta;
  }
}

TEST(Hypergeometric, Series) {
  EXPECT_EQ(hyp2f1_series(1, 1.5, 3, 0), 1.0);
  // 2F1(1,1;2;z) = -ln(1-z)/z
  for (double z : {-0.9, -0.3, 0.2, 0.5, 0.9}) EXPECT_NEAR(hyp2f1_series(1, 1, 2, z), -std::log1p(-z) / z, 1e-14);
  EXPECT_EQ(kind_of([] { hyp2f1_series(1, 1, 2, 0.95); }), ErrorKind::HypergeometricDomain);
}

TEST(BuildMap, PaperTermLists) {
  const double k = 1.3;
  {
    const double a = 2.0;
    TortoiseMap m = build_map(PotentialSpec{{a, -1}}, k);
    ASSERT_EQ(m.terms.size(), 2u);
    EXPECT_EQ(std::get<PowerOfR>(m.terms[0]), (PowerOfR{1, 1}));
    EXPECT_DOUBLE_EQ(std::get<LogOfR>(m.terms[1]).coefficient, -a / (2 * k * k));
  }
  {
    TortoiseMap m = build_map(PotentialSpec{{0.4, -1.5}}, k);
    ASSERT_EQ(m.terms.size(), 1u);
    EXPECT_EQ(std::get<PowerOfR>(m.terms[0]), (PowerOfR{1, 1}));
  }
  {
    const double xi = 0.7;
    TortoiseMap m = build_map(PotentialSpec{{xi, -0.5}}, k);
    ASSERT_EQ(m.terms.size(), 3u);
    EXPECT_EQ(std::get<PowerOfR>(m.terms[0]), (PowerOfR{1, 1}));
    EXPECT_DOUBLE_EQ(std::get<PowerOfR>(m.terms[1]).coefficient, -xi / (k * k));
    EXPECT_DOUBLE_EQ(std::get<PowerOfR>(m.terms[1]).exponent, 0.5);
    EXPECT_DOUBLE_EQ(std::get<LogOfR>(m.terms[2]).coefficient, -xi * xi / (8 * std::pow(k, 4)));
  }
  {
    const double w = 1.7;
    TortoiseMap m = build_map(PotentialSpec{{w * w, 2}}, k);
    ASSERT_EQ(m.terms.size(), 2u);
    EXPECT_DOUBLE_EQ(std::get<PowerOfR>(m.terms[0]).coefficient, w / (2 * k));
    EXPECT_DOUBLE_EQ(std::get<PowerOfR>(m.terms[0]).exponent, 2);
    EXPECT_DOUBLE_EQ(std::get<LogOfR>(m.terms[1]).coefficient, -k / (2 * w) + 1 / (2 * k));
  }
  {
    const double z = 2.5;
    TortoiseMap m = build_map(PotentialSpec{{z, 6}}, k);
    ASSERT_EQ(m.terms.size(), 2u);
    EXPECT_DOUBLE_EQ(std::get<PowerOfR>(m.terms[0]).coefficient, std::sqrt(z) / (4 * k));
    EXPECT_DOUBLE_EQ(std::get<PowerOfR>(m.terms[0]).exponent, 4);
    EXPECT_DOUBLE_EQ(std::get<LogOfR>(m.terms[1]).coefficient, 6 / (4 * k));
  }
}

TEST(EvalMap, Examples) {
  EXPECT_NEAR(eval_map(build_map(PotentialSpec{{2, -1}}, 1), 10), 10 - std::log(10.0), 1e-13);
  EXPECT_NEAR(eval_map(build_map(PotentialSpec{{2, -1}}, 1), 10), 7.697415, 1e-6);
  EXPECT_NEAR(eval_map(build_map(PotentialSpec{{1, -0.5}}, 1), 100), 89.424354, 1e-6);
  EXPECT_NEAR(eval_map(build_map(PotentialSpec{{1, 2}}, 1), 5), 12.5, 1e-13);
}

TEST(EvalMap, FiniteZeroIsBitExact) {
  TortoiseMap m = build_map(PotentialSpec{{3, -1.5}, {-1, -4}}, 0.8);
  for (double r = 20; r < 1e7; r *= 3.1) EXPECT_EQ(eval_map(m, r), r);
  EXPECT_EQ(map_derivative(m, 50), 1.0);
}

TEST(EvalMap, BelowFloorIsOutOfDomain) {
  TortoiseMap m = build_map(PotentialSpec{{2, -1}}, 1);
  EXPECT_NEAR(m.validity_floor, 2.02, 1e-9);
  EXPECT_EQ(kind_of([&] { eval_map(m, 1.5); }), ErrorKind::OutOfDomain);
}

TEST(EvalMap, MonotoneAndDerivativesConsistent) {
  std::vector<Potential> pots = {PotentialSpec{{2, -1}},
                                 PotentialSpec{{1, -0.5}, {0.3, -1.2}},
                                 PotentialSpec{{-0.8, -0.25}},
                                 PotentialSpec{{1, 2}},
                                 PotentialSpec{{1, 2.0 / 3.0}},
                                 PotentialSpec{{1, 6}},
                                 PotentialSpec{{1, 2}, {0.5, 1}},
                                 PotentialSpec{{0.3, 0}, {0.5, -1}},
                                 PotentialSpec{{3, 0}},
                                 LogPotential{LogPotential::Kind::InverseLog, 0.5},
                                 LogPotential{LogPotential::Kind::Log, 1.0}};
  for (const auto& v : pots) {
    TortoiseMap m = build_map(v, 1.0);
    double prev = -INFINITY;
    for (double r = 1.5 * m.validity_floor + 0.1; r < 300; r *= 1.3) {
      double x = eval_map(m, r);
      EXPECT_GT(x, prev);
      prev = x;
      double h = 1e-5 * r;
      double fd = (eval_map(m, r + h) - eval_map(m, r - h)) / (2 * h);
      EXPECT_NEAR(fd, map_derivative(m, r), 1e-6 * std::abs(map_derivative(m, r))) << r;
      double fd2 = (map_derivative(m, r + h) - map_derivative(m, r - h)) / (2 * h);
      EXPECT_NEAR(fd2, map_second_derivative(m, r), 1e-5 * std::abs(map_second_derivative(m, r)) + 1e-9);
      EXPECT_GT(map_derivative(m, r), 0.0);
    }
  }
}

TEST(EvalMap, MarginalConstant) {
  TortoiseMap m = build_map(PotentialSpec{{0.36, 0}}, 1.0);
  EXPECT_EQ(m.kind, MapKind::VanishingMarginal);
  EXPECT_NEAR(eval_map(m, 30) - eval_map(m, 10), 0.8 * 20, 1e-11);
  EXPECT_EQ(kind_of([] { build_map(PotentialSpec{{1, 0}}, 1.0); }), ErrorKind::TurningPointInRange);
  TortoiseMap up = build_map(PotentialSpec{{4, 0}}, 1.0);
  EXPECT_EQ(up.kind, MapKind::RisingMarginal);
  EXPECT_NEAR(eval_map(up, 30) - eval_map(up, 10), std::sqrt(3.0) * 20, 1e-11);
}

TEST(EvalMap, MultiTermRisingAgreesWithSingleTermLimit) {
  // A tiny subleading term should barely move the quadrature path away from
  // the closed form.
  TortoiseMap closed = build_map(PotentialSpec{{1, 2}}, 1.5);
  TortoiseMap quad = build_map(PotentialSpec{{1, 2}, {1e-12, 1}}, 1.5);
  EXPECT_EQ(quad.kind, MapKind::RisingSeries);
  double a = eval_map(closed, 40) - eval_map(closed, 5), b = eval_map(quad, 40) - eval_map(quad, 5);
  EXPECT_NEAR(a, b, 1e-9);
}

TEST(EvalMap, RisingNeedsPositiveCoefficient) {
  EXPECT_EQ(kind_of([] { build_map(PotentialSpec{{-1, 2}}, 1.0); }), ErrorKind::InvalidPotential);
}

TEST(Hypergeometric, IdentityWithClosedForm) {
  EXPECT_NEAR(eval_hypergeometric(PotentialSpec{}, 1.0, 0, 10, 3), 7, 1e-13);
  const PotentialSpec coul{{2, -1}};
  EXPECT_NEAR(eval_hypergeometric(coul, 1, 1, 100, 50), 50 - std::log(2.0), 1e-9);
  for (const PotentialSpec& s : {coul, PotentialSpec{{1, -0.5}}, PotentialSpec{{-1.3, -0.7}, {0.4, -1.1}}}) {
    TortoiseMap m = build_map(s, 1.0);
    for (double r : {60.0, 200.0, 500.0})
      EXPECT_NEAR(eval_map(m, r) - eval_map(m, 50), eval_hypergeometric(s, 1, m.order, r, 50), 1e-8);
  }
  // Rising side.
  const PotentialSpec up{{1, 2.0 / 3.0}};
  TortoiseMap m = build_map(up, 0.5);
  EXPECT_NEAR(eval_map(m, 300) - eval_map(m, 40), eval_hypergeometric(up, 0.5, m.order, 300, 40), 1e-8);
  EXPECT_EQ(kind_of([&] { eval_hypergeometric(coul, 1, 1, 100, 2.1); }), ErrorKind::HypergeometricDomain);
}

TEST(Remainder, Examples) {
  const PotentialSpec coul{{2, -1}};
  EXPECT_NEAR(remainder_potential(coul, 1, 1, 10), 0.01, 1e-15);
  PotentialSpec s{{0.7, -0.3}, {2, -2}};
  EXPECT_DOUBLE_EQ(remainder_potential(s, 1.3, 0, 3.0), evaluate(s, 3.0));
  EXPECT_NEAR(remainder_potential(coul, 1, 1, 100) / remainder_potential(coul, 1, 1, 10), 0.01, 1e-14);
}

TEST(Remainder, DecaysFasterThanCoulomb) {
  for (const PotentialSpec& s : {PotentialSpec{{2, -1}}, PotentialSpec{{1, -0.5}}, PotentialSpec{{1, -1.5}}}) {
    int N = classify(s).n_index.n;
    double prev = INFINITY;
    for (int j = 2; j <= 6; ++j) {
      double r = std::pow(10.0, j), v = r * std::abs(remainder_potential(s, 1, N, r));
      EXPECT_LT(v, prev);
      prev = v;
    }
  }
}
