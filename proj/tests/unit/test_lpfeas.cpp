#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "jrc/lpfeas.hpp"

namespace jrc {
namespace {

bool satisfies(const LinearSystem& sys, const std::vector<double>& x, double tol) {
  for (std::size_t i = 0; i < sys.rhs.size(); ++i) {
    double lhs = 0.0, scale = 1.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
      lhs += sys.coefficients[i][d] * x[d];
      scale = std::max(scale, std::abs(sys.coefficients[i][d]));
    }
    if (lhs > sys.rhs[i] + tol * scale) return false;
  }
  return true;
}

// Fourier-Motzkin elimination with every right-hand side shifted by `slack`.
bool fourier_motzkin(std::vector<std::vector<double>> rows, std::vector<double> rhs, int dimension, double slack) {
  for (auto& b : rhs) b += slack;
  for (int var = dimension - 1; var >= 0; --var) {
    std::vector<std::vector<double>> next_rows;
    std::vector<double> next_rhs;
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double c = rows[i][static_cast<std::size_t>(var)];
      if (c > 1e-12) {
        pos.push_back(i);
      } else if (c < -1e-12) {
        neg.push_back(i);
      } else {
        next_rows.push_back(rows[i]);
        next_rhs.push_back(rhs[i]);
      }
    }
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        const double cp = rows[p][static_cast<std::size_t>(var)];
        const double cn = -rows[n][static_cast<std::size_t>(var)];
        std::vector<double> r(rows[p].size());
        for (std::size_t d = 0; d < r.size(); ++d) r[d] = cn * rows[p][d] + cp * rows[n][d];
        r[static_cast<std::size_t>(var)] = 0.0;
        next_rows.push_back(r);
        next_rhs.push_back(cn * rhs[p] + cp * rhs[n]);
      }
    }
    rows = std::move(next_rows);
    rhs = std::move(next_rhs);
  }
  for (double b : rhs) {
    if (b < 0.0) return false;
  }
  return true;
}

TEST(LinearizeWindow, OneDimensionalPair) {
  // |x - 2|^2 <= |x|^2  <=>  x >= 1.
  const auto sys = linearize_window({{0.0}, {2.0}});
  ASSERT_EQ(sys.rhs.size(), 1u);
  EXPECT_EQ(sys.coefficients[0], (std::vector<double>{-4.0}));
  EXPECT_EQ(sys.rhs[0], -4.0);
}

TEST(LinearizeWindow, TwoDimensionalPair) {
  const auto sys = linearize_window({{0.0, 0.0}, {1.0, 1.0}});
  EXPECT_EQ(sys.dimension, 2);
  EXPECT_EQ(sys.coefficients[0], (std::vector<double>{-2.0, -2.0}));
  EXPECT_EQ(sys.rhs[0], -2.0);
}

TEST(LinearizeWindow, IdenticalPointsGiveZeroRows) {
  const auto sys = linearize_window({{1.5, -2.0}, {1.5, -2.0}, {1.5, -2.0}});
  for (std::size_t i = 0; i < sys.rhs.size(); ++i) {
    EXPECT_EQ(sys.coefficients[i], (std::vector<double>{0.0, 0.0}));
    EXPECT_EQ(sys.rhs[i], 0.0);
  }
}

TEST(LinearizeWindow, RejectsShortOrRaggedWindows) {
  EXPECT_THROW(linearize_window({{1.0}}), std::invalid_argument);
  EXPECT_THROW(linearize_window({}), std::invalid_argument);
  EXPECT_THROW(linearize_window({{1.0}, {1.0, 2.0}}), std::invalid_argument);
}

TEST(IsFeasible, OvershootAndReturnIsInfeasible) {
  // Needs x >= 1 and x <= 0.5.
  EXPECT_FALSE(is_feasible(linearize_window({{0.0}, {2.0}, {-1.0}})).feasible);
}

TEST(IsFeasible, SingleStepIsFeasible) {
  const auto r = is_feasible(linearize_window({{0.0}, {1.0}}));
  ASSERT_TRUE(r.feasible);
  EXPECT_GE(r.witness[0], 0.5 - 1e-9);
}

TEST(IsFeasible, ReturnToStartTouchesMidpoint) {
  const auto r = is_feasible(linearize_window({{0.0}, {2.0}, {0.0}}));
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.witness[0], 1.0, 1e-9);
}

TEST(IsFeasible, DampedOscillationIsFeasible) {
  EXPECT_TRUE(is_feasible(linearize_window({{0.0}, {2.0}, {1.0}, {1.5}})).feasible);
}

TEST(IsFeasible, RepeatedPointIsDropped) {
  EXPECT_TRUE(is_feasible(linearize_window({{3.0, 1.0}, {3.0, 1.0}})).feasible);
  LinearSystem bad;
  bad.dimension = 1;
  bad.coefficients = {{0.0}};
  bad.rhs = {-1.0};
  EXPECT_FALSE(is_feasible(bad).feasible);
}

TEST(IsFeasible, HandSystems) {
  LinearSystem triangle;
  triangle.dimension = 2;
  triangle.coefficients = {{1.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  triangle.rhs = {1.0, -1.0, -1.0};
  EXPECT_FALSE(is_feasible(triangle).feasible);
  triangle.rhs = {2.0, -1.0, -1.0};
  const auto r = is_feasible(triangle);
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.witness[0], 1.0, 1e-9);
  EXPECT_NEAR(r.witness[1], 1.0, 1e-9);
}

TEST(IsFeasible, AgreesWithFourierMotzkinOnRandomWindows) {
  std::mt19937_64 rng(4242);
  int feasible = 0, infeasible = 0, ambiguous = 0;
  for (int k = 0; k < 200; ++k) {
    const int dim = 1 + k % 3;
    const int length = std::uniform_int_distribution<int>(2, 9)(rng);
    std::uniform_int_distribution<int> coord(-6, 6);
    std::vector<std::vector<double>> window;
    for (int i = 0; i < length; ++i) {
      std::vector<double> w(static_cast<std::size_t>(dim));
      for (auto& x : w) x = coord(rng);
      window.push_back(w);
    }
    const auto sys = linearize_window(window);
    const bool loose = fourier_motzkin(sys.coefficients, sys.rhs, dim, 1e-6);
    const bool tight = fourier_motzkin(sys.coefficients, sys.rhs, dim, -1e-6);
    const auto r = is_feasible(sys);
    if (tight) {
      EXPECT_TRUE(r.feasible) << "window " << k;
      ++feasible;
    } else if (!loose) {
      EXPECT_FALSE(r.feasible) << "window " << k;
      ++infeasible;
    } else {
      ++ambiguous;
    }
    if (r.feasible) {
      ASSERT_EQ(r.witness.size(), static_cast<std::size_t>(dim));
      EXPECT_TRUE(satisfies(sys, r.witness, 1e-7)) << "window " << k;
    } else {
      EXPECT_TRUE(r.witness.empty());
    }
  }
  EXPECT_GT(feasible, 20);
  EXPECT_GT(infeasible, 20);
  EXPECT_LT(ambiguous, 40);
}

TEST(IsFeasible, WitnessSatisfiesLargeSystems) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.0, 10.0);
  for (int k = 0; k < 30; ++k) {
    std::vector<std::vector<double>> window;
    std::vector<double> w(40, 0.0);
    for (int i = 0; i < 30; ++i) {
      for (auto& x : w) x += g(rng) + 0.5;
      window.push_back(w);
    }
    const auto sys = linearize_window(window);
    const auto r = is_feasible(sys);
    if (r.feasible) EXPECT_TRUE(satisfies(sys, r.witness, 1e-6));
  }
}

}  // namespace
}  // namespace jrc
