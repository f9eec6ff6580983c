// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "omx/bessel.hpp"

using omx::special::bessel_j;
using omx::special::bessel_j_orders;
using omx::special::sideband_cutoff;

TEST(Bessel, MatchesStdOracle) {
  for (double x : {1e-8, 0.1, 0.5, 1.0, 1.747, 2.0, 3.518, 4.812, 7.0, 9.624, 15.0, 20.0, 40.0}) {
    const auto j = bessel_j_orders(60, x);
    for (int n = 0; n <= 60; ++n) {
      const double ref = std::cyl_bessel_j(static_cast<double>(n), x);
      EXPECT_NEAR(j[static_cast<std::size_t>(n)], ref, 1e-13 + 1e-12 * std::abs(ref))
          << "n=" << n << " x=" << x;
    }
  }
}

TEST(Bessel, ZeroArgument) {
  const auto j = bessel_j_orders(5, 0.0);
  EXPECT_EQ(j[0], 1.0);
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(j[static_cast<std::size_t>(n)], 0.0);
}

TEST(Bessel, NegativeOrderAndArgument) {
  for (int n = 0; n < 8; ++n) {
    const double v = bessel_j(n, 2.3);
    EXPECT_DOUBLE_EQ(bessel_j(-n, 2.3), (n % 2 ? -1.0 : 1.0) * v);
    EXPECT_DOUBLE_EQ(bessel_j(n, -2.3), (n % 2 ? -1.0 : 1.0) * v);
  }
}

TEST(Bessel, NormalizationWithinCutoff) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> hs = {0.5, 1.0, 3.518, 8.0, 10.0};
  for (int i = 0; i < 50; ++i) hs.push_back(u(rng));
  for (double h : hs) {
    const int n = sideband_cutoff(h);
    const auto j = bessel_j_orders(n, h);
    double s = j[0] * j[0];
    for (int k = 1; k <= n; ++k) s += 2.0 * j[static_cast<std::size_t>(k)] * j[static_cast<std::size_t>(k)];
    EXPECT_NEAR(s, 1.0, 1e-9) << h;
  }
}

TEST(Bessel, Cutoff) {
  EXPECT_EQ(sideband_cutoff(0.0), 20);
  EXPECT_EQ(sideband_cutoff(1.747), 24);
  EXPECT_EQ(sideband_cutoff(3.5), 27);
}
