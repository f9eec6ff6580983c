// SPDX-License-Identifier: Apache-2.0
#include "omx/bessel.hpp"

#include <algorithm>
#include <cmath>

#include "omx/errors.hpp"

namespace omx::special {

namespace {

constexpr double kBig = 1e250;
constexpr double kSmall = 1e-250;

// Leading two terms of the power series; used where 2k/x would overflow.
std::vector<double> tiny_argument(int max_order, double x) {
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  const double half = 0.5 * x;
  double term = 1.0;
  for (int n = 0; n <= max_order; ++n) {
    if (n > 0) term *= half / n;
    if (term == 0.0) break;
    out[static_cast<std::size_t>(n)] = term * (1.0 - half * half / (n + 1));
  }
  return out;
}

}  // namespace

std::vector<double> bessel_j_orders(int max_order, double x) {
  if (max_order < 0) throw DomainError("negative Bessel order");
  if (!std::isfinite(x)) throw DomainError("non-finite Bessel argument");

  const double ax = std::abs(x);
  std::vector<double> out;
  if (ax == 0.0) {
    out.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  if (ax < 1e-30) {
    out = tiny_argument(max_order, ax);
  } else {
    const double top = std::max<double>(max_order, ax);
    int start = static_cast<int>(top + 20.0 + std::sqrt(160.0 * (top + 1.0)));
    start += start % 2;

    out.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
    const double two_over_x = 2.0 / ax;
    double j_next = 0.0;  // J_{k+1}
    double j_cur = 1e-300;  // J_k, arbitrary seed
    double norm = 0.0;
    for (int k = start; k > 0; --k) {
      const double j_prev = k * two_over_x * j_cur - j_next;
      j_next = j_cur;
      j_cur = j_prev;  // now J_{k-1}
      if (std::abs(j_cur) > kBig) {
        j_cur *= kSmall;
        j_next *= kSmall;
        norm *= kSmall;
        for (auto& v : out) v *= kSmall;
      }
      const int order = k - 1;
      if (order <= max_order) out[static_cast<std::size_t>(order)] = j_cur;
      if (order > 0 && order % 2 == 0) norm += 2.0 * j_cur;
    }
    norm += j_cur;
    for (auto& v : out) v /= norm;
  }

  if (x < 0.0) {
    for (std::size_t n = 1; n < out.size(); n += 2) out[n] = -out[n];
  }
  return out;
}

double bessel_j(int order, double x) {
  const int n = std::abs(order);
  const double v = bessel_j_orders(n, x)[static_cast<std::size_t>(n)];
  return (order < 0 && (n % 2 == 1)) ? -v : v;
}

int sideband_cutoff(double h) {
  if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("modulation index must be finite and >= 0");
  return static_cast<int>(std::ceil(2.0 * h)) + 20;
}

}  // namespace omx::special
