// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace omx::special {

/// J_0(x) ... J_max_order(x), computed together by Miller's downward
/// recurrence normalised with J_0 + 2 sum J_2k = 1. Valid for any real x;
/// absolute error is at the 1e-14 level for |x| up to a few hundred.
std::vector<double> bessel_j_orders(int max_order, double x);

/// Single integer-order value, negative orders via J_{-n} = (-1)^n J_n.
double bessel_j(int order, double x);

/// Number of sidebands kept on each side of the carrier for a phase
/// modulation of index h: ceil(2h) + 20.
int sideband_cutoff(double h);

}  // namespace omx::special
