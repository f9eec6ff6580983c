// SPDX-License-Identifier: Apache-2.0
#include "omx/constants.hpp"

#include <cmath>

#include "omx/errors.hpp"

namespace omx {

double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double watt_to_dbm(double watt) {
  if (!(watt > 0.0)) throw DomainError("dBm of a nonpositive power");
  return 10.0 * std::log10(watt / 1e-3);
}

}  // namespace omx
