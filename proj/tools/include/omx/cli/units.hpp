// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

namespace omx::cli {

enum class Dimension { frequency, power, length, impedance, voltage, energy, psd };

const char* to_string(Dimension d) noexcept;

/// Parses "<number> <unit>" into SI (Hz, W, m, ohm, V, J, W/Hz). The unit is
/// required and must belong to the requested dimension. Power accepts dBm;
/// PSD accepts dBm/Hz. Throws std::invalid_argument with a readable reason.
double parse_quantity(std::string_view text, Dimension dim);

}  // namespace omx::cli
