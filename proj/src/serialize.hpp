// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "network.hpp"

namespace spinmem {

// Weight-matrix CSV: one metadata line "n=..,m=..,zero_diagonal=0|1", then
// n rows of n comma-separated integers.
std::string weights_to_csv(const WeightMatrix& weights);
WeightMatrix weights_from_csv(std::string_view text,
                              const std::string& origin = "<memory>");

// Per-synapse programming dump: metadata line, header, then one row per grid
// cell. Disconnected cells leave sign/level/fraction empty.
std::string network_to_csv(const HardwareNetwork& net);

void write_text_file(const std::string& path, std::string_view content);
std::string read_text_file(const std::string& path);

}  // namespace spinmem
