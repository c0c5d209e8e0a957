// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "network.hpp"

namespace spinmem {

// Patterns plus their 2-D shape. All patterns in a set share one shape;
// values are stored flattened row-major.
struct PatternSet {
  std::vector<Pattern> patterns;
  int rows = 0;
  int cols = 0;

  int length() const { return rows * cols; }
};

// Text grid format: one row per line, '#' or '1' = on (+1), '.' or '0' =
// off (-1); a blank line separates patterns. Parse errors carry the
// offending line number.
PatternSet parse_patterns(std::string_view text,
                          const std::string& origin = "<memory>");
PatternSet load_patterns(const std::string& path);
std::string serialize_patterns(const PatternSet& set);

// IDX image files (big-endian, magic 0x00000803), binarized at the given
// threshold: pixel >= threshold maps to +1.
PatternSet parse_idx_images(std::span<const unsigned char> bytes,
                            int binarize_threshold,
                            const std::string& origin = "<memory>");
PatternSet load_idx_images(const std::string& path, int binarize_threshold);
std::string encode_idx_images(const PatternSet& set, unsigned char on_byte,
                              unsigned char off_byte);

// Keep a subset of the patterns, by index, in the given order.
PatternSet select_patterns(const PatternSet& set,
                           std::span<const int> indices);

std::string render_grid(const Pattern& p, int rows, int cols);

}  // namespace spinmem
