// SPDX-License-Identifier: Apache-2.0
#include "patterns.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace spinmem {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

uint32_t read_be32(std::span<const unsigned char> bytes, size_t offset) {
  return (static_cast<uint32_t>(bytes[offset]) << 24) |
         (static_cast<uint32_t>(bytes[offset + 1]) << 16) |
         (static_cast<uint32_t>(bytes[offset + 2]) << 8) |
         static_cast<uint32_t>(bytes[offset + 3]);
}

void write_be32(std::string& out, uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>(v & 0xFF));
}

constexpr uint32_t kIdxImagesMagic = 0x00000803u;

}  // namespace

PatternSet parse_patterns(std::string_view text, const std::string& origin) {
  PatternSet set;
  std::vector<int8_t> current;
  int current_rows = 0;
  int line_number = 0;
  int first_pattern_line = 0;

  auto flush = [&](int at_line) {
    if (current.empty()) return;
    if (set.rows == 0) {
      set.rows = current_rows;
    } else if (current_rows != set.rows) {
      fail(ErrorCode::parse,
           origin + ":" + std::to_string(at_line) + ": pattern starting at line " +
               std::to_string(first_pattern_line) + " has " +
               std::to_string(current_rows) + " rows, expected " +
               std::to_string(set.rows));
    }
    set.patterns.push_back(Pattern{std::move(current)});
    current.clear();
    current_rows = 0;
  };

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_number;

    if (line.empty()) {
      flush(line_number);
    } else {
      if (current.empty()) first_pattern_line = line_number;
      if (set.cols == 0) {
        set.cols = static_cast<int>(line.size());
      } else if (static_cast<int>(line.size()) != set.cols) {
        fail(ErrorCode::parse,
             origin + ":" + std::to_string(line_number) + ": row width " +
                 std::to_string(line.size()) + " differs from " +
                 std::to_string(set.cols));
      }
      for (size_t c = 0; c < line.size(); ++c) {
        const char ch = line[c];
        if (ch == '#' || ch == '1') {
          current.push_back(1);
        } else if (ch == '.' || ch == '0') {
          current.push_back(-1);
        } else {
          fail(ErrorCode::parse,
               origin + ":" + std::to_string(line_number) + ": column " +
                   std::to_string(c + 1) + ": illegal character '" +
                   std::string(1, ch) + "'");
        }
      }
      ++current_rows;
    }
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  flush(line_number + 1);

  if (set.patterns.empty())
    fail(ErrorCode::parse, origin + ": no patterns");
  return set;
}

PatternSet load_patterns(const std::string& path) {
  return parse_patterns(read_file(path), path);
}

std::string serialize_patterns(const PatternSet& set) {
  std::string out;
  for (size_t k = 0; k < set.patterns.size(); ++k) {
    if (k > 0) out += '\n';
    const Pattern& p = set.patterns[k];
    for (int r = 0; r < set.rows; ++r) {
      for (int c = 0; c < set.cols; ++c)
        out += p.values[static_cast<size_t>(r) * set.cols + c] > 0 ? '#' : '.';
      out += '\n';
    }
  }
  return out;
}

PatternSet parse_idx_images(std::span<const unsigned char> bytes,
                            int binarize_threshold, const std::string& origin) {
  if (binarize_threshold < 0 || binarize_threshold > 255)
    fail(ErrorCode::invalid_argument, "binarize threshold must be in [0,255]");
  if (bytes.size() < 4)
    fail(ErrorCode::format, origin + ": truncated header at offset 0");
  const uint32_t magic = read_be32(bytes, 0);
  if (magic != kIdxImagesMagic) {
    char buf[64];
    std::snprintf(buf, sizeof buf,
                  ": bad magic 0x%08x at offset 0 (expected 0x%08x)", magic,
                  kIdxImagesMagic);
    fail(ErrorCode::format, origin + buf);
  }
  if (bytes.size() < 16)
    fail(ErrorCode::format, origin + ": truncated dimension header at offset 4");
  const uint32_t count = read_be32(bytes, 4);
  const uint32_t rows = read_be32(bytes, 8);
  const uint32_t cols = read_be32(bytes, 12);
  const size_t expected = static_cast<size_t>(count) * rows * cols;
  if (bytes.size() - 16 != expected)
    fail(ErrorCode::format,
         origin + ": truncated payload: expected " + std::to_string(expected) +
             " data bytes at offset 16, found " +
             std::to_string(bytes.size() - 16));

  PatternSet set;
  set.rows = static_cast<int>(rows);
  set.cols = static_cast<int>(cols);
  set.patterns.reserve(count);
  size_t offset = 16;
  for (uint32_t k = 0; k < count; ++k) {
    Pattern p;
    p.values.resize(static_cast<size_t>(rows) * cols);
    for (size_t i = 0; i < p.values.size(); ++i, ++offset)
      p.values[i] = bytes[offset] >= binarize_threshold ? 1 : -1;
    set.patterns.push_back(std::move(p));
  }
  return set;
}

PatternSet load_idx_images(const std::string& path, int binarize_threshold) {
  const std::string data = read_file(path);
  return parse_idx_images(
      std::span<const unsigned char>(
          reinterpret_cast<const unsigned char*>(data.data()), data.size()),
      binarize_threshold, path);
}

std::string encode_idx_images(const PatternSet& set, unsigned char on_byte,
                              unsigned char off_byte) {
  std::string out;
  write_be32(out, kIdxImagesMagic);
  write_be32(out, static_cast<uint32_t>(set.patterns.size()));
  write_be32(out, static_cast<uint32_t>(set.rows));
  write_be32(out, static_cast<uint32_t>(set.cols));
  for (const Pattern& p : set.patterns)
    for (int8_t v : p.values)
      out.push_back(static_cast<char>(v > 0 ? on_byte : off_byte));
  return out;
}

PatternSet select_patterns(const PatternSet& set, std::span<const int> indices) {
  PatternSet out;
  out.rows = set.rows;
  out.cols = set.cols;
  for (int idx : indices) {
    if (idx < 0 || idx >= static_cast<int>(set.patterns.size()))
      fail(ErrorCode::config,
           "pattern index " + std::to_string(idx) + " out of range (have " +
               std::to_string(set.patterns.size()) + " patterns)");
    out.patterns.push_back(set.patterns[idx]);
  }
  if (out.patterns.empty())
    fail(ErrorCode::config, "pattern selection is empty");
  return out;
}

std::string render_grid(const Pattern& p, int rows, int cols) {
  std::string out;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c)
      out += p.values[static_cast<size_t>(r) * cols + c] > 0 ? '#' : '.';
    out += '\n';
  }
  return out;
}

}  // namespace spinmem
