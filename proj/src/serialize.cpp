// SPDX-License-Identifier: Apache-2.0
#include "serialize.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace spinmem {

namespace {

int64_t parse_int(std::string_view token, const std::string& origin, int line) {
  int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    fail(ErrorCode::parse, origin + ":" + std::to_string(line) +
                               ": expected integer, got '" +
                               std::string(token) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (true) {
    const size_t next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
}

}  // namespace

std::string weights_to_csv(const WeightMatrix& weights) {
  std::string out = "n=" + std::to_string(weights.n) +
                    ",m=" + std::to_string(weights.m) +
                    ",zero_diagonal=" + (weights.zero_diagonal ? "1" : "0") +
                    "\n";
  for (int i = 0; i < weights.n; ++i) {
    for (int j = 0; j < weights.n; ++j) {
      if (j > 0) out += ',';
      out += std::to_string(weights.at(i, j));
    }
    out += '\n';
  }
  return out;
}

WeightMatrix weights_from_csv(std::string_view text,
                              const std::string& origin) {
  std::vector<std::string_view> lines;
  {
    size_t pos = 0;
    while (pos < text.size()) {
      size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line = text.substr(pos, eol - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) lines.push_back(line);
      pos = eol + 1;
    }
  }
  if (lines.empty()) fail(ErrorCode::parse, origin + ": empty weight file");

  WeightMatrix weights;
  {
    const std::vector<std::string_view> fields = split(lines[0], ',');
    if (fields.size() != 3 || !fields[0].starts_with("n=") ||
        !fields[1].starts_with("m=") || !fields[2].starts_with("zero_diagonal="))
      fail(ErrorCode::parse,
           origin + ":1: expected header 'n=..,m=..,zero_diagonal=..'");
    weights.n = static_cast<int>(parse_int(fields[0].substr(2), origin, 1));
    weights.m = static_cast<int>(parse_int(fields[1].substr(2), origin, 1));
    weights.zero_diagonal = parse_int(fields[2].substr(14), origin, 1) != 0;
  }
  if (weights.n < 1 || weights.m < 1)
    fail(ErrorCode::parse, origin + ":1: n and m must be positive");
  if (static_cast<int>(lines.size()) - 1 != weights.n)
    fail(ErrorCode::parse, origin + ": expected " + std::to_string(weights.n) +
                               " weight rows, found " +
                               std::to_string(lines.size() - 1));

  weights.w.assign(static_cast<size_t>(weights.n) * weights.n, 0);
  for (int i = 0; i < weights.n; ++i) {
    const int line_no = i + 2;
    const std::vector<std::string_view> fields = split(lines[i + 1], ',');
    if (static_cast<int>(fields.size()) != weights.n)
      fail(ErrorCode::parse, origin + ":" + std::to_string(line_no) +
                                 ": expected " + std::to_string(weights.n) +
                                 " columns, found " +
                                 std::to_string(fields.size()));
    for (int j = 0; j < weights.n; ++j) {
      const int64_t v = parse_int(fields[j], origin, line_no);
      if (std::abs(v) > weights.m)
        fail(ErrorCode::parse, origin + ":" + std::to_string(line_no) +
                                   ": weight magnitude exceeds m");
      weights.at(i, j) = static_cast<int32_t>(v);
    }
  }
  for (int i = 0; i < weights.n; ++i)
    for (int j = i + 1; j < weights.n; ++j)
      if (weights.at(i, j) != weights.at(j, i))
        fail(ErrorCode::parse, origin + ": weight matrix is not symmetric");
  return weights;
}

std::string network_to_csv(const HardwareNetwork& net) {
  std::string out = "n=" + std::to_string(net.n()) + "\n";
  out += "i,j,connected,sign,level,fraction\n";
  char buf[32];
  for (int i = 0; i < net.n(); ++i)
    for (int j = 0; j < net.n(); ++j) {
      out += std::to_string(i);
      out += ',';
      out += std::to_string(j);
      if (net.connected(i, j)) {
        const WeightLevel w = net.level_at(i, j);
        out += ",1,";
        out += w.sign == WeightSign::negative ? '-' : '+';
        out += ',';
        out += std::to_string(w.level);
        out += ',';
        std::snprintf(buf, sizeof buf, "%.10g", net.fraction(w.level));
        out += buf;
      } else {
        out += ",0,,,";
      }
      out += '\n';
    }
  return out;
}

void write_text_file(const std::string& path, std::string_view content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) fail(ErrorCode::io, "cannot create directory " +
                                    p.parent_path().string() + ": " +
                                    ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(ErrorCode::io, "write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace spinmem
