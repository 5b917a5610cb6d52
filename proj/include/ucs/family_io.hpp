#pragma once

#include <charconv>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ucs/family.hpp"

namespace ucs {

/// Malformed family text. line() is 1-based; 0 when the input ended early.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + ", line " + std::to_string(line)), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Text form of a family:
///
///   n=3
///   {}
///   {1,3}
///
/// one member per line in colex order, members ascending inside the braces.
inline std::string format_family(const Family& f) {
  std::string out = "n=" + std::to_string(f.ground()) + "\n";
  f.for_each([&](ElementSet s) {
    out += to_string(s);
    out += '\n';
  });
  return out;
}

namespace detail {

inline std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline int parse_int(std::string_view s, const char* what, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(std::string("malformed ") + what + " '" + std::string(s) + "'", line);
  }
  return value;
}

inline int parse_header(std::string_view text, int line) {
  if (text.substr(0, 2) != "n=") throw ParseError("expected header 'n=<k>'", line);
  const int n = parse_int(text.substr(2), "ground size", line);
  if (n < 0 || n > kMaxGround) {
    throw ParseError("ground size " + std::to_string(n) + " outside [0, " + std::to_string(kMaxGround) + "]", line);
  }
  return n;
}

inline ElementSet parse_set(std::string_view text, int n, int line) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw ParseError("expected a set in braces", line);
  }
  std::string_view body = text.substr(1, text.size() - 2);
  ElementSet s;
  int previous = 0;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto token = body.substr(0, comma);
    const int e = parse_int(token, "element", line);
    if (e < 1 || e > n) throw ParseError("element " + std::to_string(e) + " out of range", line);
    if (e <= previous) throw ParseError("unsorted members", line);
    s = s.with(e);
    previous = e;
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
    if (body.empty()) throw ParseError("trailing comma", line);
  }
  return s;
}

}  // namespace detail

/// Parses one family; the whole input must be a single family.
inline Family parse_family(std::istream& in) {
  std::string raw;
  int line = 0;
  int n = -1;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = detail::strip(raw);
    if (text.empty()) continue;
    n = detail::parse_header(text, line);
    break;
  }
  if (n < 0) throw ParseError("missing header 'n=<k>'", line);
  Family f(n);
  while (std::getline(in, raw)) {
    ++line;
    const auto text = detail::strip(raw);
    if (text.empty()) continue;
    const ElementSet s = detail::parse_set(text, n, line);
    if (f.contains(s)) throw ParseError("duplicate set " + to_string(s), line);
    f.insert(s);
  }
  return f;
}

inline Family parse_family(const std::string& text) {
  std::istringstream in(text);
  return parse_family(in);
}

/// Several families, each starting with its own header line. Blank lines
/// between blocks are ignored.
inline std::vector<Family> parse_families(std::istream& in) {
  std::vector<Family> out;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = detail::strip(raw);
    if (text.empty()) continue;
    if (text.substr(0, 2) == "n=") {
      out.emplace_back(detail::parse_header(text, line));
      continue;
    }
    if (out.empty()) throw ParseError("expected header 'n=<k>'", line);
    const ElementSet s = detail::parse_set(text, out.back().ground(), line);
    if (out.back().contains(s)) throw ParseError("duplicate set " + to_string(s), line);
    out.back().insert(s);
  }
  return out;
}

}  // namespace ucs
