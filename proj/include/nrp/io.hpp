#pragma once

#include <cctype>
#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nrp/board.hpp"
#include "nrp/error.hpp"

namespace nrp {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < s.size()) {
    while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    const std::size_t start = k;
    while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    if (k > start) out.push_back(s.substr(start, k - start));
  }
  return out;
}

inline int parse_int(std::string_view tok, const char* what) {
  int v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(std::string("malformed ") + what + ": '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace detail

// Line 1 "n m b", then n lines of m space-separated values, trailing newline.
inline std::string serialize_board(const Board& board) {
  const auto& s = board.spec();
  std::string out = std::to_string(s.n) + " " + std::to_string(s.m) + " " + std::to_string(s.b) + "\n";
  for (int i = 1; i <= s.n; ++i) {
    for (int j = 1; j <= s.m; ++j) {
      if (j > 1) out += ' ';
      out += std::to_string(board.at({i, j}));
    }
    out += '\n';
  }
  return out;
}

inline Board parse_board(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t k = 0;
  while (k < text.size()) {
    std::size_t e = text.find('\n', k);
    if (e == std::string_view::npos) e = text.size();
    std::string_view line = text.substr(k, e - k);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!detail::split_ws(line).empty()) lines.push_back(line);
    k = e + 1;
  }
  if (lines.empty()) throw ParseError("empty board file");
  const auto header = detail::split_ws(lines[0]);
  if (header.size() != 3) throw ParseError("malformed header: expected 'n m b'");
  const PuzzleSpec spec{detail::parse_int(header[0], "header"), detail::parse_int(header[1], "header"),
                        detail::parse_int(header[2], "header")};
  try {
    spec.validate();
  } catch (const InvalidSpec& e) {
    throw ParseError(std::string("malformed header: ") + e.what());
  }
  if (lines.size() != static_cast<std::size_t>(spec.n) + 1) {
    throw ParseError("expected " + std::to_string(spec.n) + " rows, got " + std::to_string(lines.size() - 1));
  }
  std::vector<int> values;
  values.reserve(static_cast<std::size_t>(spec.cells()));
  for (int i = 1; i <= spec.n; ++i) {
    const auto row = detail::split_ws(lines[i]);
    if (row.size() != static_cast<std::size_t>(spec.m)) {
      throw ParseError("row " + std::to_string(i) + ": expected " + std::to_string(spec.m) + " values, got " +
                       std::to_string(row.size()));
    }
    for (auto tok : row) values.push_back(detail::parse_int(tok, "value"));
  }
  try {
    return Board(spec, std::move(values));
  } catch (const InvalidBoard& e) {
    throw ParseError(e.what());
  }
}

inline std::string serialize_move(const Move& mv) {
  return "(" + std::to_string(mv.anchor.i) + "," + std::to_string(mv.anchor.j) + "):" +
         std::to_string(mv.quarters);
}

// "(r,c):k". Checks syntax and k only; fitting a board is checked on apply.
inline Move parse_move(std::string_view tok) {
  const auto fail = [&] { return ParseError("malformed move token: '" + std::string(tok) + "'"); };
  if (tok.size() < 7 || tok.front() != '(') throw fail();
  const auto comma = tok.find(',');
  const auto close = tok.find(')');
  if (comma == std::string_view::npos || close == std::string_view::npos || close < comma ||
      close + 2 >= tok.size() || tok[close + 1] != ':') {
    throw fail();
  }
  Move mv;
  try {
    mv.anchor.i = detail::parse_int(tok.substr(1, comma - 1), "move row");
    mv.anchor.j = detail::parse_int(tok.substr(comma + 1, close - comma - 1), "move column");
    mv.quarters = detail::parse_int(tok.substr(close + 2), "move quarters");
  } catch (const ParseError&) {
    throw fail();
  }
  if (mv.quarters < 1 || mv.quarters > 3) {
    throw ParseError("move quarters must be 1, 2 or 3: '" + std::string(tok) + "'");
  }
  if (mv.anchor.i < 1 || mv.anchor.j < 1) throw ParseError("move anchor out of range: '" + std::string(tok) + "'");
  return mv;
}

inline std::string serialize_moves(const MoveSequence& seq) {
  std::string out;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (k) out += ' ';
    out += serialize_move(seq[k]);
  }
  return out;
}

inline MoveSequence parse_moves(std::string_view text) {
  MoveSequence seq;
  const auto toks = detail::split_ws(text);
  for (std::size_t k = 0; k < toks.size(); ++k) {
    try {
      seq.push_back(parse_move(toks[k]));
    } catch (const ParseError& e) {
      throw ParseError("token #" + std::to_string(k) + ": " + e.what());
    }
  }
  return seq;
}

}  // namespace nrp
