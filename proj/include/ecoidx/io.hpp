#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ecoidx/error.hpp"
#include "ecoidx/graph.hpp"

namespace ecoidx::io {

namespace detail {

// Splits one CSV record. Double-quoted fields may contain commas; "" is an
// escaped quote. Returns false on an unterminated quote.
inline bool split_csv(const std::string& line, std::vector<std::string>& fields) {
  fields.clear();
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return !quoted;
}

inline std::string trim(std::string s) {
  auto not_space = [](unsigned char ch) { return ch != ' ' && ch != '\t' && ch != '\r' && ch != '\n'; };
  while (!s.empty() && !not_space(s.back())) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && !not_space(s[b])) ++b;
  return s.substr(b);
}

inline std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

[[noreturn]] inline void fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace detail

// Reads an edge-list CSV with header `source,target[,weight]`.
inline std::vector<EdgeEntry> read_edge_list(std::istream& in) {
  std::vector<EdgeEntry> out;
  std::vector<std::string> fields;
  std::string line;
  std::size_t lineno = 0;
  bool has_weight = false;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!header_seen) {
      if (!detail::split_csv(line, fields)) detail::fail(lineno, "unterminated quote");
      for (auto& f : fields) f = detail::trim(f);
      if (fields.size() < 2 || fields.size() > 3 || fields[0] != "source" || fields[1] != "target" ||
          (fields.size() == 3 && fields[2] != "weight"))
        detail::fail(lineno, "expected header 'source,target[,weight]'");
      has_weight = fields.size() == 3;
      header_seen = true;
      continue;
    }
    if (detail::trim(line).empty()) continue;
    if (!detail::split_csv(line, fields)) detail::fail(lineno, "unterminated quote");
    const std::size_t expected = has_weight ? 3 : 2;
    if (fields.size() != expected && !(has_weight && fields.size() == 2))
      detail::fail(lineno, "expected " + std::to_string(expected) + " fields, got " +
                               std::to_string(fields.size()));
    EdgeEntry e{detail::trim(fields[0]), detail::trim(fields[1]), std::nullopt};
    if (e.source.empty() || e.target.empty()) detail::fail(lineno, "empty node id");
    if (fields.size() == 3) {
      auto w = detail::trim(fields[2]);
      if (!w.empty()) {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
        if (ec != std::errc() || ptr != w.data() + w.size() || !std::isfinite(value) || value <= 0.0)
          detail::fail(lineno, "invalid weight '" + w + "'");
        e.weight = value;
      }
    }
    out.push_back(std::move(e));
  }
  if (!header_seen) detail::fail(1, "missing header");
  return out;
}

inline std::vector<EdgeEntry> read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return read_edge_list(in);
}

// One node id per line; blank lines are ignored.
inline std::vector<std::string> read_node_list(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto id = detail::trim(line);
    if (!id.empty()) out.push_back(std::move(id));
  }
  return out;
}

inline std::vector<std::string> read_node_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return read_node_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << (g.weighted() ? "source,target,weight\n" : "source,target\n");
  for (const auto& e : g.edges()) {
    out << detail::quote_if_needed(g.id(e.u)) << ',' << detail::quote_if_needed(g.id(e.v));
    if (g.weighted()) {
      char buf[32];
      auto res = std::to_chars(buf, buf + sizeof buf, e.weight);
      out << ',' << std::string(buf, res.ptr);
    }
    out << '\n';
  }
}

inline std::string edge_list_string(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

}  // namespace ecoidx::io
