#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "antitree/digraph.hpp"
#include "antitree/reduced.hpp"
#include "antitree/tree.hpp"

namespace antitree {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

// Yields (line number, tokens) for every non-blank, non-comment line.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++number_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      tokens.clear();
      std::istringstream words(line);
      for (std::string w; words >> w;) tokens.push_back(w);
      return true;
    }
    return false;
  }
  int line() const { return number_; }

 private:
  std::istream& in_;
  int number_ = 0;
};

inline int to_int(const std::string& token, int line) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + token + "'");
  }
}

}  // namespace detail

/// `digraph <n>` header, then one `<u> <v>` arc per line; `#` starts a comment.
inline Digraph parse_digraph(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::string> tok;
  if (!reader.next(tok)) throw ParseError(reader.line(), "missing 'digraph <n>' header");
  if (tok.size() != 2 || tok[0] != "digraph") throw ParseError(reader.line(), "expected 'digraph <n>'");
  const int n = detail::to_int(tok[1], reader.line());
  if (n < 0) throw ParseError(reader.line(), "negative vertex count");
  std::vector<Arc> arcs;
  while (reader.next(tok)) {
    if (tok.size() != 2) throw ParseError(reader.line(), "expected '<u> <v>'");
    const int u = detail::to_int(tok[0], reader.line());
    const int v = detail::to_int(tok[1], reader.line());
    if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(reader.line(), "vertex out of range");
    if (u == v) throw ParseError(reader.line(), "self-loop");
    arcs.emplace_back(u, v);
  }
  return Digraph(n, arcs);
}

inline void write_digraph(std::ostream& out, const Digraph& d) {
  out << "digraph " << d.order() << '\n';
  for (const auto& [u, v] : d.arcs()) out << u << ' ' << v << '\n';
}

/// `tree <n> <root>` header, then `<parent> <child> <dir>` per non-root vertex,
/// dir `+` for parent→child and `-` for child→parent.
inline RootedOrientedTree parse_tree(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::string> tok;
  if (!reader.next(tok)) throw ParseError(reader.line(), "missing 'tree <n> <root>' header");
  if (tok.size() != 3 || tok[0] != "tree") throw ParseError(reader.line(), "expected 'tree <n> <root>'");
  const int n = detail::to_int(tok[1], reader.line());
  const int root = detail::to_int(tok[2], reader.line());
  if (n < 1) throw ParseError(reader.line(), "a tree needs at least one vertex");
  if (root < 0 || root >= n) throw ParseError(reader.line(), "root out of range");
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -2);
  std::vector<bool> down(static_cast<std::size_t>(n), false);
  parent[static_cast<std::size_t>(root)] = -1;
  int edges = 0;
  while (reader.next(tok)) {
    if (tok.size() != 3 || (tok[2] != "+" && tok[2] != "-"))
      throw ParseError(reader.line(), "expected '<parent> <child> +|-'");
    const int p = detail::to_int(tok[0], reader.line());
    const int c = detail::to_int(tok[1], reader.line());
    if (p < 0 || p >= n || c < 0 || c >= n || p == c) throw ParseError(reader.line(), "vertex out of range");
    if (parent[static_cast<std::size_t>(c)] != -2) throw ParseError(reader.line(), "vertex " + tok[1] + " already has a parent");
    parent[static_cast<std::size_t>(c)] = p;
    down[static_cast<std::size_t>(c)] = tok[2] == "+";
    ++edges;
  }
  if (edges != n - 1) throw ParseError(reader.line(), "expected " + std::to_string(n - 1) + " edge lines");
  try {
    return RootedOrientedTree(std::move(parent), std::move(down));
  } catch (const std::invalid_argument& e) {
    throw ParseError(reader.line(), e.what());
  }
}

inline void write_tree(std::ostream& out, const RootedOrientedTree& t) {
  out << "tree " << t.order() << ' ' << t.root() << '\n';
  for (Vertex v = 0; v < t.order(); ++v)
    if (t.parent(v) != -1) out << t.parent(v) << ' ' << v << ' ' << (t.arc_toward_child(v) ? '+' : '-') << '\n';
}

/// `reduced <r> <s>` header, cluster arcs `<i> <j>`, and `uprofile <i> <count>`
/// / `uprofile-in <i> <count>` lines for the apex's arcs into and from cluster i.
inline ReducedDigraph parse_reduced(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::string> tok;
  if (!reader.next(tok)) throw ParseError(reader.line(), "missing 'reduced <r> <s>' header");
  if (tok.size() != 3 || tok[0] != "reduced") throw ParseError(reader.line(), "expected 'reduced <r> <s>'");
  const int r = detail::to_int(tok[1], reader.line());
  const int s = detail::to_int(tok[2], reader.line());
  if (r < 0) throw ParseError(reader.line(), "negative cluster count");
  if (s < 1) throw ParseError(reader.line(), "cluster size must be at least 1");
  std::vector<Arc> arcs;
  std::vector<int> u_out(static_cast<std::size_t>(r), 0), u_in(static_cast<std::size_t>(r), 0);
  while (reader.next(tok)) {
    if (tok[0] == "uprofile" || tok[0] == "uprofile-in") {
      if (tok.size() != 3) throw ParseError(reader.line(), "expected '" + tok[0] + " <i> <count>'");
      const int i = detail::to_int(tok[1], reader.line());
      const int count = detail::to_int(tok[2], reader.line());
      if (i < 0 || i >= r) throw ParseError(reader.line(), "cluster out of range");
      if (count < 0 || count > s) throw ParseError(reader.line(), "profile count must lie in [0, s]");
      (tok[0] == "uprofile" ? u_out : u_in)[static_cast<std::size_t>(i)] = count;
      continue;
    }
    if (tok.size() != 2) throw ParseError(reader.line(), "expected '<i> <j>' or a uprofile line");
    const int i = detail::to_int(tok[0], reader.line());
    const int j = detail::to_int(tok[1], reader.line());
    if (i < 0 || i >= r || j < 0 || j >= r) throw ParseError(reader.line(), "cluster out of range");
    if (i == j) throw ParseError(reader.line(), "self-loop");
    arcs.emplace_back(i, j);
  }
  return ReducedDigraph{Digraph(r, arcs), s, std::move(u_out), std::move(u_in)};
}

inline void write_reduced(std::ostream& out, const ReducedDigraph& rd) {
  out << "reduced " << rd.clusters.order() << ' ' << rd.cluster_size << '\n';
  for (const auto& [i, j] : rd.clusters.arcs()) out << i << ' ' << j << '\n';
  for (std::size_t i = 0; i < rd.apex_out.size(); ++i)
    if (rd.apex_out[i] > 0) out << "uprofile " << i << ' ' << rd.apex_out[i] << '\n';
  for (std::size_t i = 0; i < rd.apex_in.size(); ++i)
    if (rd.apex_in[i] > 0) out << "uprofile-in " << i << ' ' << rd.apex_in[i] << '\n';
}

template <typename Parser>
auto parse_file(const std::string& path, Parser parser) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  return parser(in);
}

/// 64-bit FNV-1a digest of a byte string, as 16 hex digits.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

}  // namespace antitree
