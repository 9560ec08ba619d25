#pragma once

// Hypergraph data model: canonical n-uniform edge families over vertices
// 0..v-1, the text file format, and the basic incidence queries.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hyclique/errors.hpp"

namespace hyclique {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;  // ascending, duplicate-free

inline constexpr std::size_t kMaxVertices = std::size_t{1} << 20;
inline constexpr std::size_t kMaxEdges = std::size_t{1} << 22;

/// A subset of 0..universe-1 stored as a dense bitset.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  VertexSet(std::size_t universe, const std::vector<Vertex>& members) : VertexSet(universe) {
    for (Vertex x : members) insert(x);
  }

  std::size_t universe() const { return universe_; }

  void insert(Vertex x) {
    check(x);
    words_[x / 64] |= std::uint64_t{1} << (x % 64);
  }
  void erase(Vertex x) {
    check(x);
    words_[x / 64] &= ~(std::uint64_t{1} << (x % 64));
  }
  bool contains(Vertex x) const {
    return x < universe_ && ((words_[x / 64] >> (x % 64)) & 1u) != 0;
  }

  std::size_t size() const {
    std::size_t count = 0;
    for (auto w : words_) count += static_cast<std::size_t>(std::popcount(w));
    return count;
  }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        out.push_back(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
    return out;
  }

  bool operator==(const VertexSet&) const = default;

 private:
  void check(Vertex x) const {
    if (x >= universe_) {
      throw InputError("vertex " + std::to_string(x) + " outside 0.." + std::to_string(universe_) + "-1");
    }
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::size_t intersection_size(const Edge& a, const Edge& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

inline bool intersects(const Edge& a, const Edge& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

/// An n-uniform hypergraph without multiple edges. Immutable once built; the
/// edge family is kept sorted lexicographically.
class Hypergraph {
 public:
  Hypergraph(std::size_t uniformity, std::size_t vertex_count, std::vector<Edge> edges)
      : n_(uniformity), v_(vertex_count) {
    if (n_ == 0) throw InputError("uniformity must be positive");
    if (v_ > kMaxVertices) throw InputError("vertex count exceeds 2^20");
    if (edges.size() > kMaxEdges) throw InputError("edge count exceeds 2^22");
    for (auto& e : edges) {
      std::sort(e.begin(), e.end());
      if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
        throw InputError("edge repeats a vertex");
      }
      if (e.size() != n_) {
        throw InputError("edge has " + std::to_string(e.size()) + " vertices, expected " + std::to_string(n_));
      }
      if (!e.empty() && e.back() >= v_) {
        throw InputError("vertex " + std::to_string(e.back()) + " out of range for " + std::to_string(v_) +
                         " vertices");
      }
    }
    std::sort(edges.begin(), edges.end());
    auto last = std::unique(edges.begin(), edges.end());
    duplicates_ = static_cast<std::size_t>(edges.end() - last);
    edges.erase(last, edges.end());
    edges_ = std::move(edges);

    degrees_.assign(v_, 0);
    for (const auto& e : edges_) {
      for (Vertex x : e) ++degrees_[x];
    }
  }

  std::size_t uniformity() const { return n_; }
  std::size_t vertex_count() const { return v_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }
  std::size_t degree(Vertex x) const { return degrees_.at(x); }
  const std::vector<std::size_t>& degrees() const { return degrees_; }

  /// Number of duplicate edges merged during construction.
  std::size_t duplicates_removed() const { return duplicates_; }

  /// Vertices lying on at least one edge.
  std::size_t covered_vertex_count() const {
    return static_cast<std::size_t>(std::count_if(degrees_.begin(), degrees_.end(), [](auto d) { return d > 0; }));
  }

  VertexSet edge_set(std::size_t i) const { return VertexSet(v_, edges_.at(i)); }

  bool operator==(const Hypergraph& other) const {
    return n_ == other.n_ && v_ == other.v_ && edges_ == other.edges_;
  }

 private:
  std::size_t n_;
  std::size_t v_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> degrees_;
  std::size_t duplicates_ = 0;
};

// ---------------------------------------------------------------------------
// File format
//
//   uniform <n> vertices <v>
//   <n ascending vertex indices>      one edge per line
//
// '#' starts a comment; blank lines are ignored; LF or CRLF line endings.

struct ParseResult {
  Hypergraph graph;
  std::size_t duplicate_warnings = 0;
};

namespace detail {

inline std::string strip_line(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

inline std::uint64_t parse_count(const std::string& token, const std::string& what, std::size_t line_no) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos || token.size() > 12) {
    throw InputError("line " + std::to_string(line_no) + ": invalid " + what + " '" + token + "'");
  }
  return std::stoull(token);
}

}  // namespace detail

inline ParseResult parse_hypergraph(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::vector<Edge> edges;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = detail::strip_line(raw);
    if (line.empty()) continue;
    std::istringstream tokens(line);
    if (!header) {
      std::string kw1, n_tok, kw2, v_tok, extra;
      tokens >> kw1 >> n_tok >> kw2 >> v_tok;
      if (kw1 != "uniform" || kw2 != "vertices" || n_tok.empty() || v_tok.empty() || (tokens >> extra)) {
        throw InputError("line " + std::to_string(line_no) + ": malformed header, expected 'uniform <n> vertices <v>'");
      }
      auto n = detail::parse_count(n_tok, "uniformity", line_no);
      auto v = detail::parse_count(v_tok, "vertex count", line_no);
      if (n == 0) throw InputError("line " + std::to_string(line_no) + ": uniformity must be positive");
      if (v > kMaxVertices) throw InputError("line " + std::to_string(line_no) + ": vertex count exceeds 2^20");
      header = std::make_pair(static_cast<std::size_t>(n), static_cast<std::size_t>(v));
      continue;
    }
    Edge e;
    std::string tok;
    while (tokens >> tok) {
      auto x = detail::parse_count(tok, "vertex", line_no);
      if (x >= header->second) {
        throw InputError("line " + std::to_string(line_no) + ": vertex " + tok + " out of range for " +
                         std::to_string(header->second) + " vertices");
      }
      e.push_back(static_cast<Vertex>(x));
    }
    std::sort(e.begin(), e.end());
    if (e.size() != header->first || std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw InputError("line " + std::to_string(line_no) + ": edge must have exactly " +
                       std::to_string(header->first) + " distinct vertices");
    }
    edges.push_back(std::move(e));
    if (edges.size() > kMaxEdges) throw InputError("edge count exceeds 2^22");
  }
  if (!header) throw InputError("missing header line 'uniform <n> vertices <v>'");
  if (edges.empty()) throw InputError("empty edge list");

  Hypergraph graph(header->first, header->second, std::move(edges));
  std::size_t dups = graph.duplicates_removed();
  return ParseResult{std::move(graph), dups};
}

inline ParseResult parse_hypergraph(const std::string& text) {
  std::istringstream in(text);
  return parse_hypergraph(in);
}

inline std::string render(const Hypergraph& h) {
  std::ostringstream out;
  out << "uniform " << h.uniformity() << " vertices " << h.vertex_count() << "\n";
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Queries

struct CliqueVerdict {
  bool is_clique = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // disjoint edge pair
};

/// Checks pairwise intersection; the witness is the lexicographically first
/// disjoint pair.
inline CliqueVerdict is_clique(const Hypergraph& h) {
  const auto& edges = h.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (!intersects(edges[i], edges[j])) return CliqueVerdict{false, std::make_pair(i, j)};
    }
  }
  return {};
}

struct EdgeStats {
  std::vector<std::size_t> containing;  // E(W): edges B with W a subset of B
  std::vector<std::size_t> meeting;     // E_W: edges B meeting W
  std::map<Vertex, std::size_t> degree_map;
};

inline EdgeStats edge_stats(const Hypergraph& h, const VertexSet& w) {
  if (w.universe() > h.vertex_count()) {
    for (Vertex x : w.members()) {
      if (x >= h.vertex_count()) throw InputError("vertex " + std::to_string(x) + " outside the hypergraph");
    }
  }
  const std::size_t w_size = w.size();
  EdgeStats stats;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    std::size_t inside = 0;
    for (Vertex x : h.edge(i)) inside += w.contains(x) ? 1 : 0;
    if (inside == w_size) stats.containing.push_back(i);
    if (inside > 0) stats.meeting.push_back(i);
  }
  for (Vertex x : w.members()) stats.degree_map[x] = h.degree(x);
  return stats;
}

/// |E(W)| without materializing index lists.
inline std::size_t count_containing(const Hypergraph& h, const std::vector<Vertex>& w) {
  std::size_t count = 0;
  for (const auto& e : h.edges()) {
    if (std::includes(e.begin(), e.end(), w.begin(), w.end())) ++count;
  }
  return count;
}

}  // namespace hyclique
