#pragma once

// Exact chromatic number (up to a cap) and exact covering number.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "hyclique/core.hpp"
#include "hyclique/errors.hpp"

namespace hyclique {

struct ColoringResult {
  std::optional<std::size_t> chi;  // empty: exceeds the cap
  std::vector<int> coloring;       // vertex -> color, empty when chi is empty
};

struct CoverResult {
  std::size_t tau = 0;
  VertexSet transversal;
  bool degenerate = false;  // empty edge family
};

/// True when no edge is monochromatic.
inline bool is_proper_coloring(const Hypergraph& h, const std::vector<int>& coloring) {
  if (coloring.size() != h.vertex_count()) return false;
  for (const auto& e : h.edges()) {
    bool mixed = false;
    for (Vertex x : e) {
      if (coloring[x] != coloring[e.front()]) {
        mixed = true;
        break;
      }
    }
    if (!mixed) return false;
  }
  return true;
}

inline std::size_t distinct_colors(const std::vector<int>& coloring) {
  return std::set<int>(coloring.begin(), coloring.end()).size();
}

inline bool is_transversal(const Hypergraph& h, const VertexSet& f) {
  return std::all_of(h.edges().begin(), h.edges().end(), [&](const Edge& e) {
    return std::any_of(e.begin(), e.end(), [&](Vertex x) { return f.contains(x); });
  });
}

namespace detail {

class ColoringSearch {
 public:
  ColoringSearch(const Hypergraph& h, std::size_t colors) : h_(h), k_(colors) {
    for (Vertex x = 0; x < h.vertex_count(); ++x) {
      if (h.degree(x) > 0) order_.push_back(x);
    }
    std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) { return h.degree(a) > h.degree(b); });
    std::vector<std::size_t> position(h.vertex_count(), 0);
    for (std::size_t i = 0; i < order_.size(); ++i) position[order_[i]] = i;
    closing_.assign(order_.size(), {});
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
      const auto& e = h.edge(i);
      std::size_t last = 0;
      for (Vertex x : e) last = std::max(last, position[x]);
      closing_[last].push_back(i);
    }
    color_.assign(h.vertex_count(), -1);
  }

  std::optional<std::vector<int>> run() {
    if (!assign(0, -1)) return std::nullopt;
    for (auto& c : color_) {
      if (c < 0) c = 0;
    }
    return color_;
  }

 private:
  bool assign(std::size_t index, int max_used) {
    if (index == order_.size()) return true;
    Vertex x = order_[index];
    int limit = std::min<int>(static_cast<int>(k_) - 1, max_used + 1);
    for (int c = 0; c <= limit; ++c) {
      color_[x] = c;
      if (closes_properly(index) && assign(index + 1, std::max(max_used, c))) return true;
    }
    color_[x] = -1;
    return false;
  }

  bool closes_properly(std::size_t index) const {
    for (std::size_t ei : closing_[index]) {
      const auto& e = h_.edge(ei);
      int c = color_[e.front()];
      if (std::all_of(e.begin(), e.end(), [&](Vertex y) { return color_[y] == c; })) return false;
    }
    return true;
  }

  const Hypergraph& h_;
  std::size_t k_;
  std::vector<Vertex> order_;
  std::vector<std::vector<std::size_t>> closing_;  // edges whose last vertex is order_[i]
  std::vector<int> color_;
};

}  // namespace detail

/// Smallest k <= cap with a proper k-coloring, by exhaustive backtracking.
inline ColoringResult chromatic_number(const Hypergraph& h, std::size_t cap = 4) {
  if (cap == 0) throw InputError("chromatic cap must be at least 1");
  if (h.edge_count() == 0) throw InputError("chromatic number needs at least one edge");
  if (h.uniformity() == 1) {
    throw HypothesisError("no proper coloring exists for any k: 1-uniform edges are always monochromatic");
  }
  for (std::size_t k = 2; k <= cap; ++k) {
    if (auto coloring = detail::ColoringSearch(h, k).run()) {
      ensure(is_proper_coloring(h, *coloring), "coloring search returned an improper coloring");
      return ColoringResult{k, std::move(*coloring)};
    }
  }
  return {};
}

/// The three-coloring every intersecting family admits: split the first edge
/// into two color classes and give every other covered vertex the third.
inline ColoringResult clique_three_coloring(const Hypergraph& h) {
  if (h.uniformity() < 2) throw HypothesisError("three-coloring construction needs n >= 2");
  if (h.edge_count() == 0) throw InputError("three-coloring construction needs at least one edge");
  auto verdict = is_clique(h);
  if (!verdict.is_clique) {
    throw HypothesisError("not a clique: edges " + std::to_string(verdict.witness->first) + " and " +
                          std::to_string(verdict.witness->second) + " are disjoint");
  }
  std::vector<int> coloring(h.vertex_count(), 0);
  for (Vertex x = 0; x < h.vertex_count(); ++x) {
    if (h.degree(x) > 0) coloring[x] = 2;
  }
  const auto& first = h.edge(0);
  const std::size_t half = (first.size() + 1) / 2;
  for (std::size_t i = 0; i < first.size(); ++i) coloring[first[i]] = i < half ? 0 : 1;
  ensure(is_proper_coloring(h, coloring), "clique three-coloring is not proper");
  return ColoringResult{distinct_colors(coloring), std::move(coloring)};
}

namespace detail {

class CoverSearch {
 public:
  explicit CoverSearch(const Hypergraph& h) : h_(h), excluded_(h.vertex_count(), false) {}

  std::vector<Vertex> run() {
    best_ = greedy();
    std::vector<std::size_t> open(h_.edge_count());
    std::iota(open.begin(), open.end(), std::size_t{0});
    std::vector<Vertex> chosen;
    branch(open, chosen);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  // Max-degree greedy cover over the uncovered edges; ties go to the lowest
  // vertex index.
  std::vector<Vertex> greedy() const {
    std::vector<bool> covered(h_.edge_count(), false);
    std::size_t remaining = h_.edge_count();
    std::vector<Vertex> picked;
    while (remaining > 0) {
      std::vector<std::size_t> count(h_.vertex_count(), 0);
      for (std::size_t i = 0; i < h_.edge_count(); ++i) {
        if (!covered[i]) {
          for (Vertex x : h_.edge(i)) ++count[x];
        }
      }
      auto best = static_cast<Vertex>(std::max_element(count.begin(), count.end()) - count.begin());
      picked.push_back(best);
      for (std::size_t i = 0; i < h_.edge_count(); ++i) {
        if (!covered[i] && std::binary_search(h_.edge(i).begin(), h_.edge(i).end(), best)) {
          covered[i] = true;
          --remaining;
        }
      }
    }
    return picked;
  }

  // Pairwise disjoint open edges each need their own vertex.
  std::size_t packing_bound(const std::vector<std::size_t>& open) const {
    std::vector<std::size_t> packed;
    for (std::size_t i : open) {
      bool disjoint = std::none_of(packed.begin(), packed.end(),
                                   [&](std::size_t j) { return intersects(h_.edge(i), h_.edge(j)); });
      if (disjoint) packed.push_back(i);
    }
    return packed.size();
  }

  void branch(const std::vector<std::size_t>& open, std::vector<Vertex>& chosen) {
    if (open.empty()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + packing_bound(open) >= best_.size()) return;

    // Smallest open edge first, measured in vertices still available.
    std::size_t pick = open.front();
    std::size_t pick_free = h_.uniformity() + 1;
    for (std::size_t i : open) {
      std::size_t free = 0;
      for (Vertex x : h_.edge(i)) free += excluded_[x] ? 0 : 1;
      if (free < pick_free) {
        pick = i;
        pick_free = free;
      }
    }
    if (pick_free == 0) return;

    std::vector<Vertex> newly_excluded;
    for (Vertex x : h_.edge(pick)) {
      if (excluded_[x]) continue;
      std::vector<std::size_t> rest;
      for (std::size_t i : open) {
        if (!std::binary_search(h_.edge(i).begin(), h_.edge(i).end(), x)) rest.push_back(i);
      }
      chosen.push_back(x);
      branch(rest, chosen);
      chosen.pop_back();
      excluded_[x] = true;
      newly_excluded.push_back(x);
    }
    for (Vertex x : newly_excluded) excluded_[x] = false;
  }

  const Hypergraph& h_;
  std::vector<bool> excluded_;
  std::vector<Vertex> best_;
};

}  // namespace detail

/// Exact minimum transversal by branch-and-bound.
inline CoverResult covering_number(const Hypergraph& h) {
  if (h.edge_count() == 0) return CoverResult{0, VertexSet(h.vertex_count()), true};
  auto members = detail::CoverSearch(h).run();
  CoverResult result{members.size(), VertexSet(h.vertex_count(), members), false};
  ensure(is_transversal(h, result.transversal), "cover search returned a non-transversal");
  return result;
}

}  // namespace hyclique
