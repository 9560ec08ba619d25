#pragma once

// Fixture loading and brute-force oracles shared by the test binaries. The
// oracles deliberately avoid the library's algorithms: they enumerate.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "hyclique.hpp"

namespace testing_support {

using namespace hyclique;

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(HYCLIQUE_FIXTURE_DIR) / name;
}

inline Hypergraph load_fixture(const std::string& name) {
  std::ifstream in(fixture(name));
  return parse_hypergraph(in).graph;
}

/// Pascal's triangle, independent of the product-form binomial.
inline BigInt pascal(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::vector<BigInt> row{1};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<BigInt> next(i + 1, 1);
    for (unsigned j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[k];
}

/// Smallest k for which some map V -> {0..k-1} leaves no edge monochromatic.
inline std::size_t brute_chi(const Hypergraph& h, std::size_t cap) {
  const std::size_t v = h.vertex_count();
  for (std::size_t k = 1; k <= cap; ++k) {
    std::vector<int> colors(v, 0);
    while (true) {
      if (is_proper_coloring(h, colors)) return k;
      std::size_t i = 0;
      while (i < v && colors[i] == static_cast<int>(k) - 1) colors[i++] = 0;
      if (i == v) break;
      ++colors[i];
    }
  }
  return cap + 1;
}

/// Minimum hitting set by enumerating all vertex subsets (v <= 20).
inline std::size_t brute_tau(const Hypergraph& h) {
  const std::size_t v = h.vertex_count();
  std::size_t best = v;
  for (std::uint32_t mask = 0; mask < (1u << v); ++mask) {
    auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size >= best) continue;
    bool hits = true;
    for (const auto& e : h.edges()) {
      bool met = false;
      for (Vertex x : e) met = met || (mask >> x & 1u);
      if (!met) {
        hits = false;
        break;
      }
    }
    if (hits) best = size;
  }
  return best;
}

/// Random n-uniform family on v vertices with up to `edges` distinct edges.
inline Hypergraph random_hypergraph(std::mt19937_64& rng, std::size_t n, std::size_t v, std::size_t edges) {
  std::vector<Edge> out;
  std::vector<Vertex> pool(v);
  for (std::size_t i = 0; i < v; ++i) pool[i] = static_cast<Vertex>(i);
  for (std::size_t i = 0; i < edges; ++i) {
    std::shuffle(pool.begin(), pool.end(), rng);
    out.emplace_back(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
  }
  return Hypergraph(n, v, out);
}

/// Random intersecting family: greedily keeps random edges that meet all kept ones.
inline Hypergraph random_clique(std::mt19937_64& rng, std::size_t n, std::size_t v, std::size_t tries) {
  std::vector<Edge> kept;
  std::vector<Vertex> pool(v);
  for (std::size_t i = 0; i < v; ++i) pool[i] = static_cast<Vertex>(i);
  for (std::size_t t = 0; t < tries; ++t) {
    std::shuffle(pool.begin(), pool.end(), rng);
    Edge e(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(e.begin(), e.end());
    bool ok = true;
    for (const auto& k : kept) ok = ok && intersects(k, e);
    if (ok) kept.push_back(e);
  }
  return Hypergraph(n, v, kept);
}

/// All k-subsets of {0..v-1}, lexicographic.
inline std::vector<Edge> all_subsets(std::size_t v, std::size_t k) {
  std::vector<Edge> out;
  Edge cur;
  auto rec = [&](auto&& self, Vertex start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (Vertex x = start; x < v; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace testing_support
