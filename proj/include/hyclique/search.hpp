#pragma once

// Desk-scale extremal search over intersecting n-uniform families, and a
// brute-force check of the subset bound |E(W)| <= n^{n-|W|}.
//
// Families live on at most 64 vertices as bitmasks. The search grows
// families one edge at a time and keeps one representative per isomorphism
// class: a cheap invariant signature buckets families and an exact
// vertex-mapping test decides membership, so the traversal visits every
// class exactly once.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hyclique/chi_tau.hpp"
#include "hyclique/core.hpp"
#include "hyclique/errors.hpp"
#include "hyclique/numeric.hpp"

namespace hyclique {

enum class SearchMode { Chi3, TauN };

inline std::string to_string(SearchMode mode) { return mode == SearchMode::Chi3 ? "chi3" : "tau-n"; }

inline SearchMode parse_search_mode(const std::string& text) {
  if (text == "chi3") return SearchMode::Chi3;
  if (text == "tau-n") return SearchMode::TauN;
  throw InputError("unknown search mode '" + text + "' (expected chi3 or tau-n)");
}

struct SearchOptions {
  int n = 2;
  int v_cap = 6;
  SearchMode mode = SearchMode::Chi3;
  std::chrono::duration<double> budget{10.0};
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> node_limit;  // deterministic truncation
};

struct SearchRecord {
  int n = 0;
  SearchMode mode = SearchMode::Chi3;
  std::size_t best_size = 0;
  std::optional<Hypergraph> best_instance;
  bool exhaustive = false;
  int v_cap = 0;
  std::chrono::duration<double> elapsed{0};
  std::uint64_t nodes = 0;
  std::uint64_t classes = 0;
  std::optional<bool> structural_cross_check;  // n = 2 only: triangle/star dichotomy agrees
};

using Mask = std::uint64_t;
using Family = std::vector<Mask>;  // sorted ascending

namespace search_detail {

inline Hypergraph to_hypergraph(const Family& family, int n, int v) {
  std::vector<Edge> edges;
  for (Mask m : family) {
    Edge e;
    for (Mask w = m; w != 0; w &= w - 1) e.push_back(static_cast<Vertex>(std::countr_zero(w)));
    edges.push_back(std::move(e));
  }
  return Hypergraph(static_cast<std::size_t>(n), static_cast<std::size_t>(v), std::move(edges));
}

inline Mask covered(const Family& family) {
  Mask all = 0;
  for (Mask m : family) all |= m;
  return all;
}

inline std::vector<int> covered_list(const Family& family) {
  std::vector<int> out;
  for (Mask w = covered(family); w != 0; w &= w - 1) out.push_back(std::countr_zero(w));
  return out;
}

inline bool two_colorable_from(const std::vector<int>& verts, const std::vector<std::vector<Mask>>& closing,
                               std::size_t i, Mask red) {
  if (i == verts.size()) return true;
  // The first vertex is red by symmetry.
  for (int c = 0; c < (i == 0 ? 1 : 2); ++c) {
    Mask r = c == 0 ? (red | (Mask{1} << verts[i])) : red;
    bool ok = std::all_of(closing[i].begin(), closing[i].end(),
                          [&](Mask e) { return (e & r) != e && (e & r) != 0; });
    if (ok && two_colorable_from(verts, closing, i + 1, r)) return true;
  }
  return false;
}

/// No proper 2-coloring exists (every 2-coloring leaves a monochromatic edge).
inline bool not_two_colorable(const Family& family) {
  const std::vector<int> verts = covered_list(family);
  // closing[i]: edges whose highest vertex is verts[i]
  std::vector<std::vector<Mask>> closing(verts.size());
  for (Mask e : family) {
    int top = 63 - std::countl_zero(e);
    auto pos = std::lower_bound(verts.begin(), verts.end(), top) - verts.begin();
    closing[static_cast<std::size_t>(pos)].push_back(e);
  }
  return !two_colorable_from(verts, closing, 0, 0);
}

/// Some transversal with at most `budget` vertices exists.
inline bool has_cover_within(const Family& family, Mask chosen, int budget) {
  for (Mask e : family) {
    if ((e & chosen) == 0) {
      if (budget == 0) return false;
      for (Mask w = e; w != 0; w &= w - 1) {
        if (has_cover_within(family, chosen | (w & -w), budget - 1)) return true;
      }
      return false;
    }
  }
  return true;
}

inline bool predicate(const Family& family, int n, SearchMode mode) {
  if (mode == SearchMode::Chi3) return not_two_colorable(family);
  return !has_cover_within(family, 0, n - 1);
}

/// |E(W)| <= n^{n-|W|} for every W inside the newly added edge.
inline bool subset_bound_ok(const Family& family, Mask added, int n) {
  std::vector<int> bits;
  for (Mask w = added; w != 0; w &= w - 1) bits.push_back(std::countr_zero(w));
  std::vector<std::uint64_t> limit(static_cast<std::size_t>(n) + 1, 1);
  for (int k = n - 1; k >= 0; --k) {
    limit[static_cast<std::size_t>(k)] = limit[static_cast<std::size_t>(k) + 1] * static_cast<std::uint64_t>(n);
    if (limit[static_cast<std::size_t>(k)] > (std::uint64_t{1} << 40)) limit[static_cast<std::size_t>(k)] = std::uint64_t{1} << 40;
  }
  for (std::uint32_t sub = 1; sub < (1u << bits.size()); ++sub) {
    Mask w = 0;
    for (std::size_t b = 0; b < bits.size(); ++b) {
      if (sub & (1u << b)) w |= Mask{1} << bits[b];
    }
    std::uint64_t count = 0;
    for (Mask e : family) count += ((e & w) == w) ? 1 : 0;
    if (count > limit[static_cast<std::size_t>(std::popcount(w))]) return false;
  }
  return true;
}

// Per-vertex invariant: degree followed by the sorted co-degree profile.
inline std::map<int, std::vector<int>> vertex_invariants(const Family& family) {
  std::map<int, std::vector<int>> out;
  const auto verts = covered_list(family);
  for (int x : verts) {
    Mask bit = Mask{1} << x;
    std::vector<int> inv;
    int degree = 0;
    Mask neighborhood = 0;
    for (Mask e : family) {
      if (e & bit) {
        ++degree;
        neighborhood |= e;
      }
    }
    inv.push_back(degree);
    std::vector<int> codeg;
    for (int y : verts) {
      if (y == x || !(neighborhood & (Mask{1} << y))) continue;
      Mask pair = bit | (Mask{1} << y);
      int c = 0;
      for (Mask e : family) c += ((e & pair) == pair) ? 1 : 0;
      codeg.push_back(c);
    }
    std::sort(codeg.begin(), codeg.end());
    inv.insert(inv.end(), codeg.begin(), codeg.end());
    out.emplace(x, std::move(inv));
  }
  return out;
}

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

/// Isomorphism-invariant hash: edge count, sorted vertex invariants and the
/// sorted pairwise-intersection multiset.
inline std::uint64_t signature(const Family& family, const std::map<int, std::vector<int>>& invariants) {
  std::vector<std::vector<int>> invs;
  for (const auto& [x, inv] : invariants) invs.push_back(inv);
  std::sort(invs.begin(), invs.end());
  std::uint64_t h = family.size();
  for (const auto& inv : invs) {
    h = mix(h, inv.size());
    for (int v : inv) h = mix(h, static_cast<std::uint64_t>(v));
  }
  std::vector<int> inter;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) inter.push_back(std::popcount(family[i] & family[j]));
  }
  std::sort(inter.begin(), inter.end());
  for (int v : inter) h = mix(h, static_cast<std::uint64_t>(v) + 1000);
  return h;
}

struct ClassRep {
  Family family;
  std::map<int, std::vector<int>> invariants;
};

/// Exact isomorphism test by vertex-mapping backtracking.
inline bool isomorphic(const ClassRep& a, const ClassRep& b) {
  if (a.family.size() != b.family.size() || a.invariants.size() != b.invariants.size()) return false;
  std::vector<int> va, vb;
  for (const auto& [x, inv] : a.invariants) va.push_back(x);
  for (const auto& [x, inv] : b.invariants) vb.push_back(x);
  std::stable_sort(va.begin(), va.end(), [&](int x, int y) { return a.invariants.at(x) > a.invariants.at(y); });
  std::vector<std::vector<Mask>> closing(va.size());
  {
    std::vector<int> pos(64, 0);
    for (std::size_t i = 0; i < va.size(); ++i) pos[static_cast<std::size_t>(va[i])] = static_cast<int>(i);
    for (Mask e : a.family) {
      int last = 0;
      for (Mask w = e; w != 0; w &= w - 1) last = std::max(last, pos[static_cast<std::size_t>(std::countr_zero(w))]);
      closing[static_cast<std::size_t>(last)].push_back(e);
    }
  }
  std::unordered_set<Mask> target(b.family.begin(), b.family.end());
  std::vector<int> image(64, -1);
  Mask used = 0;

  auto map_edge = [&](Mask e) {
    Mask out = 0;
    for (Mask w = e; w != 0; w &= w - 1) out |= Mask{1} << image[static_cast<std::size_t>(std::countr_zero(w))];
    return out;
  };

  auto extend = [&](auto&& self, std::size_t i) -> bool {
    if (i == va.size()) return true;
    const auto& inv = a.invariants.at(va[i]);
    for (int y : vb) {
      if (used & (Mask{1} << y)) continue;
      if (b.invariants.at(y) != inv) continue;
      image[static_cast<std::size_t>(va[i])] = y;
      used |= Mask{1} << y;
      bool ok = std::all_of(closing[i].begin(), closing[i].end(), [&](Mask e) { return target.count(map_edge(e)) > 0; });
      if (ok && self(self, i + 1)) return true;
      used &= ~(Mask{1} << y);
    }
    image[static_cast<std::size_t>(va[i])] = -1;
    return false;
  };
  return extend(extend, 0);
}

/// Lexicographically smallest relabeled family, over relabelings that order
/// vertices by invariant (so only ties are permuted). Vertices get labels
/// 0..u-1.
inline Family canonical_form(const Family& family) {
  auto invariants = vertex_invariants(family);
  std::vector<int> verts;
  for (const auto& [x, inv] : invariants) verts.push_back(x);
  std::stable_sort(verts.begin(), verts.end(),
                   [&](int x, int y) { return invariants.at(x) > invariants.at(y); });
  // Cells of equal invariants, in order.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < verts.size();) {
    std::size_t j = i;
    while (j < verts.size() && invariants.at(verts[j]) == invariants.at(verts[i])) ++j;
    cells.emplace_back(i, j);
    i = j;
  }
  Family best;
  bool have = false;
  std::vector<int> order = verts;
  for (auto [lo, hi] : cells) std::sort(order.begin() + static_cast<long>(lo), order.begin() + static_cast<long>(hi));

  auto relabel = [&]() {
    std::vector<int> label(64, -1);
    for (std::size_t i = 0; i < order.size(); ++i) label[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    Family out;
    for (Mask e : family) {
      Mask m = 0;
      for (Mask w = e; w != 0; w &= w - 1) m |= Mask{1} << label[static_cast<std::size_t>(std::countr_zero(w))];
      out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  // Odometer over the permutations of every cell.
  while (true) {
    Family f = relabel();
    if (!have || f < best) {
      best = std::move(f);
      have = true;
    }
    std::size_t c = cells.size();
    bool advanced = false;
    while (c-- > 0) {
      auto [lo, hi] = cells[c];
      if (std::next_permutation(order.begin() + static_cast<long>(lo), order.begin() + static_cast<long>(hi))) {
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return best;
}

class Searcher {
 public:
  Searcher(const SearchOptions& options, int cap, std::chrono::steady_clock::time_point deadline,
           std::uint64_t& nodes)
      : opt_(options), cap_(cap), deadline_(deadline), nodes_(nodes) {
    // All n-subsets of 0..cap-1 as masks, ascending.
    std::vector<int> idx(static_cast<std::size_t>(opt_.n));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Mask m = 0;
      for (int x : idx) m |= Mask{1} << x;
      candidates_.push_back(m);
      int i = opt_.n - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == cap_ - opt_.n + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < opt_.n; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j) - 1] + 1;
      if (candidates_.size() > (std::size_t{1} << 22)) throw InputError("too many candidate edges for the search");
    }
    std::mt19937_64 rng(opt_.seed);
    if (opt_.seed != 0) std::shuffle(candidates_.begin(), candidates_.end(), rng);
  }

  /// Returns true when the whole tree was traversed.
  bool run() {
    Mask first = 0;
    for (int x = 0; x < opt_.n; ++x) first |= Mask{1} << x;
    Family start{first};
    remember(start);
    visit(start);
    return !truncated_;
  }

  std::size_t best_size() const { return best_.size(); }
  const Family& best() const { return best_; }
  std::uint64_t classes() const { return classes_; }

 private:
  bool out_of_budget() {
    if (opt_.node_limit && nodes_ >= *opt_.node_limit) return true;
    if ((nodes_ & 255u) == 0 && std::chrono::steady_clock::now() >= deadline_) timed_out_ = true;
    return timed_out_;
  }

  bool remember(const Family& f) {
    ClassRep rep{f, vertex_invariants(f)};
    auto& bucket = seen_[signature(f, rep.invariants)];
    for (const auto& other : bucket) {
      if (isomorphic(rep, other)) return false;
    }
    bucket.push_back(std::move(rep));
    ++classes_;
    return true;
  }

  void consider(const Family& f) {
    if (f.size() < best_.size()) return;
    if (!predicate(f, opt_.n, opt_.mode)) return;
    Family canon = canonical_form(f);
    if (canon.size() > best_.size() || canon < best_) best_ = std::move(canon);
  }

  void visit(const Family& f) {
    if (truncated_) return;
    if (out_of_budget()) {
      truncated_ = true;
      return;
    }
    ++nodes_;
    consider(f);
    for (Mask e : candidates_) {
      if (truncated_) return;
      if (std::binary_search(f.begin(), f.end(), e)) continue;
      if (!std::all_of(f.begin(), f.end(), [&](Mask g) { return (g & e) != 0; })) continue;
      Family next = f;
      next.insert(std::upper_bound(next.begin(), next.end(), e), e);
      if (!subset_bound_ok(next, e, opt_.n)) continue;
      if (!remember(next)) continue;
      visit(next);
    }
  }

  const SearchOptions& opt_;
  int cap_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t& nodes_;
  std::vector<Mask> candidates_;
  std::unordered_map<std::uint64_t, std::vector<ClassRep>> seen_;
  Family best_;
  std::uint64_t classes_ = 0;
  bool truncated_ = false;
  bool timed_out_ = false;
};

}  // namespace search_detail

/// Largest intersecting n-uniform family on at most v_cap vertices satisfying
/// the mode predicate (chi = 3, or tau = n). Vertex caps n, n+1, ..., v_cap are
/// searched in turn so that a larger cap only extends the work of a smaller
/// one.
inline SearchRecord extremal_search(const SearchOptions& options) {
  if (options.n < 2) throw InputError("search needs n >= 2");
  if (options.v_cap < options.n) throw InputError("v_cap must be at least n");
  if (options.v_cap > 64) throw InputError("v_cap above 64 is outside desk scale");

  const auto begin = std::chrono::steady_clock::now();
  const auto deadline = begin + std::chrono::duration_cast<std::chrono::steady_clock::duration>(options.budget);
  SearchRecord record;
  record.n = options.n;
  record.mode = options.mode;
  record.v_cap = options.v_cap;

  Family best;
  bool complete = false;
  for (int cap = options.n; cap <= options.v_cap; ++cap) {
    search_detail::Searcher searcher(options, cap, deadline, record.nodes);
    complete = searcher.run();
    record.classes += searcher.classes();
    const auto& found = searcher.best();
    if (found.size() > best.size() || (found.size() == best.size() && !found.empty() && found < best)) best = found;
    if (!complete) break;
  }
  record.exhaustive = complete;
  record.elapsed = std::chrono::steady_clock::now() - begin;

  if (!best.empty()) {
    int used = std::popcount(search_detail::covered(best));
    Hypergraph h = search_detail::to_hypergraph(best, options.n, used);
    ensure(is_clique(h).is_clique, "search produced a non-intersecting family");
    if (options.mode == SearchMode::Chi3) {
      auto chi = chromatic_number(h, 3);
      ensure(chi.chi && *chi.chi == 3, "search witness is not 3-chromatic");
    }
    ensure(covering_number(h).tau == static_cast<std::size_t>(options.n), "search witness has tau != n");
    record.best_size = h.edge_count();
    record.best_instance = std::move(h);
  }

  if (options.n == 2 && record.exhaustive) {
    // A 2-uniform intersecting family is a star or a triangle, and only the
    // triangle has chi = 3 and tau = 2.
    std::size_t expected = options.v_cap >= 3 ? 3 : 0;
    record.structural_cross_check = record.best_size == expected;
    ensure(*record.structural_cross_check, "n = 2 search disagrees with the star/triangle dichotomy");
  }
  return record;
}

/// Writes the witness as `<mode>-n<n>-e<count>.hg` and returns the path.
inline std::optional<std::filesystem::path> write_record(const SearchRecord& record, const std::filesystem::path& dir) {
  if (!record.best_instance) return std::nullopt;
  std::filesystem::create_directories(dir);
  auto path = dir / (to_string(record.mode) + "-n" + std::to_string(record.n) + "-e" +
                     std::to_string(record.best_size) + ".hg");
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "# " << to_string(record.mode) << " witness, " << record.best_size << " edges\n";
  out << render(*record.best_instance);
  return path;
}

// ---------------------------------------------------------------------------
// Subset bound

struct SubsetBoundEntry {
  std::size_t k = 0;
  std::size_t max_count = 0;
  std::vector<Vertex> witness;  // a W attaining max_count (empty when max is 0)
  Rational bound;               // n^{n-k}
  bool ok = true;
};

struct SubsetBoundReport {
  std::vector<SubsetBoundEntry> entries;
  bool all_ok = true;
};

/// For each k, the largest |E(W)| over |W| = k, compared with n^{n-k}. Only
/// subsets of edges are enumerated; any other W has E(W) empty.
inline SubsetBoundReport verify_subset_bound(const Hypergraph& h, std::size_t k_max) {
  auto verdict = is_clique(h);
  if (!verdict.is_clique) {
    throw HypothesisError("not a clique: edges " + std::to_string(verdict.witness->first) + " and " +
                          std::to_string(verdict.witness->second) + " are disjoint");
  }
  auto chi = chromatic_number(h, 3);
  if (!chi.chi || *chi.chi != 3) {
    throw HypothesisError("chromatic number is " + (chi.chi ? std::to_string(*chi.chi) : std::string(">3")) +
                          ", not 3");
  }
  const std::size_t n = h.uniformity();
  SubsetBoundReport report;
  for (std::size_t k = 1; k <= k_max; ++k) {
    SubsetBoundEntry entry;
    entry.k = k;
    entry.bound = k <= n ? Rational(ipow(BigInt(n), static_cast<unsigned>(n - k)))
                         : Rational(BigInt(1), ipow(BigInt(n), static_cast<unsigned>(k - n)));
    if (k <= n) {
      std::map<std::vector<Vertex>, std::size_t> counts;
      for (const auto& e : h.edges()) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
        do {
          std::vector<Vertex> w;
          for (std::size_t i = 0; i < n; ++i) {
            if (pick[i]) w.push_back(e[i]);
          }
          ++counts[w];
        } while (std::prev_permutation(pick.begin(), pick.end()));
      }
      for (const auto& [w, c] : counts) {
        if (c > entry.max_count) {
          entry.max_count = c;
          entry.witness = w;
        }
      }
    }
    entry.ok = Rational(entry.max_count) <= entry.bound;
    report.all_ok = report.all_ok && entry.ok;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace hyclique
