// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Runtime limits are wall-clock seconds per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace hyclique;
using testing_support::load_fixture;

namespace {

constexpr double kLimitSearchPairs = 1.0;
constexpr double kLimitFano = 1.0;
constexpr double kLimitBounds = 10.0;
constexpr double kLimitAmplification = 30.0;
constexpr double kLimitAlgebra = 60.0;
constexpr double kLimitExtraction = 10.0;
constexpr double kLimitSubset = 10.0;
constexpr double kLimitCounting = 5.0;

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Check {
 public:
  explicit Check(Outcome& out) : out_(out) {}
  void require(bool condition, const std::string& what) {
    if (!condition && out_.ok) {
      out_.ok = false;
      out_.detail = what;
    }
  }

 private:
  Outcome& out_;
};

Outcome search_pairs() {
  Outcome out;
  Check c(out);
  SearchOptions o;
  o.n = 2;
  o.v_cap = 6;
  o.mode = SearchMode::Chi3;
  auto r = extremal_search(o);
  c.require(r.best_size == 3, "best_size = " + std::to_string(r.best_size));
  c.require(r.exhaustive, "search not exhaustive");
  c.require(BigInt(r.best_size) == t1_lower(2), "lower bound value at n = 2 is not 3");
  out.detail = out.ok ? "best_size 3, exhaustive" : out.detail;
  return out;
}

Outcome fano_suite() {
  Outcome out;
  Check c(out);
  auto h = load_fixture("fano.hg");
  c.require(h.uniformity() == 3, "uniformity");
  c.require(is_clique(h).is_clique, "not a clique");
  c.require(chromatic_number(h, 4).chi == 3u, "chi != 3");
  c.require(covering_number(h).tau == 3, "tau != 3");
  c.require(h.covered_vertex_count() == 7 && h.covered_vertex_count() <= 64, "|V| check");
  if (out.ok) out.detail = "uniform 3, clique, chi 3, tau 3, |V| 7 <= 64";
  return out;
}

Outcome bound_arithmetic() {
  Outcome out;
  Check c(out);
  auto small = bound_report(3);
  c.require(small.t1_lower == 10 && small.t1_upper == 27, "n = 3 lower and upper values");
  auto nine = bound_report(9, 2);
  c.require(*nine.A == BigInt(1752382), "A(9,2)");
  c.require(*nine.t3_bound == BigInt(346126150), "t3(9,2)");
  c.require(*nine.t3_bound < BigInt(387420489), "t3(9,2) < 9^9");
  for (int n = 9; n <= 40; ++n) {
    auto r = bound_report(n, 2);
    c.require(*r.t3_bound < r.t1_upper, "t3 >= n^n at n = " + std::to_string(n));
  }
  if (out.ok) out.detail = "t1(3) = 10..27, A(9,2) = 1752382, t3(9,2) = 346126150, t3 < n^n for n = 9..40";
  return out;
}

Outcome amplification() {
  Outcome out;
  Check c(out);
  for (int m = 2; m <= 100; ++m) {
    auto r = amplification_check(m, 8 * m);
    c.require(r.holds && r.decreasing_at_kmax, "amplification fails at m = " + std::to_string(m));
  }
  std::size_t cases = 0;
  for (int n = 4; n <= 40; ++n) {
    for (int m = 2; m <= n / 2; ++m) {
      auto failure = amplification_chain_check(n, m);
      c.require(!failure, "chain fails at n = " + std::to_string(n) + ", m = " + std::to_string(m));
      ++cases;
    }
  }
  if (out.ok) out.detail = "m = 2..100 and " + std::to_string(cases) + " (n, m) chain cases";
  return out;
}

Outcome algebra() {
  Outcome out;
  Check c(out);
  std::mt19937_64 rng(2024);
  int families = 0;
  while (families < 50) {
    std::size_t v = 6 + rng() % 19;  // 6..24
    std::size_t n = 2 + rng() % 5;
    std::vector<int> levels;
    for (std::size_t i = 0, count = 1 + rng() % 3; i < count; ++i) levels.push_back(static_cast<int>(rng() % n));
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (binomial_prefix_sum(v, levels.size()) > kMaxBasisMonomials) continue;

    std::vector<Edge> family;
    std::vector<Vertex> pool(v);
    for (std::size_t i = 0; i < v; ++i) pool[i] = static_cast<Vertex>(i);
    for (int t = 0; t < 80; ++t) {
      std::shuffle(pool.begin(), pool.end(), rng);
      Edge e(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
      std::sort(e.begin(), e.end());
      bool ok = std::find(family.begin(), family.end(), e) == family.end();
      for (const auto& f : family) {
        if (!ok) break;
        int l = static_cast<int>(intersection_size(e, f));
        ok = std::binary_search(levels.begin(), levels.end(), l);
      }
      if (ok) family.push_back(e);
    }
    auto oracle = evaluation_oracle(family, levels, n);
    auto cert = rank_certificate(family, levels, v, n);
    c.require(oracle.diag_ok, "evaluation oracle not diagonal");
    c.require(cert.rank == cert.s, "rank != s");
    c.require(BigInt(cert.s) <= cert.dim_bound, "s above the dimension bound");
    ++families;
  }
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t v = 2 + rng() % 12;
    std::size_t n = 1 + rng() % v;
    std::vector<Vertex> pool(v);
    for (std::size_t i = 0; i < v; ++i) pool[i] = static_cast<Vertex>(i);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Vertex> x(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<int> levels;
    for (std::size_t i = 0, count = 1 + rng() % 3; i < count; ++i) levels.push_back(static_cast<int>(rng() % (n + 1)));
    VertexSet y(v);
    std::size_t overlap = 0;
    for (std::size_t i = 0; i < v; ++i) {
      if (rng() & 1u) {
        y.insert(static_cast<Vertex>(i));
        overlap += std::find(x.begin(), x.end(), static_cast<Vertex>(i)) != x.end() ? 1 : 0;
      }
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    Rational direct = 1;
    for (int j : levels) direct *= Rational(j - static_cast<int>(overlap));
    c.require(multilinearize_product(x, levels, v).evaluate(y) == direct, "multilinear value differs from product");
  }
  if (out.ok) out.detail = "50 certificates sound, 1000 boolean points agree";
  return out;
}

Outcome extraction() {
  Outcome out;
  Check c(out);
  std::vector<Hypergraph> cliques;
  for (const char* name : {"star.hg", "four_edge.hg", "complete_4_of_7.hg"}) cliques.push_back(load_fixture(name));
  for (int n = 4; n <= 5; ++n) {
    SearchOptions o;
    o.n = n;
    o.v_cap = n + 3;
    o.mode = SearchMode::Chi3;
    o.node_limit = 2000;
    o.seed = 7;
    auto r = extremal_search(o);
    if (r.best_instance) cliques.push_back(*r.best_instance);
  }
  std::size_t traces = 0, steps = 0;
  for (const auto& h : cliques) {
    for (std::optional<Rational> t : {std::optional<Rational>{}, std::optional<Rational>(Rational(h.edge_count())),
                                      std::optional<Rational>(Rational(2 * h.edge_count()))}) {
      auto trace = run_extraction(h, 2, t);
      for (const auto& s : trace.steps) c.require(s.achieved_factor >= s.claimed_factor, "step below claimed factor");
      c.require(trace.assembled_bound >= Rational(h.edge_count()), "assembled bound below |E|");
      ++traces;
      steps += trace.steps.size();
    }
  }
  c.require(steps > 0, "no amplification step exercised");
  if (out.ok) out.detail = std::to_string(traces) + " traces, " + std::to_string(steps) + " steps";
  return out;
}

Outcome subset_bound() {
  Outcome out;
  Check c(out);
  auto fano = verify_subset_bound(load_fixture("fano.hg"), 3);
  c.require(fano.entries[0].max_count == 3 && fano.entries[0].bound == 9, "Fano k = 1");
  c.require(fano.entries[1].max_count == 1 && fano.entries[1].bound == 3, "Fano k = 2");
  std::size_t checked = 0;
  for (const char* name : {"fano.hg", "triangle.hg", "complete_4_of_7.hg"}) {
    auto h = load_fixture(name);
    auto r = verify_subset_bound(h, h.uniformity() + 1);
    c.require(r.all_ok, std::string("subset bound fails on ") + name);
    ++checked;
  }
  for (int n = 2; n <= 3; ++n) {
    SearchOptions o;
    o.n = n;
    o.v_cap = n == 2 ? 6 : 7;
    auto r = extremal_search(o);
    c.require(verify_subset_bound(*r.best_instance, static_cast<std::size_t>(n)).all_ok, "fails on search witness");
    ++checked;
  }
  if (out.ok) out.detail = "Fano 3 <= 9, 1 <= 3; " + std::to_string(checked) + " 3-chromatic cliques";
  return out;
}

Outcome counting_bound_finite() {
  Outcome out;
  Check c(out);
  auto r = theorem4_finite(10, 25);
  c.require(r.a_star == 9, "a_star = " + std::to_string(r.a_star));
  c.require(r.bound == Rational(2042975), "bound = " + to_exact(r.bound));
  for (int n = 6; n <= 20; ++n) {
    for (int cc : {2, 4}) {
      auto t = theorem4_finite(n, n * n / cc);
      c.require(t.default_choice && t.bound <= t.default_choice->value,
                "optimized above default choice at n = " + std::to_string(n));
    }
  }
  if (out.ok) out.detail = "a_star 9, bound 2042975; optimized <= clamped choice for n = 6..20";
  return out;
}

struct Criterion {
  int id;
  std::string name;
  double limit;
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact small-case extremum", kLimitSearchPairs, search_pairs},
      {2, "Fano suite", kLimitFano, fano_suite},
      {3, "bound arithmetic", kLimitBounds, bound_arithmetic},
      {4, "amplification inequality", kLimitAmplification, amplification},
      {5, "algebraic certificate soundness", kLimitAlgebra, algebra},
      {6, "extraction traces", kLimitExtraction, extraction},
      {7, "subset bound", kLimitSubset, subset_bound},
      {8, "counting bound finite form", kLimitCounting, counting_bound_finite},
  };
  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto begin = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    bool pass = outcome.ok && seconds < criterion.limit;
    if (outcome.ok && !pass) outcome.detail += " (over time limit)";
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs, limit %.0fs", seconds, criterion.limit);
    std::cout << (pass ? "PASS" : "FAIL") << " [" << criterion.id << "] " << criterion.name << ": " << outcome.detail
              << " (" << timing << ")\n";
    failures += pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
