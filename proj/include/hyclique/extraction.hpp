#pragma once

// Greedy extraction of a vertex set W whose edge-restriction E(W) stays
// large: starting from a high-degree vertex, either an outside pair of edges
// with a "middle" intersection exists (and W grows by one or two vertices
// with a guaranteed factor), or the outside family has all its
// intersections in the spectrum Q.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyclique/algebra.hpp"
#include "hyclique/bounds.hpp"
#include "hyclique/core.hpp"
#include "hyclique/errors.hpp"
#include "hyclique/interval.hpp"
#include "hyclique/numeric.hpp"

namespace hyclique {

// ---------------------------------------------------------------------------
// First dichotomy

struct HighDegree {
  Vertex x = 0;
  std::size_t degree = 0;
};

struct OutsidePair {
  std::size_t b1 = 0;
  std::size_t b2 = 0;
  std::size_t l = 0;  // |B1 n B2|
};

struct Exhausted {
  std::vector<std::size_t> outside;  // edges missing W, pairwise intersecting inside Q
};

using DichotomyResult = std::variant<HighDegree, OutsidePair, Exhausted>;

namespace detail {

inline void require_clique(const Hypergraph& h) {
  auto verdict = is_clique(h);
  if (!verdict.is_clique) {
    throw HypothesisError("not a clique: edges " + std::to_string(verdict.witness->first) + " and " +
                          std::to_string(verdict.witness->second) + " are disjoint");
  }
}

inline bool meets(const Edge& e, const std::vector<Vertex>& w) {
  return std::any_of(e.begin(), e.end(), [&](Vertex x) { return std::binary_search(w.begin(), w.end(), x); });
}

inline std::vector<Vertex> sorted_with(std::vector<Vertex> w, std::initializer_list<Vertex> extra) {
  for (Vertex x : extra) w.push_back(x);
  std::sort(w.begin(), w.end());
  return w;
}

}  // namespace detail

/// Either some x in W has degree >= threshold/|W|, or two edges outside E_W
/// intersect in a size outside Q, or neither (Exhausted). Branches are tried
/// in that order.
inline DichotomyResult lemma1_dichotomy(const Hypergraph& h, const std::vector<Vertex>& w, const Rational& threshold,
                                        const std::vector<int>& Q) {
  if (w.empty()) throw InputError("W must be nonempty");
  for (Vertex x : w) {
    if (x >= h.vertex_count()) throw InputError("W contains a vertex outside the hypergraph");
  }
  detail::require_clique(h);
  std::vector<Vertex> ws = w;
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());

  Vertex best = ws.front();
  for (Vertex x : ws) {
    if (h.degree(x) > h.degree(best)) best = x;
  }
  if (Rational(h.degree(best)) >= threshold / Rational(ws.size())) return HighDegree{best, h.degree(best)};

  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    if (!detail::meets(h.edge(i), ws)) outside.push_back(i);
  }
  for (std::size_t a = 0; a < outside.size(); ++a) {
    for (std::size_t b = a + 1; b < outside.size(); ++b) {
      std::size_t l = intersection_size(h.edge(outside[a]), h.edge(outside[b]));
      if (std::find(Q.begin(), Q.end(), static_cast<int>(l)) == Q.end()) {
        return OutsidePair{outside[a], outside[b], l};
      }
    }
  }
  return Exhausted{std::move(outside)};
}

// ---------------------------------------------------------------------------
// Amplification step

enum class StepKind { AddOne, AddTwo };

struct ExtractionStep {
  StepKind kind = StepKind::AddOne;
  std::vector<Vertex> added;
  std::size_t j_before = 0;
  std::size_t j_after = 0;
  std::size_t b1 = 0;
  std::size_t b2 = 0;
  std::size_t l = 0;
  std::size_t e1_size = 0;  // edges of E(W) meeting B1 n B2
  std::size_t e2_size = 0;
  Rational claimed_factor;
  Rational achieved_factor;
  Interval worst_split;  // diagnostic: the balancing value of |E1|
};

/// a = (j l^2 + sqrt((j l^2)^2 + 4 j^2 l^2 (n-l)^2)) / (2 (n-l)^2).
inline Interval worst_case_split(std::size_t j, std::size_t l, std::size_t n) {
  Rational jl2 = Rational(j) * l * l;
  Rational nl2 = Rational(n - l) * (n - l);
  Rational radicand = jl2 * jl2 + Rational(4) * j * j * l * l * nl2;
  return (Interval(jl2) + interval::sqrt(Interval(radicand))) / (Rational(2) * nl2);
}

inline ExtractionStep lemma2_amplify(const Hypergraph& h, const std::vector<Vertex>& w, std::size_t b1, std::size_t b2,
                                     const Spectrum& spectrum) {
  if (w.empty()) throw InputError("W must be nonempty");
  if (b1 >= h.edge_count() || b2 >= h.edge_count() || b1 == b2) throw InputError("invalid edge pair");
  if (static_cast<int>(h.uniformity()) != spectrum.n) throw InputError("spectrum built for a different n");
  detail::require_clique(h);
  std::vector<Vertex> ws = w;
  std::sort(ws.begin(), ws.end());
  const Edge& e1 = h.edge(b1);
  const Edge& e2 = h.edge(b2);
  if (detail::meets(e1, ws) || detail::meets(e2, ws)) throw InputError("B1 and B2 must both miss W");

  const std::size_t n = h.uniformity();
  Edge common, only1, only2;
  std::set_intersection(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(common));
  std::set_difference(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(only1));
  std::set_difference(e2.begin(), e2.end(), e1.begin(), e1.end(), std::back_inserter(only2));
  const std::size_t l = common.size();
  if (spectrum.contains(static_cast<int>(l))) {
    throw InputError("|B1 n B2| = " + std::to_string(l) + " lies in Q");
  }

  std::vector<std::size_t> restricted;  // E(W)
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    if (std::includes(h.edge(i).begin(), h.edge(i).end(), ws.begin(), ws.end())) restricted.push_back(i);
  }
  const std::size_t j = restricted.size();
  if (j == 0) throw InputError("E(W) is empty: no amplification step is possible");

  std::size_t e1_size = 0;
  for (std::size_t i : restricted) {
    const Edge& e = h.edge(i);
    if (intersects(e, common)) {
      ++e1_size;
    } else {
      ensure(intersects(e, only1) && intersects(e, only2), "E2 edge misses B1 or B2 in a clique");
    }
  }
  const std::size_t e2_size = j - e1_size;

  Vertex best_x = common.front();
  std::size_t best_single = 0;
  for (Vertex x : common) {
    std::size_t c = count_containing(h, detail::sorted_with(ws, {x}));
    if (c > best_single) {
      best_single = c;
      best_x = x;
    }
  }
  std::pair<Vertex, Vertex> best_pair{only1.front(), only2.front()};
  std::size_t best_double = 0;
  for (Vertex x : only1) {
    for (Vertex y : only2) {
      std::size_t c = count_containing(h, detail::sorted_with(ws, {x, y}));
      if (c > best_double) {
        best_double = c;
        best_pair = {x, y};
      }
    }
  }

  // Pigeonhole guarantees.
  ensure(Rational(best_single) * l >= e1_size, "best single vertex misses the |E1|/l pigeonhole bound");
  ensure(Rational(best_double) * (n - l) * (n - l) >= e2_size, "best pair misses the |E2|/(n-l)^2 pigeonhole bound");

  const Rational tau = spectrum.tau_amp;
  ExtractionStep step;
  step.j_before = j;
  step.b1 = b1;
  step.b2 = b2;
  step.l = l;
  step.e1_size = e1_size;
  step.e2_size = e2_size;
  step.worst_split = worst_case_split(j, l, n);

  const Rational one_claim = tau / Rational(n);
  const Rational two_claim = tau * tau / Rational(n * n);
  if (Rational(best_single, j) >= one_claim) {
    step.kind = StepKind::AddOne;
    step.added = {best_x};
    step.j_after = best_single;
    step.claimed_factor = one_claim;
  } else {
    step.kind = StepKind::AddTwo;
    step.added = {std::min(best_pair.first, best_pair.second), std::max(best_pair.first, best_pair.second)};
    step.j_after = best_double;
    step.claimed_factor = two_claim;
  }
  step.achieved_factor = Rational(step.j_after, j);
  ensure(step.achieved_factor >= step.claimed_factor,
         "amplification step failed both guarantees (j = " + std::to_string(j) + ", l = " + std::to_string(l) + ")");
  return step;
}

// ---------------------------------------------------------------------------
// Minimal k

using ThresholdRule = std::function<Rational(std::size_t)>;

struct MinimalK {
  std::size_t k = 0;
  std::vector<Vertex> w0;
  Vertex x = 0;
};

/// Smallest |W| such that some x in W has degree >= rule(|W|). A set of size
/// i qualifies iff the maximum degree does, so only the degree sequence is
/// scanned.
inline MinimalK minimal_k(const Hypergraph& h, const ThresholdRule& rule) {
  if (h.edge_count() == 0) throw InputError("minimal k needs at least one edge");
  Vertex x = 0;
  for (Vertex y = 0; y < h.vertex_count(); ++y) {
    if (h.degree(y) > h.degree(x)) x = y;
  }
  const Rational max_degree(h.degree(x));
  for (std::size_t i = 1; i <= h.vertex_count(); ++i) {
    if (max_degree >= rule(i)) {
      MinimalK out{i, {x}, x};
      for (Vertex y = 0; out.w0.size() < i; ++y) {
        if (y != x) out.w0.push_back(y);
      }
      std::sort(out.w0.begin(), out.w0.end());
      return out;
    }
  }
  throw HypothesisError("no vertex set size satisfies the threshold rule");
}

// ---------------------------------------------------------------------------
// Full chain

enum class Termination { ReachedK, Exhausted };

struct ExtractionTrace {
  std::size_t n = 0;
  int m = 0;
  std::size_t edge_count = 0;
  Rational threshold_total;  // T: the per-size threshold is T/|W|
  bool custom_threshold = false;
  std::size_t k_target = 0;  // minimal k under the rule
  Vertex start = 0;
  std::vector<ExtractionStep> steps;
  std::vector<Vertex> w_final;
  std::size_t k = 0;           // |W_final|
  std::size_t j_final = 0;     // |E(W_final)|
  Rational threshold_used;     // T / k_target, the guaranteed degree of the start vertex
  Termination termination = Termination::ReachedK;
  std::optional<bool> exhausted_diag_ok;  // evaluation oracle on the outside family
  BigInt A;
  Rational assembled_bound;  // k_target n^{n-1} / tau^{k_target - 1} + A
  bool bound_holds = false;  // |E| <= assembled_bound
  BigInt t3_bound;

  Rational claimed_product() const {
    Rational p = 1;
    for (const auto& s : steps) p *= s.claimed_factor;
    return p;
  }
};

/// Runs the greedy chain with threshold T = |E| - A(n, m) unless a custom T is
/// supplied.
inline ExtractionTrace run_extraction(const Hypergraph& h, int m, std::optional<Rational> custom_threshold = std::nullopt) {
  detail::require_clique(h);
  const std::size_t n = h.uniformity();
  if (n < 4) throw InputError("extraction needs n >= 4");
  if (h.edge_count() == 0) throw InputError("extraction needs at least one edge");
  const Spectrum sp = spectrum(static_cast<int>(n), m);

  ExtractionTrace trace;
  trace.n = n;
  trace.m = m;
  trace.edge_count = h.edge_count();
  trace.A = a_value(static_cast<int>(n), m);
  trace.custom_threshold = custom_threshold.has_value();
  trace.threshold_total = custom_threshold ? *custom_threshold : Rational(BigInt(h.edge_count()) - trace.A);

  const Rational total = trace.threshold_total;
  auto found = minimal_k(h, [&](std::size_t i) { return total / Rational(i); });
  ensure(custom_threshold || found.k <= n, "minimal k exceeds n on a clique");
  trace.k_target = found.k;
  trace.start = found.x;
  trace.threshold_used = total / Rational(found.k);
  ensure(Rational(h.degree(found.x)) >= trace.threshold_used, "start vertex is below the threshold");

  std::vector<Vertex> w{found.x};
  while (w.size() < trace.k_target) {
    auto branch = lemma1_dichotomy(h, w, total, sp.Q);
    if (std::holds_alternative<HighDegree>(branch)) {
      throw InvariantViolation("high-degree branch below the minimal k");
    }
    if (auto* ex = std::get_if<Exhausted>(&branch)) {
      trace.termination = Termination::Exhausted;
      if (ex->outside.size() >= 1) {
        std::vector<Edge> outside;
        for (std::size_t i : ex->outside) outside.push_back(h.edge(i));
        trace.exhausted_diag_ok = evaluation_oracle(outside, sp.allowed_intersections(), n).diag_ok;
        ensure(*trace.exhausted_diag_ok, "exhausted outside family has an intersection outside Q");
      }
      break;
    }
    const auto& pair = std::get<OutsidePair>(branch);
    ExtractionStep step = lemma2_amplify(h, w, pair.b1, pair.b2, sp);
    for (Vertex x : step.added) w.push_back(x);
    std::sort(w.begin(), w.end());
    trace.steps.push_back(std::move(step));
  }

  trace.w_final = w;
  trace.k = w.size();
  trace.j_final = count_containing(h, w);
  std::size_t added = 0;
  for (const auto& s : trace.steps) added += s.added.size();
  ensure(trace.k == 1 + added, "trace size does not match its steps");
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    ensure(s.achieved_factor >= s.claimed_factor, "step below its claimed factor");
    if (i + 1 < trace.steps.size()) ensure(s.j_after == trace.steps[i + 1].j_before, "trace steps do not chain");
  }
  ensure(Rational(trace.j_final) >= trace.threshold_used * trace.claimed_product(),
         "final |E(W)| is below the chained guarantee");

  const Rational tau_power = rpow(sp.tau_amp, static_cast<unsigned>(trace.k_target - 1));
  trace.assembled_bound =
      Rational(BigInt(trace.k_target) * ipow(BigInt(n), static_cast<unsigned>(n - 1))) / tau_power + Rational(trace.A);
  trace.bound_holds = Rational(h.edge_count()) <= trace.assembled_bound;
  trace.t3_bound = BigInt(4 * m) * ipow(BigInt(n), static_cast<unsigned>(n - 1)) + trace.A;
  if (!custom_threshold) {
    ensure(trace.bound_holds, "|E| exceeds the assembled bound");
  }
  return trace;
}

/// Checks, with exact rationals, the chain used by the amplification step for
/// every l with q < l <= n - q:
///   l n / (2 (n-l)^2) >= n^2 / (4m (n-l)^2) >= 1/(4m),
///   and (ln/(2(n-l)^2))^2 + n^2/(n-l)^2 >= 1, so that an/(jl) >= 1 + ln/(2(n-l)^2).
struct ChainFailure {
  int l = 0;
  std::string which;
};

inline std::optional<ChainFailure> amplification_chain_check(int n, int m) {
  const Spectrum s = spectrum(n, m);
  const Rational inv4m(1, 4 * m);
  for (int l = s.q + 1; l <= n - s.q; ++l) {
    const Rational gap2 = Rational((n - l) * (n - l));
    const Rational lhs = Rational(l * n) / (2 * gap2);
    const Rational middle = Rational(n * n) / (Rational(4 * m) * gap2);
    if (!(lhs >= middle)) return ChainFailure{l, "ln/(2(n-l)^2) >= n^2/(4m(n-l)^2)"};
    if (!(middle >= inv4m)) return ChainFailure{l, "n^2/(4m(n-l)^2) >= 1/(4m)"};
    if (!(Rational(1) + lhs >= s.tau_amp)) return ChainFailure{l, "1 + ln/(2(n-l)^2) >= tau"};
    if (!(lhs * lhs + Rational(n * n) / gap2 >= 1)) return ChainFailure{l, "square-root term >= 1"};
  }
  return std::nullopt;
}

}  // namespace hyclique
