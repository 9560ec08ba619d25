#pragma once

// Restricted-intersection families and the polynomial rank argument.
//
// Every family member x gets F_x(y) = prod_{j in L} (j - <x, y>). Reducing
// y_i^k -> y_i leaves a multilinear polynomial of degree <= |L| that agrees
// with F_x on {0,1}^v. When all pairwise intersections lie in L (and n is not
// in L) the evaluation matrix F_{x_mu}(x_nu) is diagonal with nonzero
// diagonal, so the reduced polynomials are independent and the family has at
// most sum_{r <= |L|} C(v, r) members.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hyclique/bounds.hpp"
#include "hyclique/core.hpp"
#include "hyclique/errors.hpp"
#include "hyclique/numeric.hpp"

namespace hyclique {

using Monomial = std::vector<Vertex>;  // squarefree monomial as its ascending variable set

/// Degree first, then lexicographic.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

class MultilinearPoly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  MultilinearPoly(std::size_t v, std::size_t degree_cap) : v_(v), degree_cap_(degree_cap) {}

  std::size_t ambient_dimension() const { return v_; }
  std::size_t degree_cap() const { return degree_cap_; }
  const Terms& terms() const { return terms_; }

  Rational coefficient(const Monomial& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Monomial& s, const Rational& c) {
    ensure(s.size() <= degree_cap_, "monomial exceeds the degree cap");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Value at a 0/1 point given by the set of coordinates equal to 1.
  Rational evaluate(const VertexSet& y) const {
    Rational sum = 0;
    for (const auto& [s, c] : terms_) {
      if (std::all_of(s.begin(), s.end(), [&](Vertex i) { return y.contains(i); })) sum += c;
    }
    return sum;
  }

  bool operator==(const MultilinearPoly&) const = default;

 private:
  std::size_t v_;
  std::size_t degree_cap_;
  Terms terms_;
};

namespace detail {

inline std::vector<int> normalize_levels(std::vector<int> levels) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

}  // namespace detail

/// Multilinear reduction of prod_{j in L} (j - sum_{i in x} y_i), reducing
/// after every factor.
inline MultilinearPoly multilinearize_product(const std::vector<Vertex>& x, std::vector<int> levels, std::size_t v) {
  levels = detail::normalize_levels(std::move(levels));
  if (levels.empty()) throw InputError("the intersection set L must be nonempty");
  for (Vertex i : x) {
    if (i >= v) throw InputError("vertex " + std::to_string(i) + " outside the ambient dimension");
  }
  MultilinearPoly poly(v, levels.size());
  poly.add({}, 1);
  for (int j : levels) {
    MultilinearPoly next(v, levels.size());
    for (const auto& [s, c] : poly.terms()) {
      next.add(s, c * j);
      for (Vertex i : x) {
        Monomial t = s;
        auto pos = std::lower_bound(t.begin(), t.end(), i);
        if (pos == t.end() || *pos != i) t.insert(pos, i);
        next.add(t, -c);
      }
    }
    poly = std::move(next);
  }
  return poly;
}

// ---------------------------------------------------------------------------
// Exact rank

namespace detail {

inline constexpr std::uint64_t kRankPrime = 2305843009213693951ull;  // 2^61 - 1

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kRankPrime);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e != 0) {
    if (e & 1u) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t to_mod(const BigInt& x) {
  BigInt r = x % kRankPrime;
  if (r < 0) r += kRankPrime;
  return static_cast<std::uint64_t>(r);
}

inline std::size_t rank_mod_p(const std::vector<std::vector<BigInt>>& rows, std::size_t cols) {
  std::vector<std::vector<std::uint64_t>> m(rows.size(), std::vector<std::uint64_t>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = to_mod(rows[r][c]);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    std::uint64_t inv = pow_mod(m[rank][c], kRankPrime - 2);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      std::uint64_t f = mul_mod(m[r][c], inv);
      for (std::size_t cc = c; cc < cols; ++cc) {
        m[r][cc] = (m[r][cc] + kRankPrime - mul_mod(f, m[rank][cc])) % kRankPrime;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Rank over the rationals by fraction-free (Bareiss) elimination. Pivots are
/// taken column by column, topmost nonzero row first.
inline std::size_t bareiss_rank(std::vector<std::vector<BigInt>> m, std::size_t cols) {
  std::size_t rank = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    const BigInt& pivot = m[rank][c];
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      for (std::size_t cc = c + 1; cc < cols; ++cc) {
        BigInt num = pivot * m[r][cc] - m[r][c] * m[rank][cc];
        BigInt q, rem;
        boost::multiprecision::divide_qr(num, prev, q, rem);
        ensure(rem == 0, "Bareiss step is not exact");
        m[r][cc] = std::move(q);
      }
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

/// Exact rank of an integer matrix. Bareiss decides; the rank modulo 2^61-1
/// can only be lower and is kept as a consistency check.
inline std::size_t exact_rank(const std::vector<std::vector<BigInt>>& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  const std::size_t rank = bareiss_rank(rows, cols);
  ensure(detail::rank_mod_p(rows, cols) <= rank, "rank modulo p exceeds the rational rank");
  return rank;
}

// ---------------------------------------------------------------------------
// Certificates

struct EvaluationOracle {
  std::vector<std::vector<BigInt>> matrix;  // [mu][nu] = prod_j (j - |x_mu n x_nu|)
  bool diag_ok = false;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // first failing (mu, nu)
  std::optional<std::size_t> witness_intersection;
};

struct RankCertificate {
  std::size_t s = 0;
  std::size_t v = 0;
  std::size_t n = 0;
  std::vector<int> L;
  BigInt dim_bound;                      // sum_{r <= |L|} C(v, r)
  std::optional<BigInt> loose_dim_bound; // sum_{r <= 2q} C(v, r)
  std::optional<BigInt> a_bound;         // A(n, m)
  std::size_t columns = 0;               // monomials actually present
  std::size_t rank = 0;
  bool independent = false;
  bool within_bound = false;
  bool diag_ok = false;
  std::size_t eval_rank = 0;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::optional<std::size_t> witness_intersection;

  /// diag_ok => independent => rank = s => s <= dim_bound.
  bool sound() const {
    if (diag_ok && !independent) return false;
    if (independent && rank != s) return false;
    if (independent && !within_bound) return false;
    if (rank > s) return false;
    if (diag_ok && eval_rank != s) return false;
    return true;
  }
};

inline constexpr std::uint64_t kMaxBasisMonomials = 5'000'000;

namespace detail {

inline void validate_family(const std::vector<Edge>& family, const std::vector<int>& levels, std::size_t n,
                            std::optional<std::size_t> v) {
  if (family.empty()) throw InputError("the family is empty");
  if (std::find(levels.begin(), levels.end(), static_cast<int>(n)) != levels.end()) {
    throw InputError("L must not contain the member size n = " + std::to_string(n));
  }
  std::set<Edge> seen;
  for (const auto& x : family) {
    if (x.size() != n) {
      throw InputError("family member of size " + std::to_string(x.size()) + ", expected " + std::to_string(n));
    }
    if (!std::is_sorted(x.begin(), x.end()) || std::adjacent_find(x.begin(), x.end()) != x.end()) {
      throw InputError("family member is not an ascending vertex set");
    }
    if (v && !x.empty() && x.back() >= *v) throw InputError("family member outside the ambient dimension");
    if (!seen.insert(x).second) throw InputError("duplicate family member");
  }
}

inline BigInt product_over_levels(const std::vector<int>& levels, std::size_t intersection) {
  BigInt value = 1;
  for (int j : levels) value *= BigInt(j) - BigInt(intersection);
  return value;
}

}  // namespace detail

inline BigInt binomial_prefix_sum(std::size_t v, std::size_t top) {
  BigInt sum = 0;
  for (std::size_t r = 0; r <= top; ++r) sum += binomial(BigInt(v), static_cast<unsigned>(r));
  return sum;
}

/// Evaluates F_{x_mu}(x_nu) for every ordered pair.
inline EvaluationOracle evaluation_oracle(const std::vector<Edge>& family, std::vector<int> levels, std::size_t n) {
  levels = detail::normalize_levels(std::move(levels));
  detail::validate_family(family, levels, n, std::nullopt);
  const std::size_t s = family.size();
  EvaluationOracle out;
  out.matrix.assign(s, std::vector<BigInt>(s));
  out.diag_ok = true;
  for (std::size_t mu = 0; mu < s; ++mu) {
    for (std::size_t nu = 0; nu < s; ++nu) {
      std::size_t inter = intersection_size(family[mu], family[nu]);
      out.matrix[mu][nu] = detail::product_over_levels(levels, inter);
      bool ok = (mu == nu) ? out.matrix[mu][nu] != 0 : out.matrix[mu][nu] == 0;
      if (!ok && out.diag_ok) {
        out.diag_ok = false;
        out.witness = std::make_pair(mu, nu);
        out.witness_intersection = inter;
      }
    }
  }
  return out;
}

inline RankCertificate rank_certificate(const std::vector<Edge>& family, std::vector<int> levels, std::size_t v,
                                        std::size_t n, const std::optional<Spectrum>& spectrum = std::nullopt) {
  levels = detail::normalize_levels(std::move(levels));
  if (levels.empty()) throw InputError("the intersection set L must be nonempty");
  detail::validate_family(family, levels, n, v);

  RankCertificate cert;
  cert.s = family.size();
  cert.v = v;
  cert.n = n;
  cert.L = levels;
  cert.dim_bound = binomial_prefix_sum(v, levels.size());
  if (cert.dim_bound > kMaxBasisMonomials) {
    throw InputError("basis has " + cert.dim_bound.str() + " monomials, above the 5e6 limit");
  }
  if (spectrum) {
    cert.loose_dim_bound = binomial_prefix_sum(v, static_cast<std::size_t>(2 * spectrum->q));
    cert.a_bound = a_value(spectrum->n, spectrum->m);
  }

  std::vector<MultilinearPoly> polys;
  polys.reserve(family.size());
  std::set<Monomial, MonomialOrder> support;
  for (const auto& x : family) {
    polys.push_back(multilinearize_product(x, levels, v));
    for (const auto& [s, c] : polys.back().terms()) support.insert(s);
  }
  std::map<Monomial, std::size_t, MonomialOrder> column;
  for (const auto& s : support) column.emplace(s, column.size());
  cert.columns = column.size();

  std::vector<std::vector<BigInt>> rows(family.size(), std::vector<BigInt>(cert.columns));
  for (std::size_t r = 0; r < polys.size(); ++r) {
    for (const auto& [s, c] : polys[r].terms()) {
      ensure(denominator(c) == 1, "product polynomial has a non-integer coefficient");
      rows[r][column.at(s)] = numerator(c);
    }
  }
  cert.rank = exact_rank(rows, cert.columns);
  cert.independent = cert.rank == cert.s;
  cert.within_bound = BigInt(cert.s) <= cert.dim_bound;

  auto oracle = evaluation_oracle(family, levels, n);
  cert.diag_ok = oracle.diag_ok;
  cert.witness = oracle.witness;
  cert.witness_intersection = oracle.witness_intersection;
  cert.eval_rank = exact_rank(oracle.matrix, cert.s);
  ensure(cert.sound(), "rank certificate soundness chain failed");
  return cert;
}

}  // namespace hyclique
