#include <gtest/gtest.h>

#include <filesystem>

#include "support.hpp"

using namespace hyclique;
using testing_support::load_fixture;

namespace {

SearchOptions options(int n, int v_cap, SearchMode mode) {
  SearchOptions o;
  o.n = n;
  o.v_cap = v_cap;
  o.mode = mode;
  o.budget = std::chrono::duration<double>(60.0);
  return o;
}

/// Largest intersecting family on v vertices with chi = 3 (or tau = n), by
/// enumerating every intersecting family of n-subsets.
std::size_t brute_extremum(std::size_t n, std::size_t v, SearchMode mode) {
  auto all = testing_support::all_subsets(v, n);
  std::vector<Edge> current;
  std::size_t best = 0;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (current.size() > best) {
      Hypergraph h(n, v, current);
      bool ok = mode == SearchMode::Chi3 ? testing_support::brute_chi(h, 2) > 2 : testing_support::brute_tau(h) == n;
      if (ok) best = current.size();
    }
    for (std::size_t i = start; i < all.size(); ++i) {
      bool meets_all = true;
      for (const auto& e : current) meets_all = meets_all && intersects(e, all[i]);
      if (!meets_all) continue;
      current.push_back(all[i]);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

void expect_valid_witness(const SearchRecord& r) {
  ASSERT_TRUE(r.best_instance.has_value());
  const auto& h = *r.best_instance;
  EXPECT_EQ(h.uniformity(), static_cast<std::size_t>(r.n));
  EXPECT_EQ(h.edge_count(), r.best_size);
  EXPECT_TRUE(is_clique(h).is_clique);
  EXPECT_EQ(covering_number(h).tau, h.uniformity());
  if (r.mode == SearchMode::Chi3) {
    EXPECT_EQ(chromatic_number(h, 3).chi, 3u);
  }
  EXPECT_LE(BigInt(r.best_size), ipow(BigInt(r.n), static_cast<unsigned>(r.n)));
}

}  // namespace

TEST(Search, PairsGiveTheTriangle) {
  auto r = extremal_search(options(2, 6, SearchMode::Chi3));
  EXPECT_EQ(r.best_size, 3u);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.structural_cross_check, true);
  expect_valid_witness(r);
}

TEST(Search, TriplesFindAtLeastFano) {
  auto chi3 = extremal_search(options(3, 7, SearchMode::Chi3));
  EXPECT_GE(chi3.best_size, 7u);
  expect_valid_witness(chi3);
  auto tau = extremal_search(options(3, 7, SearchMode::TauN));
  EXPECT_GE(tau.best_size, 7u);
  expect_valid_witness(tau);
  EXPECT_GE(tau.best_size, chi3.best_size);
}

TEST(Search, AgreesWithBruteForceEnumeration) {
  for (auto mode : {SearchMode::Chi3, SearchMode::TauN}) {
    for (int v = 2; v <= 5; ++v) {
      auto r = extremal_search(options(2, v, mode));
      EXPECT_TRUE(r.exhaustive);
      EXPECT_EQ(r.best_size, brute_extremum(2, static_cast<std::size_t>(v), mode)) << v;
    }
    for (int v = 3; v <= 6; ++v) {
      auto r = extremal_search(options(3, v, mode));
      EXPECT_TRUE(r.exhaustive);
      EXPECT_EQ(r.best_size, brute_extremum(3, static_cast<std::size_t>(v), mode)) << v;
    }
  }
}

TEST(Search, MonotoneInVertexCap) {
  std::size_t previous = 0;
  for (int v = 3; v <= 7; ++v) {
    auto r = extremal_search(options(3, v, SearchMode::Chi3));
    EXPECT_GE(r.best_size, previous);
    previous = r.best_size;
  }
}

TEST(Search, DeterministicGivenSeedAndNodeLimit) {
  auto o = options(4, 8, SearchMode::Chi3);
  o.seed = 12345;
  o.node_limit = 400;
  auto a = extremal_search(o);
  auto b = extremal_search(o);
  EXPECT_FALSE(a.exhaustive);
  EXPECT_EQ(a.nodes, 400u);
  EXPECT_EQ(a.best_size, b.best_size);
  EXPECT_EQ(a.best_instance, b.best_instance);
  if (a.best_instance) expect_valid_witness(a);

  auto more = o;
  more.node_limit = 4000;
  EXPECT_GE(extremal_search(more).best_size, a.best_size);
}

TEST(Search, SeedDoesNotChangeCompleteResults) {
  auto o = options(3, 6, SearchMode::Chi3);
  auto plain = extremal_search(o);
  o.seed = 99;
  auto shuffled = extremal_search(o);
  EXPECT_EQ(plain.best_size, shuffled.best_size);
  EXPECT_EQ(plain.best_instance, shuffled.best_instance);
}

TEST(Search, Rejections) {
  EXPECT_THROW(extremal_search(options(1, 4, SearchMode::Chi3)), InputError);
  EXPECT_THROW(extremal_search(options(3, 2, SearchMode::Chi3)), InputError);
  EXPECT_THROW(extremal_search(options(3, 65, SearchMode::Chi3)), InputError);
  EXPECT_THROW(parse_search_mode("chi4"), InputError);
  EXPECT_EQ(parse_search_mode("tau-n"), SearchMode::TauN);
}

TEST(Search, RecordFileName) {
  auto r = extremal_search(options(2, 4, SearchMode::Chi3));
  auto dir = std::filesystem::temp_directory_path() / "hyclique-search-test";
  std::filesystem::remove_all(dir);
  auto path = write_record(r, dir);
  ASSERT_TRUE(path.has_value());
  EXPECT_EQ(path->filename(), "chi3-n2-e3.hg");
  std::ifstream in(*path);
  EXPECT_EQ(parse_hypergraph(in).graph, *r.best_instance);
  std::filesystem::remove_all(dir);
}

TEST(SubsetBound, FanoExamples) {
  auto r = verify_subset_bound(load_fixture("fano.hg"), 4);
  ASSERT_EQ(r.entries.size(), 4u);
  EXPECT_EQ(r.entries[0].max_count, 3u);
  EXPECT_EQ(r.entries[0].bound, Rational(9));
  EXPECT_EQ(r.entries[1].max_count, 1u);
  EXPECT_EQ(r.entries[1].bound, Rational(3));
  EXPECT_EQ(r.entries[3].max_count, 0u);
  EXPECT_TRUE(r.all_ok);
}

TEST(SubsetBound, HoldsOnThreeChromaticCliques) {
  for (const char* name : {"fano.hg", "triangle.hg", "complete_4_of_7.hg"}) {
    auto h = load_fixture(name);
    auto r = verify_subset_bound(h, h.uniformity() + 1);
    EXPECT_TRUE(r.all_ok) << name;
    for (const auto& e : r.entries) {
      EXPECT_EQ(e.max_count == 0 ? 0u : count_containing(h, e.witness), e.max_count);
    }
  }
  for (int n = 2; n <= 3; ++n) {
    auto r = extremal_search(options(n, n == 2 ? 5 : 7, SearchMode::Chi3));
    EXPECT_TRUE(verify_subset_bound(*r.best_instance, static_cast<std::size_t>(n)).all_ok);
  }
}

TEST(SubsetBound, RequiresThreeChromaticClique) {
  EXPECT_THROW(verify_subset_bound(load_fixture("star.hg"), 4), HypothesisError);
  EXPECT_THROW(verify_subset_bound(load_fixture("disjoint.hg"), 2), HypothesisError);
}

TEST(Search, StoredTripleWitnessIsReproduced) {
  auto stored = load_fixture("chi3-n3-e10.hg");
  EXPECT_TRUE(is_clique(stored).is_clique);
  EXPECT_EQ(chromatic_number(stored, 3).chi, 3u);
  EXPECT_EQ(covering_number(stored).tau, 3u);
  auto r = extremal_search(options(3, 7, SearchMode::Chi3));
  EXPECT_GE(r.best_size, stored.edge_count());
}
