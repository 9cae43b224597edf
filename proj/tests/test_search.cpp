#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "ffcube/error.hpp"
#include "ffcube/field.hpp"
#include "ffcube/rng.hpp"
#include "ffcube/search.hpp"
#include "ffcube/setfun.hpp"

using namespace ffcube;

namespace {

using PartsKey = std::vector<std::vector<elem>>;

PartsKey key_of(const std::vector<FpSubset>& parts) {
  PartsKey k;
  for (const auto& s : parts) k.push_back(s.elements());
  return k;
}

std::set<PartsKey> keys_of(const SearchOutcome& out) {
  std::set<PartsKey> ks;
  for (const auto& r : out.records) ks.insert(key_of(r.parts));
  return ks;
}

// ascending index combinations of {0..n-1}, size k
void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::uint64_t bit(elem x) { return 1ull << x; }

// oracle: every B of size k (no normalization), maximal candidate test
std::set<PartsKey> brute_pair_orbits(const FieldPtr& field, int k) {
  const elem p = field->p();
  REQUIRE(p <= 63);
  const auto cubes = FpSubset::cubes(field);
  std::uint64_t cmask = 0;
  for (elem c : field->cube_elements()) cmask |= bit(c);

  std::set<PartsKey> out;
  for_each_combination((int)p, k, [&](const std::vector<int>& idx) {
    std::vector<elem> b(idx.begin(), idx.end());
    std::vector<elem> astar;
    for (elem a = 0; a < p; ++a) {
      bool all = true;
      for (elem x : b)
        if (!(cmask >> field->add(a, x) & 1)) { all = false; break; }
      if (all) astar.push_back(a);
    }
    if (astar.size() < 2) return;
    std::uint64_t sums = 0;
    for (elem a : astar)
      for (elem x : b) sums |= bit(field->add(a, x));
    if (sums != cmask) return;
    out.insert(key_of(canonical_parts(
        DecompKind::Pair, {FpSubset::from_elements(field, astar),
                           FpSubset::from_elements(field, b)})));
  });
  return out;
}

// oracle: every subset of size in [2, floor(sqrt p)], flat enumeration
std::set<PartsKey> brute_self_sum_orbits(const FieldPtr& field) {
  const elem p = field->p();
  REQUIRE(p <= 63);
  std::uint64_t cmask = 0;
  for (elem c : field->cube_elements()) cmask |= bit(c);
  std::set<PartsKey> out;
  for (int sz = 2; (std::int64_t)sz * sz <= (std::int64_t)p; ++sz) {
    for_each_combination((int)p, sz, [&](const std::vector<int>& idx) {
      std::uint64_t sums = 0;
      for (int i : idx)
        for (int j : idx) sums |= bit(field->add((elem)i, (elem)j));
      if (sums != cmask) return;
      std::vector<elem> a(idx.begin(), idx.end());
      out.insert(key_of(
          canonical_parts(DecompKind::SelfSum, {FpSubset::from_elements(field, a)})));
    });
  }
  return out;
}

// oracle: 0 in A pinned (difference sets are translation invariant), recursion
// with the hereditary pairwise-difference filter
std::set<PartsKey> brute_diff_cover_orbits(const FieldPtr& field, int max_size) {
  const elem p = field->p();
  REQUIRE(p <= 63);
  std::uint64_t ctarget = bit(0);
  for (elem c : field->cube_elements()) ctarget |= bit(c);

  std::set<PartsKey> out;
  std::vector<elem> chosen = {0};
  std::function<void(elem)> dfs = [&](elem start) {
    if (chosen.size() >= 2) {
      std::uint64_t diffs = 0;
      for (elem x : chosen)
        for (elem y : chosen) diffs |= bit(field->sub(x, y));
      if (diffs == ctarget)
        out.insert(key_of(canonical_parts(DecompKind::DiffCover,
                                          {FpSubset::from_elements(field, chosen)})));
    }
    if ((int)chosen.size() == max_size) return;
    for (elem c = start; c < p; ++c) {
      bool ok = true;
      for (elem x : chosen)
        if (!(ctarget >> field->sub(c, x) & 1) || !(ctarget >> field->sub(x, c) & 1)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(c);
      dfs(c + 1);
      chosen.pop_back();
    }
  };
  dfs(1);
  return out;
}

// oracle: the two enumerated parts pinned to contain 0 (translations move
// into the free part), free part = maximal candidate
std::set<PartsKey> brute_triple_orbits(const FieldPtr& field, int max_part) {
  const elem p = field->p();
  REQUIRE(p <= 63);
  std::uint64_t cmask = 0;
  for (elem c : field->cube_elements()) cmask |= bit(c);

  std::vector<std::vector<elem>> smalls;
  for (int sz = 2; sz <= max_part; ++sz)
    for_each_combination((int)p - 1, sz - 1, [&](const std::vector<int>& idx) {
      std::vector<elem> s = {0};
      for (int i : idx) s.push_back((elem)(i + 1));
      smalls.push_back(s);
    });

  std::set<PartsKey> out;
  for (const auto& b : smalls)
    for (const auto& c : smalls) {
      std::vector<elem> sums;
      {
        std::uint64_t m = 0;
        for (elem x : b)
          for (elem y : c) m |= bit(field->add(x, y));
        for (elem s = 0; s < p; ++s)
          if (m >> s & 1) sums.push_back(s);
      }
      std::vector<elem> astar;
      for (elem a = 0; a < p; ++a) {
        bool all = true;
        for (elem s : sums)
          if (!(cmask >> field->add(a, s) & 1)) { all = false; break; }
        if (all) astar.push_back(a);
      }
      if (astar.size() < 2) continue;
      std::uint64_t total = 0;
      for (elem a : astar)
        for (elem s : sums) total |= bit(field->add(a, s));
      if (total != cmask) continue;
      out.insert(key_of(canonical_parts(
          DecompKind::Triple,
          {FpSubset::from_elements(field, astar), FpSubset::from_elements(field, b),
           FpSubset::from_elements(field, c)})));
    }
  return out;
}

template <typename Fn>
Errc thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

}  // namespace

TEST_CASE("pair search p = 13 k = 2: exactly the {1,5}/{0,7} orbit") {
  const auto field = build_field(13);
  const auto out = search_pair(field, 2);
  REQUIRE(out.records.size() == 1);
  CHECK(out.exhaustive);
  const auto& rec = out.records[0];
  CHECK(rec.kind == DecompKind::Pair);
  CHECK(rec.p == 13);
  CHECK(rec.k == 2);
  CHECK(rec.parts[0].elements() == std::vector<elem>{1, 5});
  CHECK(rec.parts[1].elements() == std::vector<elem>{0, 7});
  CHECK(validate_record(rec));
  CHECK(rec.exhaustive);
}

TEST_CASE("pair search agrees with the brute-force oracle") {
  for (elem p : {7u, 13u, 19u, 31u, 37u}) {
    const auto field = build_field(p);
    CHECK(keys_of(search_pair(field, 2)) == brute_pair_orbits(field, 2));
  }
  for (elem p : {13u, 19u, 31u}) {
    const auto field = build_field(p);
    CHECK(keys_of(search_pair(field, 3)) == brute_pair_orbits(field, 3));
  }
}

TEST_CASE("self-sum search agrees with the brute-force oracle (none exist here)") {
  for (elem p : {7u, 13u, 19u, 31u}) {
    const auto field = build_field(p);
    const auto out = search_self_sum(field);
    CHECK(out.exhaustive);
    CHECK(keys_of(out) == brute_self_sum_orbits(field));
    CHECK(out.records.empty());  // independently: no witness below 600
  }
}

TEST_CASE("difference-cover search: known witnesses and oracle agreement") {
  const auto f7 = build_field(7);
  const auto out7 = search_diff_cover(f7);
  REQUIRE(out7.records.size() == 1);
  CHECK(out7.records[0].parts[0].elements() == std::vector<elem>{0, 1});
  CHECK(validate_record(out7.records[0]));

  const auto f19 = build_field(19);
  const auto out19 = search_diff_cover(f19);
  REQUIRE(out19.records.size() == 1);
  CHECK(out19.records[0].parts[0].elements() == std::vector<elem>{0, 1, 8});

  CHECK(search_diff_cover(build_field(13)).records.empty());

  for (elem p : {7u, 13u, 19u, 31u}) {
    const auto field = build_field(p);
    CHECK(keys_of(search_diff_cover(field)) ==
          brute_diff_cover_orbits(field, (int)diff_cover_max_size(p)));
  }
}

TEST_CASE("triple search agrees with the brute-force oracle") {
  for (elem p : {13u, 31u}) {
    const auto field = build_field(p);
    const auto out = search_triple(field, 2);
    CHECK(out.exhaustive);
    CHECK(keys_of(out) == brute_triple_orbits(field, 2));
  }
  const auto f13 = build_field(13);
  CHECK(keys_of(search_triple(f13, 3)) == brute_triple_orbits(f13, 3));
  const auto f31 = build_field(31);
  CHECK(keys_of(search_triple(f31, 3)) == brute_triple_orbits(f31, 3));
}

TEST_CASE("canonical form: idempotent, orbit-invariant, 0 pinned where it should be") {
  const auto field = build_field(13);
  const auto A = FpSubset::from_elements(field, {1, 5});
  const auto B = FpSubset::from_elements(field, {0, 7});
  const auto canon = canonical_parts(DecompKind::Pair, {A, B});
  CHECK(canonical_parts(DecompKind::Pair, canon) == canon);
  CHECK(canon.back().test(0));

  const elem p = 13;
  SUBCASE("pair: translation, dilation, role swap") {
    for (elem c = 0; c < p; ++c)
      CHECK(canonical_parts(DecompKind::Pair, {A.shifted(c), B.shifted(p - c)}) == canon);
    for (elem lam : field->cube_elements())
      CHECK(canonical_parts(DecompKind::Pair, {A.dilated(lam), B.dilated(lam)}) == canon);
    CHECK(canonical_parts(DecompKind::Pair, {B, A}) == canon);  // equal sizes swap
  }

  SUBCASE("self-sum: dilation") {
    const auto S = FpSubset::from_elements(field, {2, 3, 11});
    const auto cs = canonical_parts(DecompKind::SelfSum, {S});
    for (elem lam : field->cube_elements())
      CHECK(canonical_parts(DecompKind::SelfSum, {S.dilated(lam)}) == cs);
    CHECK(canonical_parts(DecompKind::SelfSum, cs) == cs);
  }

  SUBCASE("diff cover: translation and dilation") {
    const auto f19 = build_field(19);
    const auto D = FpSubset::from_elements(f19, {0, 1, 8});
    const auto cd = canonical_parts(DecompKind::DiffCover, {D});
    CHECK(cd[0].test(0));
    for (elem t = 0; t < 19; ++t)
      CHECK(canonical_parts(DecompKind::DiffCover, {D.shifted(t)}) == cd);
    for (elem lam : f19->cube_elements())
      CHECK(canonical_parts(DecompKind::DiffCover, {D.dilated(lam)}) == cd);
  }

  SUBCASE("triple: role permutations, translations, dilation") {
    const auto X = FpSubset::from_elements(field, {1, 5, 6});
    const auto Y = FpSubset::from_elements(field, {0, 7});
    const auto Z = FpSubset::from_elements(field, {0, 2});
    const auto ct = canonical_parts(DecompKind::Triple, {X, Y, Z});
    CHECK(canonical_parts(DecompKind::Triple, {X, Z, Y}) == ct);
    Rng rng(5);
    for (int trial = 0; trial < 24; ++trial) {
      const elem t1 = (elem)rng.below(p), t2 = (elem)rng.below(p);
      const elem shift_back = field->sub(0, field->add(t1, t2));
      std::vector<FpSubset> moved = {X.shifted(shift_back), Y.shifted(t1), Z.shifted(t2)};
      const elem lam = field->cube_elements()[rng.below(4)];
      for (auto& s : moved) s = s.dilated(lam);
      std::swap(moved[rng.below(3)], moved[rng.below(3)]);
      CHECK(canonical_parts(DecompKind::Triple, moved) == ct);
    }
  }
}

TEST_CASE("validate_record recomputes the defining equation") {
  const auto field = build_field(13);
  DecompositionRecord rec;
  rec.p = 13;
  rec.kind = DecompKind::Pair;
  rec.parts = {FpSubset::from_elements(field, {1, 5}), FpSubset::from_elements(field, {0, 7})};
  CHECK(validate_record(rec));
  rec.parts[0].add(2);
  CHECK_FALSE(validate_record(rec));

  DecompositionRecord dc;
  dc.p = 7;
  dc.kind = DecompKind::DiffCover;
  dc.parts = {FpSubset::from_elements(build_field(7), {0, 1})};
  CHECK(validate_record(dc));
  dc.parts[0].add(3);
  CHECK_FALSE(validate_record(dc));

  DecompositionRecord ss;
  ss.p = 13;
  ss.kind = DecompKind::SelfSum;
  ss.parts = {FpSubset::from_elements(field, {1, 5})};
  CHECK_FALSE(validate_record(ss));  // {2,6,10} != C_13
}

TEST_CASE("size windows") {
  // frozen against a high-precision reference computation
  CHECK(self_sum_min_size(7) == 2);
  CHECK(self_sum_min_size(13) == 3);
  CHECK(self_sum_min_size(199) == 11);
  CHECK(self_sum_min_size(9109) == 78);
  CHECK(self_sum_max_size(7) == 2);
  CHECK(self_sum_max_size(13) == 3);
  CHECK(self_sum_max_size(199) == 14);
  CHECK(self_sum_max_size(10007) == 100);
  CHECK(diff_cover_min_size(7) == 2);
  CHECK(diff_cover_min_size(13) == 3);
  CHECK(diff_cover_min_size(19) == 3);
  CHECK(diff_cover_min_size(1009) == 19);
  CHECK(diff_cover_max_size(7) == 4);
  CHECK(diff_cover_max_size(13) == 5);
  CHECK(diff_cover_max_size(19) == 6);
  CHECK(diff_cover_max_size(31) == 8);
  CHECK(diff_cover_max_size(1009) == 41);
  CHECK(diff_cover_max_size(9109) == 123);
  CHECK(diff_cover_max_size(184291) == 551);
}

TEST_CASE("search error paths") {
  CHECK(thrown_code([] { search_pair(build_field(5), 2); }) == Errc::WrongResidueClass);
  CHECK(thrown_code([] { search_diff_cover(build_field(11)); }) == Errc::WrongResidueClass);
  CHECK(thrown_code([] { search_triple(build_field(184309), 2); }) == Errc::TripleExcluded);

  SearchParams tiny;
  tiny.work_cap = 1;
  CHECK(thrown_code([&] { search_pair(build_field(31), 4, tiny); }) == Errc::CapExceeded);
  CHECK(thrown_code([&] { search_triple(build_field(31), 3, tiny); }) == Errc::CapExceeded);

  SearchParams small_p;
  small_p.backtrack_max_p = 100;
  CHECK(thrown_code([&] { search_self_sum(build_field(103), small_p); }) == Errc::CapExceeded);
  CHECK(thrown_code([&] { search_diff_cover(build_field(103), small_p); }) == Errc::CapExceeded);
}

TEST_CASE("threaded searches return identical records") {
  for (elem p : {13u, 61u, 97u}) {
    const auto field = build_field(p);
    SearchParams one, four;
    one.threads = 1;
    four.threads = 4;
    const auto a = search_pair(field, 3, one);
    const auto b = search_pair(field, 3, four);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i)
      CHECK(key_of(a.records[i].parts) == key_of(b.records[i].parts));
    CHECK(a.exhaustive == b.exhaustive);
  }
}

TEST_CASE("records come out sorted and deduplicated") {
  // every record canonical, strictly increasing by part-size-then-lex key
  const auto field = build_field(61);
  const auto out = search_pair(field, 2);
  for (std::size_t i = 0; i < out.records.size(); ++i) {
    const auto& r = out.records[i];
    CHECK(key_of(canonical_parts(r.kind, r.parts)) == key_of(r.parts));
    CHECK(validate_record(r));
  }
  for (std::size_t i = 1; i < out.records.size(); ++i)
    CHECK(key_of(out.records[i - 1].parts) < key_of(out.records[i].parts));
}
