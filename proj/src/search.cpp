#include "ffcube/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "ffcube/exact.hpp"
#include "ffcube/setfun.hpp"

namespace ffcube {

const char* decomp_kind_name(DecompKind k) noexcept {
  switch (k) {
    case DecompKind::Pair: return "pair";
    case DecompKind::SelfSum: return "self-sum";
    case DecompKind::DiffCover: return "diff-cover";
    case DecompKind::Triple: return "triple";
  }
  return "unknown";
}

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
  if (n == 0) return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

using Key = std::vector<elem>;

Key key_of(const std::vector<FpSubset>& parts) {
  Key k;
  for (const auto& s : parts)
    for (elem x : s.elements()) k.push_back(x);
  return k;
}

void consider(std::vector<FpSubset> cand, Key& best_key, std::vector<FpSubset>& best) {
  Key k = key_of(cand);
  if (best.empty() || k < best_key) {
    best_key = std::move(k);
    best = std::move(cand);
  }
}

// Equation-preserving symmetries:
//   pair       (A+y, B-y) and simultaneous dilation by a cube
//   self-sum   dilation only (translations shift the sumset)
//   diff-cover any translation, and dilation
//   triple     (A+y+z, B-y, C-z) and simultaneous dilation
std::vector<FpSubset> canonical_pair_like(const FpSubset& A, const FpSubset& B) {
  const auto field = A.field();
  const elem p = field->p();
  Key best_key;
  std::vector<FpSubset> best;
  const bool swappable = A.card() == B.card();
  for (int role = 0; role < (swappable ? 2 : 1); ++role) {
    const FpSubset& P = role == 0 ? A : B;
    const FpSubset& Q = role == 0 ? B : A;
    for (elem l : field->cube_elements()) {
      FpSubset Pd = P.dilated(l), Qd = Q.dilated(l);
      for (elem b : Qd.elements())
        consider({Pd.shifted(b), Qd.shifted(p - b)}, best_key, best);
    }
  }
  return best;
}

std::vector<FpSubset> canonical_self_sum(const FpSubset& A) {
  Key best_key;
  std::vector<FpSubset> best;
  for (elem l : A.field()->cube_elements()) consider({A.dilated(l)}, best_key, best);
  return best;
}

std::vector<FpSubset> canonical_diff_cover(const FpSubset& A) {
  const elem p = A.field()->p();
  Key best_key;
  std::vector<FpSubset> best;
  for (elem t : A.elements()) {
    FpSubset At = A.shifted(p - t);  // contains 0
    for (elem l : A.field()->cube_elements()) consider({At.dilated(l)}, best_key, best);
  }
  return best;
}

std::vector<FpSubset> canonical_triple(const std::vector<FpSubset>& parts) {
  const auto field = parts[0].field();
  const elem p = field->p();
  Key best_key;
  std::vector<FpSubset> best;
  for (int free = 0; free < 3; ++free) {
    const FpSubset& F = parts[free];
    const FpSubset& P = parts[(free + 1) % 3];
    const FpSubset& Q = parts[(free + 2) % 3];
    for (elem l : field->cube_elements()) {
      FpSubset Fd = F.dilated(l), Pd = P.dilated(l), Qd = Q.dilated(l);
      for (elem b : Pd.elements()) {
        FpSubset Pb = Pd.shifted(p - b);
        for (elem c : Qd.elements()) {
          FpSubset Qc = Qd.shifted(p - c);
          FpSubset Fs = Fd.shifted(field->add(b, c));
          const bool p_first =
              Pb.card() < Qc.card() || (Pb.card() == Qc.card() && !Qc.lex_less(Pb));
          if (p_first)
            consider({Fs, Pb, Qc}, best_key, best);
          else
            consider({Fs, Qc, Pb}, best_key, best);
        }
      }
    }
  }
  return best;
}

const char* kNormPair = "0 in last part; lex-least under part translation and cube dilation";
const char* kNormSelfSum = "lex-least under cube dilation";
const char* kNormDiffCover = "0 in part; lex-least under translation and cube dilation";
const char* kNormTriple = "0 in enumerated parts; lex-least under translations and cube dilation";

void require_one_mod_three(const FieldPtr& field) {
  if (!field->one_mod_three())
    fail(Errc::WrongResidueClass,
         "decomposition search needs p == 1 (mod 3), got p=" + std::to_string(field->p()));
}

// Deterministic strided parallel driver: worker t handles indices i == t (mod n).
// The first worker exception is rethrown on the calling thread.
void run_strided(std::size_t count, int threads, const std::function<void(std::size_t, int)>& body) {
  const int n = std::max(1, threads);
  if (n == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n));
  std::exception_ptr first_error;
  std::mutex error_mx;
  for (int t = 0; t < n; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = static_cast<std::size_t>(t); i < count;
             i += static_cast<std::size_t>(n))
          body(i, t);
      } catch (...) {
        std::lock_guard<std::mutex> lk(error_mx);
        if (!first_error) first_error = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct RecordSink {
  std::map<Key, DecompositionRecord> by_key;

  void emit(elem p, DecompKind kind, const std::vector<FpSubset>& parts, const char* norm, int k) {
    DecompositionRecord rec;
    rec.p = p;
    rec.kind = kind;
    rec.parts = canonical_parts(kind, parts);
    rec.normalization = norm;
    rec.k = k;
    if (!validate_record(rec))
      fail(Errc::Internal, "canonical record failed re-validation (p=" + std::to_string(p) + ")");
    Key key = key_of(rec.parts);
    by_key.emplace(std::move(key), std::move(rec));
  }

  void absorb(RecordSink& other) {
    for (auto& [key, r] : other.by_key) by_key.emplace(key, std::move(r));
  }

  std::vector<DecompositionRecord> sorted() {
    std::vector<DecompositionRecord> out;
    out.reserve(by_key.size());
    for (auto& [k, r] : by_key) out.push_back(std::move(r));
    return out;
  }
};

bigint binomial(std::int64_t n, int m) {
  bigint c = 1;
  for (int i = 0; i < m; ++i) c = c * (n - i) / (i + 1);
  return c;
}

}  // namespace

std::vector<FpSubset> canonical_parts(DecompKind kind, const std::vector<FpSubset>& parts) {
  switch (kind) {
    case DecompKind::Pair:
      if (parts.size() != 2) fail(Errc::BadInput, "pair record needs 2 parts");
      return canonical_pair_like(parts[0], parts[1]);
    case DecompKind::SelfSum:
      if (parts.size() != 1) fail(Errc::BadInput, "self-sum record needs 1 part");
      return canonical_self_sum(parts[0]);
    case DecompKind::DiffCover:
      if (parts.size() != 1) fail(Errc::BadInput, "diff-cover record needs 1 part");
      return canonical_diff_cover(parts[0]);
    case DecompKind::Triple:
      if (parts.size() != 3) fail(Errc::BadInput, "triple record needs 3 parts");
      return canonical_triple(parts);
  }
  fail(Errc::BadInput, "unknown record kind");
}

bool validate_record(const DecompositionRecord& rec) {
  if (rec.parts.empty()) return false;
  const auto field = rec.parts[0].field();
  const FpSubset cubes = FpSubset::cubes(field);
  for (const auto& part : rec.parts)
    if (part.empty()) return false;
  switch (rec.kind) {
    case DecompKind::Pair:
      return rec.parts.size() == 2 && sumset(rec.parts[0], rec.parts[1]) == cubes;
    case DecompKind::SelfSum:
      return rec.parts.size() == 1 && sumset(rec.parts[0], rec.parts[0]) == cubes;
    case DecompKind::DiffCover: {
      if (rec.parts.size() != 1) return false;
      FpSubset want = cubes;
      want.add(0);
      return difference_set(rec.parts[0]) == want;
    }
    case DecompKind::Triple:
      return rec.parts.size() == 3 && k_fold_sumset(rec.parts) == cubes;
  }
  return false;
}

// ---------------------------------------------------------------------------
// pair search

SearchOutcome search_pair(const FieldPtr& field, int k, const SearchParams& sp) {
  require_one_mod_three(field);
  if (k < 2) fail(Errc::BadInput, "pair search needs k >= 2");
  const elem p = field->p();
  const FpSubset C = FpSubset::cubes(field);
  // any valid A has |A| * k >= |C_p| by counting
  const std::int64_t amin =
      std::max<std::int64_t>(2, (((std::int64_t)p - 1) / 3 + k - 1) / k);

  auto test_candidate = [&](const std::vector<elem>& b_nonzero, RecordSink& local) {
    FpSubset Astar = C;
    for (elem b : b_nonzero) Astar = Astar.intersect(C.shifted(p - b));
    if (Astar.card() < amin) return;
    FpSubset B(field);
    B.add(0);
    for (elem b : b_nonzero) B.add(b);
    if (sumset(Astar, B) == C) local.emit(p, DecompKind::Pair, {Astar, B}, kNormPair, k);
  };

  RecordSink sink;
  if (k == 2) {
    // one representative b per cube coset: {0,b} ~ {0,lb} for every cube l
    elem reps[3] = {0, 0, 0};
    for (elem b = 1; b < p && (!reps[0] || !reps[1] || !reps[2]); ++b) {
      auto& slot = reps[static_cast<std::size_t>(field->cube_class(b))];
      if (slot == 0) slot = b;
    }
    for (elem b : reps)
      if (b != 0) test_candidate({b}, sink);
  } else {
    const int m = k - 1;
    const bigint work = binomial(p - 1, m) * k * (p / 64 + 1);
    if (work > sp.work_cap)
      fail(Errc::CapExceeded,
           "pair search work " + big_str(work) + " exceeds cap " + std::to_string(sp.work_cap));

    std::vector<RecordSink> locals(static_cast<std::size_t>(std::max(1, sp.threads)));
    run_strided(p - 1, sp.threads, [&](std::size_t i, int tid) {
      std::vector<elem> tup(static_cast<std::size_t>(m));
      tup[0] = static_cast<elem>(i + 1);
      std::vector<elem> trans;
      auto dfs = [&](auto&& self, int d) -> void {
        if (d == m) {
          // keep a tuple only if it is lex-least among the k translates
          // of B = {0} ∪ tup that contain 0
          for (elem t : tup) {
            trans.clear();
            trans.push_back(field->neg(t));
            for (elem b : tup)
              if (b != t) trans.push_back(field->sub(b, t));
            std::sort(trans.begin(), trans.end());
            if (std::lexicographical_compare(trans.begin(), trans.end(), tup.begin(), tup.end()))
              return;
          }
          test_candidate(tup, locals[static_cast<std::size_t>(tid)]);
          return;
        }
        for (elem v = tup[static_cast<std::size_t>(d) - 1] + 1; v < p; ++v) {
          tup[static_cast<std::size_t>(d)] = v;
          self(self, d + 1);
        }
      };
      dfs(dfs, 1);
    });
    for (auto& loc : locals) sink.absorb(loc);
  }

  SearchOutcome out;
  out.records = sink.sorted();
  out.exhaustive = true;
  return out;
}

// ---------------------------------------------------------------------------
// size windows

std::int64_t self_sum_min_size(elem p) {
  std::int64_t a = 1;
  while (a * (a + 1) / 2 < ((std::int64_t)p - 1) / 3) ++a;
  return a;
}

std::int64_t self_sum_max_size(elem p) { return (std::int64_t)isqrt_u64(p); }

std::int64_t diff_cover_min_size(elem p) {
  std::int64_t a = 1;
  while (a * (a - 1) < ((std::int64_t)p - 1) / 3) ++a;
  return a;
}

std::int64_t diff_cover_max_size(elem p) {
  // largest a with 4a <= (1 + sqrt(17))(1 + sqrt(p)), decided exactly:
  // rationalizes to L^2 - 2L - 16 - 16p <= (2L + 32) sqrt(p), L = 4a
  auto pred = [&](std::int64_t a) {
    const bigint L = 4 * a;
    return le_k_sqrt(L * L - 2 * L - 16 - 16 * (std::int64_t)p, 2 * L + 32, p);
  };
  std::int64_t a = 1;
  while (pred(a + 1)) ++a;
  return a;
}

// ---------------------------------------------------------------------------
// self-sum search

SearchOutcome search_self_sum(const FieldPtr& field, const SearchParams& sp) {
  require_one_mod_three(field);
  const elem p = field->p();
  if (p > sp.backtrack_max_p)
    fail(Errc::CapExceeded, "self-sum search capped at p <= " + std::to_string(sp.backtrack_max_p));

  SearchOutcome out;
  const std::int64_t amin = self_sum_min_size(p);
  const std::int64_t amax = self_sum_max_size(p);
  if (amin > amax) {
    out.note = "size window empty: counting lower bound exceeds sqrt(p)";
    return out;
  }

  const FpSubset C = FpSubset::cubes(field);
  // members must satisfy 2x in C_p (x + x is a sum)
  std::vector<elem> S;
  for (elem x = 1; x < p; ++x)
    if (field->is_cube(field->add(x, x))) S.push_back(x);

  RecordSink sink;
  std::vector<elem> chosen;
  auto dfs = [&](auto&& self, std::size_t idx) -> void {
    const auto sz = (std::int64_t)chosen.size();
    if (sz >= amin) {
      FpSubset A = FpSubset::from_elements(field, chosen);
      if (sumset(A, A) == C) sink.emit(p, DecompKind::SelfSum, {A}, kNormSelfSum, 0);
    }
    if (sz == amax) return;
    for (std::size_t i = idx; i < S.size(); ++i) {
      if (sz + (std::int64_t)(S.size() - i) < amin) break;
      const elem e = S[i];
      bool ok = true;
      for (elem a : chosen)
        if (!field->is_cube(field->add(e, a))) { ok = false; break; }
      if (!ok) continue;
      chosen.push_back(e);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0);

  out.records = sink.sorted();
  out.exhaustive = true;
  return out;
}

// ---------------------------------------------------------------------------
// diff-cover search

SearchOutcome search_diff_cover(const FieldPtr& field, const SearchParams& sp) {
  require_one_mod_three(field);
  const elem p = field->p();
  if (p > sp.backtrack_max_p)
    fail(Errc::CapExceeded, "diff-cover search capped at p <= " + std::to_string(sp.backtrack_max_p));

  const std::int64_t amin = diff_cover_min_size(p);
  const std::int64_t amax = diff_cover_max_size(p);
  const FpSubset C = FpSubset::cubes(field);
  FpSubset target = C;
  target.add(0);

  // normalized to contain 0; the other members then lie in C_p, and every
  // pairwise difference must be a cube
  const std::vector<elem>& S = field->cube_elements();

  RecordSink sink;
  std::vector<elem> chosen{0};
  auto dfs = [&](auto&& self, std::size_t idx) -> void {
    const auto sz = (std::int64_t)chosen.size();
    if (sz >= amin) {
      FpSubset A = FpSubset::from_elements(field, chosen);
      if (difference_set(A) == target) sink.emit(p, DecompKind::DiffCover, {A}, kNormDiffCover, 0);
    }
    if (sz == amax) return;
    for (std::size_t i = idx; i < S.size(); ++i) {
      if (sz + (std::int64_t)(S.size() - i) < amin) break;
      const elem e = S[i];
      bool ok = true;
      for (elem a : chosen)
        if (a != 0 && !field->is_cube(field->sub(e, a))) { ok = false; break; }
      if (!ok) continue;
      chosen.push_back(e);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0);

  SearchOutcome out;
  out.records = sink.sorted();
  out.exhaustive = true;
  return out;
}

// ---------------------------------------------------------------------------
// triple search

SearchOutcome search_triple(const FieldPtr& field, int max_part, const SearchParams& sp) {
  require_one_mod_three(field);
  const elem p = field->p();
  if (p > 184291)
    fail(Errc::TripleExcluded,
         "no three-part decomposition of the cube set exists for p > 184291; nothing to search");
  if (max_part < 2) fail(Errc::BadInput, "triple search needs max_part >= 2");

  bigint work = 0;
  for (int sB = 2; sB <= max_part; ++sB)
    for (int sC = sB; sC <= max_part; ++sC)
      work += binomial(p - 1, sB - 1) * binomial(p - 1, sC - 1) * (p / 64 + 1);
  if (work > sp.work_cap)
    fail(Errc::CapExceeded,
         "triple search work " + big_str(work) + " exceeds cap " + std::to_string(sp.work_cap));

  const FpSubset C = FpSubset::cubes(field);
  const std::int64_t cube_count = (std::int64_t)C.card();

  std::vector<RecordSink> locals(static_cast<std::size_t>(std::max(1, sp.threads)));

  // enumerate ascending nonzero tuples for B and C parts; for equal sizes
  // require tupB <= tupC so unordered pairs are visited once
  auto test_pair_of_parts = [&](const std::vector<elem>& tupB, const std::vector<elem>& tupC,
                                RecordSink& local) {
    FpSubset B(field), C2(field);
    B.add(0);
    for (elem b : tupB) B.add(b);
    C2.add(0);
    for (elem c : tupC) C2.add(c);
    const FpSubset sums = sumset(B, C2);
    FpSubset Astar = C;
    bool dead = false;
    sums.for_each([&](elem s) {
      if (dead) return;
      Astar = Astar.intersect(s == 0 ? C : C.shifted(p - s));
      if (Astar.card() < 2) dead = true;
    });
    if (dead || Astar.card() < 2) return;
    if (Astar.card() * sums.card() < cube_count) return;  // counting: cannot cover
    if (sumset(sumset(Astar, B), C2) == C)
      local.emit(p, DecompKind::Triple, {Astar, B, C2}, kNormTriple, max_part);
  };

  for (int sB = 2; sB <= max_part; ++sB) {
    for (int sC = sB; sC <= max_part; ++sC) {
      const int mB = sB - 1, mC = sC - 1;
      run_strided(p - 1, sp.threads, [&](std::size_t i, int tid) {
        std::vector<elem> tupB(static_cast<std::size_t>(mB));
        tupB[0] = static_cast<elem>(i + 1);
        auto dfsB = [&](auto&& selfB, int d) -> void {
          if (d == mB) {
            std::vector<elem> tupC(static_cast<std::size_t>(mC));
            auto dfsC = [&](auto&& selfC, int e) -> void {
              if (e == mC) {
                if (sB == sC && std::lexicographical_compare(tupC.begin(), tupC.end(),
                                                             tupB.begin(), tupB.end()))
                  return;
                test_pair_of_parts(tupB, tupC, locals[static_cast<std::size_t>(tid)]);
                return;
              }
              for (elem v = e == 0 ? 1 : tupC[static_cast<std::size_t>(e) - 1] + 1; v < p; ++v) {
                tupC[static_cast<std::size_t>(e)] = v;
                selfC(selfC, e + 1);
              }
            };
            dfsC(dfsC, 0);
            return;
          }
          for (elem v = tupB[static_cast<std::size_t>(d) - 1] + 1; v < p; ++v) {
            tupB[static_cast<std::size_t>(d)] = v;
            selfB(selfB, d + 1);
          }
        };
        dfsB(dfsB, 1);
      });
    }
  }

  RecordSink sink;
  for (auto& loc : locals) sink.absorb(loc);

  SearchOutcome out;
  out.records = sink.sorted();
  out.exhaustive = true;
  out.note = "two smallest parts restricted to size <= " + std::to_string(max_part);
  return out;
}

}  // namespace ffcube
