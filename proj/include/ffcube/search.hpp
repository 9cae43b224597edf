#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffcube/field.hpp"

namespace ffcube {

enum class DecompKind { Pair, SelfSum, DiffCover, Triple };

const char* decomp_kind_name(DecompKind k) noexcept;

/**
 * One witness of an additive decomposition of the cube set C_p, stored in
 * canonical form: lexicographically least representative of its orbit under
 * the symmetries that preserve the decomposition (simultaneous dilation by
 * nonzero cubes, plus part translations where the target set is preserved).
 * Where translations act, parts.back() contains 0.
 */
struct DecompositionRecord {
  elem p = 0;
  DecompKind kind = DecompKind::Pair;
  std::vector<FpSubset> parts;
  bool exhaustive = true;
  std::string normalization;  // human-readable canonical-form convention
  int k = 0;                  // enumerated part size (pair) or max part size (triple)
};

struct SearchParams {
  std::uint64_t work_cap = 1'000'000'000;  // rough per-search candidate work limit
  elem backtrack_max_p = 1000;             // self-sum / diff-cover size cap
  int threads = 1;
};

struct SearchOutcome {
  std::vector<DecompositionRecord> records;
  bool exhaustive = true;
  std::string note;
};

// A + B = C_p with |B| = k, 0 in B. Enumerates B up to symmetry and tests
// the maximal candidate A* = intersection of C_p - b over b in B; a valid A
// exists for a given B iff A* works.
SearchOutcome search_pair(const FieldPtr& field, int k, const SearchParams& sp = {});

// A + A = C_p. Backtracking over {x : 2x in C_p} with pairwise-sum pruning
// and the exact size window (counting lower bound, sqrt(p) upper bound).
SearchOutcome search_self_sum(const FieldPtr& field, const SearchParams& sp = {});

// A - A = C_p ∪ {0}. Backtracking with 0 in A and all pairwise differences
// constrained to cubes.
SearchOutcome search_diff_cover(const FieldPtr& field, const SearchParams& sp = {});

// A + B + C = C_p with the two enumerated parts of size in [2, max_part].
// Refuses for p > 184291 where no three-part decomposition exists.
SearchOutcome search_triple(const FieldPtr& field, int max_part, const SearchParams& sp = {});

// Canonical representative of a record's part list (used internally by the
// searches; exposed for tests and for replaying stored records).
std::vector<FpSubset> canonical_parts(DecompKind kind, const std::vector<FpSubset>& parts);

// Recomputes the defining equation of the record from its parts.
bool validate_record(const DecompositionRecord& rec);

// Exact size windows used as search prunes.
std::int64_t self_sum_min_size(elem p);   // least a with a(a+1)/2 >= (p-1)/3
std::int64_t self_sum_max_size(elem p);   // floor sqrt(p)
std::int64_t diff_cover_min_size(elem p); // least a with a(a-1) >= (p-1)/3
std::int64_t diff_cover_max_size(elem p); // largest a with 4a <= (1+sqrt(17))(1+sqrt(p))

}  // namespace ffcube
