#pragma once

#include <string>
#include <vector>

#include "ffcube/search.hpp"

namespace ffcube {

/**
 * One size bound evaluated against a decomposition record.
 *
 * Every comparison is between two exact integers; bounds stated against
 * sqrt(p) are rationalized by squaring first (see le_k_sqrt), and lhs/rhs
 * hold the integers that were actually compared, as decimal strings.
 * Inapplicable checks are still listed (applicable = false, holds = true)
 * so reports always carry the full, fixed set of check ids.
 */
struct BoundCheck {
  std::string id;
  bool applicable = false;
  bool holds = true;
  bool tight = false;       // equality in the exact comparison
  std::string lhs, rhs;     // decimal strings of the compared integers
  std::string rel;          // "<=" or ">="
  std::string note;
};

struct BoundReport {
  elem p = 0;
  DecompKind kind = DecompKind::Pair;
  std::vector<std::int64_t> part_sizes;
  std::vector<BoundCheck> checks;
  bool all_hold = true;     // conjunction over applicable checks
};

// Evaluates every size bound this library knows against the record.
// Pair records get the two-part bounds (the large-p pair of checks only
// when p >= 9096); self-sum and difference-cover records get theirs;
// three-part records have no applicable size bound here.
BoundReport check_bounds(const DecompositionRecord& rec);

}  // namespace ffcube
