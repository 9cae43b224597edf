#include "ffcube/bounds.hpp"

#include <algorithm>

#include "ffcube/exact.hpp"

namespace ffcube {

namespace {

// lhs >= rhs, both plain integers
BoundCheck ge_check(std::string id, const bigint& lhs, const bigint& rhs) {
  BoundCheck c;
  c.id = std::move(id);
  c.applicable = true;
  c.lhs = big_str(lhs);
  c.rhs = big_str(rhs);
  c.rel = ">=";
  c.holds = lhs >= rhs;
  c.tight = lhs == rhs;
  return c;
}

// lhs <= rhs, both plain integers
BoundCheck le_check(std::string id, const bigint& lhs, const bigint& rhs) {
  BoundCheck c;
  c.id = std::move(id);
  c.applicable = true;
  c.lhs = big_str(lhs);
  c.rhs = big_str(rhs);
  c.rel = "<=";
  c.holds = lhs <= rhs;
  c.tight = lhs == rhs;
  return c;
}

// L <= k*sqrt(p), decided by squaring; the report shows the squared pair
// unless L is nonpositive, in which case the bound is vacuous.
BoundCheck sqrt_le_check(std::string id, const bigint& L, const bigint& k, const bigint& p) {
  BoundCheck c;
  c.id = std::move(id);
  c.applicable = true;
  c.rel = "<=";
  if (L <= 0) {
    c.lhs = big_str(L);
    c.rhs = "0";
    c.holds = true;
    c.tight = L == 0;
    c.note = "left side nonpositive, bound vacuous";
  } else {
    const bigint l2 = L * L, r2 = k * k * p;
    c.lhs = big_str(l2);
    c.rhs = big_str(r2);
    c.holds = l2 <= r2;
    c.tight = l2 == r2;
  }
  return c;
}

// sqrt(p) <= ... style lower bounds presented squared: lhs >= rhs with lhs = L^2
BoundCheck sqrt_ge_check(std::string id, const bigint& L, const bigint& rhs_sq) {
  BoundCheck c;
  c.id = std::move(id);
  c.applicable = true;
  c.rel = ">=";
  const bigint l2 = L * L;
  c.lhs = big_str(l2);
  c.rhs = big_str(rhs_sq);
  c.holds = L >= 0 && l2 >= rhs_sq;
  c.tight = c.holds && l2 == rhs_sq;
  return c;
}

BoundCheck inapplicable(std::string id, std::string note) {
  BoundCheck c;
  c.id = std::move(id);
  c.applicable = false;
  c.holds = true;
  c.note = std::move(note);
  return c;
}

bigint pow3(std::int64_t e) {
  bigint r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= 3;
  return r;
}

}  // namespace

BoundReport check_bounds(const DecompositionRecord& rec) {
  BoundReport rep;
  rep.p = rec.p;
  rep.kind = rec.kind;
  for (const auto& part : rec.parts) rep.part_sizes.push_back(part.card());

  const bigint p = rec.p;
  const bool is_pair = rec.kind == DecompKind::Pair;
  const bool is_self = rec.kind == DecompKind::SelfSum;
  const bool is_diff = rec.kind == DecompKind::DiffCover;

  const std::int64_t a0 = rep.part_sizes.empty() ? 0 : rep.part_sizes.front();
  std::int64_t lo = a0, hi = a0;
  if (is_pair) {
    lo = std::min(rep.part_sizes[0], rep.part_sizes[1]);
    hi = std::max(rep.part_sizes[0], rep.part_sizes[1]);
  }

  auto push = [&](BoundCheck c) {
    if (c.applicable && !c.holds) rep.all_hold = false;
    rep.checks.push_back(std::move(c));
  };

  // --- two-part bounds ---
  if (is_pair) {
    push(ge_check("pair-min-size", bigint(3) * lo * hi, p - 1));

    {
      // larger part against the sieve bound p/3^k + (2k/3) sqrt(p), k = smaller size
      auto c = sqrt_le_check("pair-max-size", pow3(lo) * hi - p, bigint(2) * lo * pow3(lo - 1), p);
      c.note = "larger part vs p/3^k + (2k/3)sqrt(p), k = smaller part size";
      push(c);
    }

    {
      // a + b + 2ab <= p + a*sqrt(p); both labelings are valid, the smaller
      // sqrt coefficient is the binding one
      auto c = sqrt_le_check("pair-weighted-count", bigint(lo) + hi + bigint(2) * lo * hi - p,
                             bigint(lo), p);
      c.note = "binding orientation: sqrt coefficient is the smaller part size";
      push(c);
    }
  } else {
    push(inapplicable("pair-min-size", "two-part records only"));
    push(inapplicable("pair-max-size", "two-part records only"));
    push(inapplicable("pair-weighted-count", "two-part records only"));
  }

  // --- equal-size window: sqrt((p-1)/3) <= a <= sqrt(p) ---
  const bool equal_pair = (is_pair && lo == hi) || is_self;
  if (equal_pair) {
    const bigint a = is_self ? a0 : lo;
    push(ge_check("equal-pair-window-lower", bigint(3) * a * a, p - 1));
    push(le_check("equal-pair-window-upper", a * a, p));
  } else {
    const char* why = is_pair ? "parts differ in size" : "equal-size two-part records only";
    push(inapplicable("equal-pair-window-lower", why));
    push(inapplicable("equal-pair-window-upper", why));
  }

  // --- large-p pair bounds: sqrt(p)/18 <= |A|,|B| <= 3 sqrt(p) + 269 ---
  if (is_pair && p >= 9096) {
    push(sqrt_ge_check("pair-large-p-lower", bigint(18) * lo, p));
    auto c = sqrt_le_check("pair-large-p-upper", bigint(hi) - 269, 3, p);
    c.note = "additive constant 269; the looser 379 from an intermediate derivation is not used";
    push(c);
  } else {
    const char* why = is_pair ? "stated for p >= 9096 only" : "two-part records only";
    push(inapplicable("pair-large-p-lower", why));
    push(inapplicable("pair-large-p-upper", why));
  }

  // --- self-sum lower: a >= -1/2 + (sqrt(3)/6) sqrt(8p-5), squared form ---
  if (is_self) {
    auto c = ge_check("self-sum-lower", bigint(6 * a0 + 3) * (6 * a0 + 3), bigint(24) * p - 15);
    c.note = "integer form of -1/2 + (sqrt(3)/6)sqrt(8p-5) <= a";
    push(c);
  } else {
    push(inapplicable("self-sum-lower", "self-sum records only"));
  }

  // --- difference-cover bounds ---
  if (is_diff) {
    push(ge_check("diff-cover-lower", bigint(3) * a0 * a0, p + 2));

    if (a0 % 3 == 0) {
      auto c = le_check("diff-cover-upper", bigint(a0) * a0, p);
      c.note = "size divisible by 3: a <= sqrt(p)";
      push(c);
    } else {
      const bigint L = bigint(4) * a0;
      auto c = sqrt_le_check("diff-cover-upper", L * L - 2 * L - 16 - 16 * p, 2 * L + 32, p);
      c.note = "size not divisible by 3: integer form of 4a <= (1+sqrt(17))(1+sqrt(p))";
      push(c);
    }

    auto c = sqrt_le_check("diff-cover-trivial-upper", bigint(a0) * a0 - p, bigint(a0), p);
    c.note = "integer form of (sqrt(5)-1)/2 * a <= sqrt(p)";
    push(c);
  } else {
    push(inapplicable("diff-cover-lower", "difference-cover records only"));
    push(inapplicable("diff-cover-upper", "difference-cover records only"));
    push(inapplicable("diff-cover-trivial-upper", "difference-cover records only"));
  }

  return rep;
}

}  // namespace ffcube
