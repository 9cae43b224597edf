#include "ffcube/verify.hpp"

#include <algorithm>
#include <cstdlib>

#include "ffcube/exact.hpp"

namespace ffcube {

namespace {

std::string i128_str(__int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

void require_integer_valued(const FpFunction& f, const char* who) {
  if (!f.integer_valued())
    fail(Errc::NonIntegerValues, std::string(who) + " needs rational-integer-valued functions");
}

}  // namespace

void IdentityReport::add(std::string name, std::string lhs, std::string rhs, bool pass) {
  if (!pass) exact_equal = false;
  lines.push_back({std::move(name), std::move(lhs), std::move(rhs), pass});
}

void IdentityReport::add_eq(std::string name, std::int64_t lhs, std::int64_t rhs) {
  add(std::move(name), std::to_string(lhs), std::to_string(rhs), lhs == rhs);
}

FpFunction random_integer_function(const FieldPtr& field, Rng& rng, int lo, int hi) {
  FpFunction f(field);
  for (elem x = 0; x < field->p(); ++x)
    f[x] = EisensteinInt::integer(rng.range(lo, hi));
  return f;
}

// ---------------------------------------------------------------------------

IdentityReport verify_shkredov_correlation(const FieldPtr& field, int k, const FpFunction& f,
                                           const FpFunction& g, std::uint64_t tuple_cap) {
  if (k < 1) fail(Errc::BadInput, "correlation moment identity needs k >= 1");
  require_integer_valued(f, "correlation moment identity");
  require_integer_valued(g, "correlation moment identity");

  const elem p = field->p();
  bigint tuples = 1;
  for (int i = 0; i < k; ++i) tuples *= p;
  if (tuples * p > tuple_cap)
    fail(Errc::CapExceeded, "p^(k+1) = " + big_str(tuples * p) + " exceeds tuple cap " +
                                std::to_string(tuple_cap));

  std::int64_t maxv = 1;
  for (elem x = 0; x < p; ++x)
    maxv = std::max({maxv, std::abs(f[x].a), std::abs(g[x].a)});
  // every accumulator below stays within p^{k+2} * maxv^{2k+2}
  bigint envelope = tuples * p * p;
  for (int i = 0; i < 2 * k + 2; ++i) envelope *= maxv;
  if (envelope > (bigint(1) << 122))
    fail(Errc::CapExceeded, "function values too large for in-range exact evaluation");

  IdentityReport rep;
  rep.identity_id = "correlation-moment";
  rep.p = p;
  rep.k = k;

  const FpFunction fg = circ(f, g);
  __int128 lhs = 0;
  for (elem x = 0; x < p; ++x) {
    __int128 t = 1;
    for (int i = 0; i < k + 1; ++i) t *= fg[x].a;
    lhs += t;
  }

  __int128 rhs = 0;
  std::vector<elem> shifts(static_cast<std::size_t>(k), 0);
  const std::uint64_t total = static_cast<std::uint64_t>(tuples);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (int i = 0; i < k; ++i) {
      shifts[static_cast<std::size_t>(i)] = static_cast<elem>(rest % p);
      rest /= p;
    }
    const std::int64_t cf = correlation(f, shifts).a;
    const std::int64_t cg = correlation(g, shifts).a;
    rhs += static_cast<__int128>(cf) * cg;
  }

  rep.add("fold-moment-vs-correlation-product", i128_str(lhs), i128_str(rhs), lhs == rhs);
  return rep;
}

// ---------------------------------------------------------------------------

IdentityReport verify_inner_product_identity(const CharTable& chars, const FpFunction& f,
                                             const FpFunction& g) {
  require_integer_valued(f, "inner product identity");
  require_integer_valued(g, "inner product identity");
  const elem p = chars.p();
  if (p > 20000)
    fail(Errc::CapExceeded, "quadratic-time inner product identity capped at p <= 20000");

  IdentityReport rep;
  rep.identity_id = "psi-inner-product";
  rep.p = p;

  const FpFunction psi_fn = FpFunction::psi(chars);
  const EisensteinInt lhs = inner_product(circ(f, psi_fn), circ(g, psi_fn));

  const FpFunction fg = circ(f, g);  // integer f: conjugation is a no-op
  const EisensteinInt j11 = jacobi_sum(chars, 1, 1);
  const EisensteinInt j22 = jacobi_sum(chars, 2, 2);
  const EisensteinInt rhs = 2 * (std::int64_t)p * inner_product(f, g) -
                            2 * (total_sum(f) * total_sum(g).conj()) +
                            j11 * inner_product(FpFunction::chi(chars, 2), fg) +
                            j22 * inner_product(FpFunction::chi(chars, 1), fg);

  rep.add("inner-product-identity", lhs.str(), rhs.str(), lhs == rhs);
  return rep;
}

// ---------------------------------------------------------------------------

IdentityReport verify_h_expansion(const CharTable& chars, elem b) {
  const auto& field = chars.field();
  const elem p = chars.p();

  IdentityReport rep;
  rep.identity_id = "h-expansion";
  rep.p = p;

  std::int64_t direct = 0;
  std::int64_t nonzero_off_origin = 0;
  for (elem x = 0; x < p; ++x) {
    const std::int64_t h = (std::int64_t)(1 + chars.psi(x)) * (2 - chars.psi(field->add(x, b))) *
                           (2 - chars.psi(field->sub(x, b)));
    direct += h;
    if (x != 0 && h != 0) ++nonzero_off_origin;
  }

  const elem b2 = field->add(b, b);
  const std::int64_t expansion = 4 * (std::int64_t)p - 4 * chars.psi_shift_sum(b) +
                                 chars.psi_shift_sum(b2) + chars.psi_triple_sum(b, b2);
  rep.add_eq("direct-vs-expansion", direct, expansion);

  bool hypothesis = true;
  for (elem x : FpSubset::cubes(field).elements()) {
    if (!field->is_cube(field->add(x, b)) && !field->is_cube(field->sub(x, b))) {
      hypothesis = false;
      break;
    }
  }
  if (hypothesis) {
    rep.add_eq("vanishes-off-origin", nonzero_off_origin, 0);
    const std::int64_t sq = (2 - chars.psi(b)) * (2 - chars.psi(b));
    rep.add_eq("total-is-square-at-b", direct, sq);
    rep.add("total-within-envelope", std::to_string(direct), "[0, 9]",
            direct >= 0 && direct <= 9);
    rep.note = "shift hypothesis holds: every cube x has x+b or x-b a cube";
  } else {
    rep.note = "shift hypothesis fails for this b; only the expansion is asserted";
  }
  return rep;
}

// ---------------------------------------------------------------------------

IdentityReport verify_cover_mask(const CharTable& chars, const FpSubset& A, const FpSubset& B) {
  const auto& field = chars.field();
  const elem p = chars.p();
  if (sumset(A, B) != FpSubset::cubes(field))
    fail(Errc::NotADecomposition, "mask check needs A + B = C_p");

  IdentityReport rep;
  rep.identity_id = "cover-mask";
  rep.p = p;
  rep.k = static_cast<int>(B.card());

  const std::vector<elem> bs = B.elements();
  const int k = static_cast<int>(bs.size());
  const std::int64_t a = A.card();

  // factors 1 + psi are 0, 1 or 3; the mask is 3^(#cube shifts) or 0,
  // manifestly nonnegative, and exactly 3^k on A
  std::int64_t bad_factors = 0;
  std::int64_t full_on_A = 0;
  for (elem x = 0; x < p; ++x) {
    int c3 = 0;
    bool zero = false;
    for (elem b : bs) {
      const int f = 1 + chars.psi(field->add(x, b));
      if (f != 0 && f != 1 && f != 3) ++bad_factors;
      if (f == 0) zero = true;
      if (f == 3) ++c3;
    }
    if (A.test(x) && !zero && c3 == k) ++full_on_A;
  }
  rep.add_eq("mask-factors-in-{0,1,3}", bad_factors, 0);
  rep.add("mask-equals-3^k-on-first-part", std::to_string(full_on_A), std::to_string(a),
          full_on_A == a);

  rep.add("count-lower", big_str(bigint(3) * k * a), big_str(bigint(p) - 1),
          bigint(3) * k * a >= bigint(p) - 1);

  bigint p3k = 1;
  for (int i = 0; i < k; ++i) p3k *= 3;
  const bigint L = p3k * a - p;
  const bigint kk = bigint(2) * k * (p3k / 3);
  if (L <= 0)
    rep.add("count-upper", big_str(L), "0", true);
  else
    rep.add("count-upper", big_str(L * L), big_str(kk * kk * p), L * L <= kk * kk * p);
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// C_4(psi)(x1,x2,x3) by direct summation
std::int64_t c4_direct(const CharTable& chars, elem x1, elem x2, elem x3) {
  const auto& field = chars.field();
  std::int64_t s = 0;
  for (elem x = 0; x < chars.p(); ++x)
    s += (std::int64_t)chars.psi(x) * chars.psi(field->add(x, x1)) *
         chars.psi(field->add(x, x2)) * chars.psi(field->add(x, x3));
  return s;
}

// 0: origin, 1: diagonal cross with parameter t, 2: generic
int classify_c4_tuple(elem x1, elem x2, elem x3, elem& t) {
  if (x1 == 0 && x2 == 0 && x3 == 0) return 0;
  if (x1 == x2 && x1 != 0 && x3 == 0) { t = x1; return 1; }
  if (x1 == x3 && x1 != 0 && x2 == 0) { t = x1; return 1; }
  if (x2 == x3 && x2 != 0 && x1 == 0) { t = x2; return 1; }
  return 2;
}

}  // namespace

IdentityReport verify_psi_fourth_correlation(const CharTable& chars, std::uint64_t trials,
                                             std::uint64_t seed) {
  const elem p = chars.p();

  IdentityReport rep;
  rep.identity_id = "psi-fourth-correlation";
  rep.p = p;
  rep.seed = seed;

  std::int64_t cross_bad = 0, off_bad = 0;
  std::int64_t cross_seen = 0, off_seen = 0;
  bigint max_off_sq = 0;
  const bigint weil_sq = bigint(48) * 48 * p;

  std::vector<std::int64_t> shift_sum(p, 0);
  for (elem t = 1; t < p; ++t) shift_sum[t] = chars.psi_shift_sum(t);

  auto check_tuple = [&](elem x1, elem x2, elem x3) {
    elem t = 0;
    const int cls = classify_c4_tuple(x1, x2, x3, t);
    if (cls == 0) return;  // origin handled once below
    const std::int64_t v = c4_direct(chars, x1, x2, x3);
    if (cls == 1) {
      ++cross_seen;
      // psi^2 = 2 off 0 plus psi, pointwise; expanding gives the closed form
      const std::int64_t expect = 4 * ((std::int64_t)p - 2) - 4 * chars.psi(t) + shift_sum[t];
      if (v != expect) ++cross_bad;
    } else {
      ++off_seen;
      const bigint sq = bigint(v) * v;
      max_off_sq = std::max(max_off_sq, sq);
      if (sq > weil_sq) ++off_bad;
    }
  };

  if (p <= 31) {
    for (elem x1 = 0; x1 < p; ++x1)
      for (elem x2 = 0; x2 < p; ++x2)
        for (elem x3 = 0; x3 < p; ++x3) check_tuple(x1, x2, x3);
    rep.note = "exhaustive over all " + std::to_string((std::uint64_t)p * p * p) + " tuples";
  } else {
    Rng rng(mix_seed({seed, p}));
    for (std::uint64_t i = 0; i < trials; ++i)
      check_tuple(static_cast<elem>(rng.below(p)), static_cast<elem>(rng.below(p)),
                  static_cast<elem>(rng.below(p)));
    rep.note = "sampled " + std::to_string(trials) + " tuples";
  }

  const std::int64_t origin = c4_direct(chars, 0, 0, 0);
  rep.add_eq("origin-is-psi4-sum", origin, 6 * ((std::int64_t)p - 1));
  rep.add("origin-ceiling", std::to_string(origin), std::to_string(6 * (std::int64_t)p),
          origin <= 6 * (std::int64_t)p);
  rep.add("cross-closed-form", std::to_string(cross_bad) + " of " + std::to_string(cross_seen),
          "0 mismatches", cross_bad == 0);
  rep.add("off-cross-square-bound", big_str(max_off_sq) + " max of " + std::to_string(off_seen),
          big_str(weil_sq), off_bad == 0);
  return rep;
}

// ---------------------------------------------------------------------------

IdentityReport verify_decomposition_moments(const FpSubset& A, const FpSubset& B) {
  const auto field = A.field();
  const elem p = field->p();
  if (sumset(A, B) != FpSubset::cubes(field))
    fail(Errc::NotADecomposition, "moment identities need A + B = C_p");

  IdentityReport rep;
  rep.identity_id = "pair-moments";
  rep.p = p;

  CharTable chars(field);
  const FpFunction apsi = circ_indicator(A, FpFunction::psi(chars));
  const std::int64_t a = A.card(), b = B.card();

  __int128 m2 = 0, m4 = 0;
  std::int64_t off = 0;
  B.for_each([&](elem x) {
    const std::int64_t v = apsi[x].a;
    if (v != 2 * a) ++off;
    m2 += static_cast<__int128>(v) * v;
    m4 += static_cast<__int128>(v) * v * v * v;
  });

  std::int64_t total = 0;
  for (elem x = 0; x < p; ++x) total += apsi[x].a;
  const std::int64_t r_mean = total - 2 * a * b;

  rep.add_eq("residual-vanishes-on-second-part", off, 0);
  rep.add("second-moment-on-second-part", i128_str(m2), i128_str(__int128(4) * a * a * b),
          m2 == __int128(4) * a * a * b);
  rep.add("fourth-moment-on-second-part", i128_str(m4),
          i128_str(__int128(16) * a * a * a * a * b), m4 == __int128(16) * a * a * a * a * b);
  rep.add_eq("residual-mean", r_mean, -2 * a * b);
  return rep;
}

// ---------------------------------------------------------------------------

IdentityReport verify_diff_cover_moments(const FpSubset& A) {
  const auto field = A.field();
  const elem p = field->p();
  const FpSubset cubes = FpSubset::cubes(field);
  FpSubset target = cubes;
  target.add(0);
  if (!A.test(0) || difference_set(A) != target)
    fail(Errc::NotADiffCover, "difference moment facts need 0 in A and A - A = C_p u {0}");

  IdentityReport rep;
  rep.identity_id = "diff-cover-moments";
  rep.p = p;

  CharTable chars(field);
  const FpFunction aconv = convolve_indicator(A, FpFunction::psi(chars));
  const std::int64_t a = A.card();

  FpFunction s(field);
  for (elem x = 0; x < p; ++x)
    s[x] = EisensteinInt::integer(aconv[x].a - (A.test(x) ? 2 * (a - 1) : 0));

  std::int64_t on_bad = 0, cong_bad = 0, form_bad = 0, total = 0;
  for (elem x = 0; x < p; ++x) {
    const std::int64_t sx = s[x].a;
    total += sx;
    if (A.test(x)) {
      if (sx != 0) ++on_bad;
      continue;
    }
    if ((sx + a) % 3 != 0) ++cong_bad;
    std::int64_t cubes_hit = 0;
    A.for_each([&](elem y) {
      if (field->is_cube(field->sub(x, y))) ++cubes_hit;
    });
    if (sx != 3 * cubes_hit - a) ++form_bad;
  }

  const ValueHistogram hist = histogram(s);
  const auto it = hist.find(-1);
  const std::int64_t n_minus_1 = it == hist.end() ? 0 : it->second;

  rep.add_eq("vanishes-on-set", on_bad, 0);
  rep.add_eq("congruent-to-minus-size-mod-3-off-set", cong_bad, 0);
  rep.add_eq("cube-count-form-off-set", form_bad, 0);
  rep.add_eq("mean", total, -2 * a * (a - 1));
  rep.add("minus-one-count", std::to_string(n_minus_1),
          std::to_string(2 * ((std::int64_t)p - 1) / 3),
          n_minus_1 <= 2 * ((std::int64_t)p - 1) / 3);
  return rep;
}

// ---------------------------------------------------------------------------

IdentityReport verify_shkredov_trick(const FpFunction& f, std::int64_t c) {
  require_integer_valued(f, "norm-histogram facts");

  IdentityReport rep;
  rep.identity_id = "norm-histogram";
  rep.p = f.p();

  const ValueHistogram hist = histogram(f);
  __int128 norm_sq = 0, mean = 0, small_sum = 0;
  for (const auto& [val, count] : hist) {
    norm_sq += static_cast<__int128>(val) * val * count;
    mean += static_cast<__int128>(val) * count;
    if (val != 0 && std::abs(val) < c) small_sum += static_cast<__int128>(val) * count;
  }

  __int128 hist_side = c * mean;
  for (const auto& [val, count] : hist)
    hist_side += static_cast<__int128>(count) * (static_cast<__int128>(val) * val - c * val);
  rep.add("norm-vs-histogram", i128_str(norm_sq), i128_str(hist_side), norm_sq == hist_side);

  const __int128 abs_mean = mean < 0 ? -mean : mean;
  const __int128 abs_small = small_sum < 0 ? -small_sum : small_sum;
  const __int128 lower = c * abs_mean - (c - 1) * abs_small;
  rep.add("norm-lower-bound", i128_str(norm_sq), i128_str(lower), norm_sq >= lower);
  return rep;
}

// ---------------------------------------------------------------------------

IdentityReport verify_gmr(const std::vector<FpSubset>& sets) {
  const int k = static_cast<int>(sets.size());
  if (k < 2) fail(Errc::BadInput, "sumset size product needs at least two sets");
  for (const auto& s : sets) {
    if (s.empty()) fail(Errc::EmptySet, "sumset size product needs nonempty sets");
    if (s.field()->p() != sets[0].field()->p())
      fail(Errc::FieldMismatch, "sumset size product needs sets over one field");
  }

  IdentityReport rep;
  rep.identity_id = "sumset-size-product";
  rep.p = sets[0].field()->p();
  rep.k = k;

  bigint lhs = 1;
  const bigint full = k_fold_sumset(sets).card();
  for (int i = 0; i < k - 1; ++i) lhs *= full;

  bigint rhs = 1;
  for (int j = 0; j < k; ++j) {
    std::vector<FpSubset> rest;
    for (int i = 0; i < k; ++i)
      if (i != j) rest.push_back(sets[static_cast<std::size_t>(i)]);
    rhs *= k_fold_sumset(rest).card();
  }

  rep.add("size-product", big_str(lhs), big_str(rhs), lhs <= rhs);
  return rep;
}

}  // namespace ffcube
