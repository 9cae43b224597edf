#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ffcube/characters.hpp"
#include "ffcube/error.hpp"
#include "ffcube/field.hpp"
#include "ffcube/rng.hpp"
#include "ffcube/setfun.hpp"
#include "ffcube/verify.hpp"

using namespace ffcube;

namespace {

FpFunction constant_fn(const FieldPtr& field, std::int64_t v) {
  FpFunction f(field);
  for (elem x = 0; x < field->p(); ++x) f[x] = EisensteinInt::integer(v);
  return f;
}

const CheckLine& line(const IdentityReport& rep, const std::string& name) {
  for (const auto& l : rep.lines)
    if (l.name == name) return l;
  const std::string msg = "missing line: " + name;
  REQUIRE_MESSAGE(false, msg);
  static CheckLine dummy;
  return dummy;
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

TEST_CASE("random_integer_function: deterministic, bounded, integer") {
  const auto field = build_field(31);
  Rng r1(99), r2(99);
  const auto f = random_integer_function(field, r1, -3, 3);
  const auto g = random_integer_function(field, r2, -3, 3);
  CHECK(f == g);
  CHECK(f.integer_valued());
  bool in_range = true;
  for (elem x = 0; x < 31; ++x)
    in_range = in_range && f[x].a >= -3 && f[x].a <= 3;
  CHECK(in_range);
}

TEST_CASE("fold-moment vs correlation product") {
  const auto field = build_field(13);

  SUBCASE("point masses: both sides 1") {
    const auto d = FpFunction::delta(field, 0);
    const auto rep = verify_shkredov_correlation(field, 1, d, d);
    CHECK(rep.exact_equal);
    CHECK(rep.lines[0].lhs == "1");
    CHECK(rep.lines[0].rhs == "1");
  }

  SUBCASE("constants: both sides p^(k+2)") {
    const auto one = constant_fn(field, 1);
    const auto r1 = verify_shkredov_correlation(field, 1, one, one);
    CHECK(r1.exact_equal);
    CHECK(r1.lines[0].lhs == "2197");  // 13^3
    const auto r2 = verify_shkredov_correlation(field, 2, one, one);
    CHECK(r2.exact_equal);
    CHECK(r2.lines[0].lhs == "28561");  // 13^4
  }

  SUBCASE("seeded random functions, k = 1 and 2") {
    Rng rng(1234);
    for (int trial = 0; trial < 25; ++trial) {
      const auto f = random_integer_function(field, rng);
      const auto g = random_integer_function(field, rng);
      CHECK(verify_shkredov_correlation(field, 1, f, g).exact_equal);
      CHECK(verify_shkredov_correlation(field, 2, f, g).exact_equal);
    }
  }

  SUBCASE("tuple cap refuses oversized scans") {
    const auto f31 = build_field(31);
    const auto one = constant_fn(f31, 1);
    CHECK(thrown_code([&] { verify_shkredov_correlation(f31, 5, one, one); }) ==
          Errc::CapExceeded);
  }
}

TEST_CASE("psi inner-product identity") {
  const auto field = build_field(13);
  const CharTable chars(field);

  SUBCASE("f = g = delta_0: both sides 2(p-1)") {
    const auto d = FpFunction::delta(field, 0);
    const auto rep = verify_inner_product_identity(chars, d, d);
    CHECK(rep.exact_equal);
    CHECK(rep.lines[0].lhs == "24");
  }

  SUBCASE("f = g = 1: both sides 0") {
    const auto one = constant_fn(field, 1);
    const auto rep = verify_inner_product_identity(chars, one, one);
    CHECK(rep.exact_equal);
    CHECK(rep.lines[0].lhs == "0");
  }

  SUBCASE("indicator pair against a from-scratch evaluation") {
    const auto A = FpFunction::indicator(FpSubset::from_elements(field, {1, 5}));
    const auto B = FpFunction::indicator(FpSubset::from_elements(field, {0, 7}));
    const auto rep = verify_inner_product_identity(chars, A, B);
    CHECK(rep.exact_equal);
    // direct: <A o psi, B o psi> = sum_x (psi(x+1)+psi(x+5))(psi(x)+psi(x+7))
    std::int64_t direct = 0;
    for (elem x = 0; x < 13; ++x)
      direct += (chars.psi(field->add(x, 1)) + chars.psi(field->add(x, 5))) *
                (chars.psi(x) + chars.psi(field->add(x, 7)));
    CHECK(rep.lines[0].lhs == std::to_string(direct));
  }

  SUBCASE("seeded random pairs across fields") {
    for (elem p : {13u, 31u, 97u}) {
      const auto fp = build_field(p);
      const CharTable t(fp);
      Rng rng(777);
      for (int trial = 0; trial < 25; ++trial) {
        const auto f = random_integer_function(fp, rng);
        const auto g = random_integer_function(fp, rng);
        CHECK(verify_inner_product_identity(t, f, g).exact_equal);
      }
    }
  }
}

TEST_CASE("H-expansion") {
  const auto field = build_field(13);
  const CharTable chars(field);

  SUBCASE("b = 0: hypothesis holds, total is (2 - psi(0))^2 = 4") {
    const auto rep = verify_h_expansion(chars, 0);
    CHECK(rep.exact_equal);
    CHECK(line(rep, "total-is-square-at-b").lhs == "4");
  }

  SUBCASE("(p, b) = (13, 7): vanishes off origin, total 9") {
    const auto rep = verify_h_expansion(chars, 7);
    CHECK(rep.exact_equal);
    CHECK(line(rep, "vanishes-off-origin").pass);
    CHECK(line(rep, "total-is-square-at-b").lhs == "9");
    CHECK(line(rep, "total-is-square-at-b").rhs == "9");
  }

  SUBCASE("expansion is exact for every b in several fields") {
    for (elem p : {7u, 13u, 31u, 61u}) {
      const CharTable t(build_field(p));
      for (elem b = 0; b < p; ++b) {
        const auto rep = verify_h_expansion(t, b);
        CHECK(line(rep, "direct-vs-expansion").pass);
      }
    }
  }
}

TEST_CASE("cover mask over a decomposition") {
  const auto field = build_field(13);
  const CharTable chars(field);
  const auto A = FpSubset::from_elements(field, {1, 5});
  const auto B = FpSubset::from_elements(field, {0, 7});

  const auto rep = verify_cover_mask(chars, A, B);
  CHECK(rep.exact_equal);
  CHECK(line(rep, "mask-equals-3^k-on-first-part").pass);
  CHECK(line(rep, "mask-factors-in-{0,1,3}").pass);
  CHECK(line(rep, "count-lower").pass);
  CHECK(line(rep, "count-lower").lhs == "12");  // 3ka = 12 >= p-1 = 12, tight
  CHECK(line(rep, "count-upper").pass);

  // the other orientation is a decomposition too
  CHECK(verify_cover_mask(chars, B, A).exact_equal);

  // not a decomposition: guard fires
  const auto bad = FpSubset::from_elements(field, {1, 2});
  CHECK(thrown_code([&] { verify_cover_mask(chars, bad, B); }) ==
        Errc::NotADecomposition);
}

TEST_CASE("fourth-correlation structure") {
  SUBCASE("exhaustive at p = 13 and p = 31") {
    for (elem p : {13u, 31u}) {
      const CharTable chars(build_field(p));
      const auto rep = verify_psi_fourth_correlation(chars);
      CHECK(rep.exact_equal);
      CHECK(line(rep, "origin-is-psi4-sum").lhs == std::to_string(6 * (p - 1)));
      CHECK(line(rep, "origin-ceiling").pass);
      CHECK(line(rep, "cross-closed-form").pass);
      CHECK(line(rep, "off-cross-square-bound").pass);
      CHECK(rep.note.find("exhaustive") != std::string::npos);
    }
  }

  SUBCASE("sampled above the exhaustive cutoff") {
    const CharTable chars(build_field(103));
    const auto rep = verify_psi_fourth_correlation(chars, 500, 5);
    CHECK(rep.exact_equal);
    CHECK(rep.seed == 5);
    CHECK(rep.note.find("sampled") != std::string::npos);
  }

  SUBCASE("cross closed form from first principles at p = 7, t = 1") {
    // C4 on (t,t,0) with t = 1: direct sum psi(x)psi(x+1)psi(x+1)psi(x)
    // = sum psi(x)^2 psi(x+1)^2 = 4(p-2) - 4 psi(t) + S(t)
    const auto field = build_field(7);
    const CharTable chars(field);
    std::int64_t direct = 0;
    for (elem x = 0; x < 7; ++x) {
      const std::int64_t a = chars.psi(x), b = chars.psi(field->add(x, 1));
      direct += a * a * b * b;
    }
    CHECK(direct == 4 * (7 - 2) - 4 * chars.psi(1) + chars.psi_shift_sum(1));
    CHECK(verify_psi_fourth_correlation(chars).exact_equal);
  }
}

TEST_CASE("pair moment identities at the p = 13 witness") {
  const auto field = build_field(13);
  const auto A = FpSubset::from_elements(field, {1, 5});
  const auto B = FpSubset::from_elements(field, {0, 7});

  const auto rep = verify_decomposition_moments(A, B);
  CHECK(rep.exact_equal);
  CHECK(line(rep, "residual-vanishes-on-second-part").pass);
  CHECK(line(rep, "second-moment-on-second-part").lhs == "32");   // 4 a^2 b
  CHECK(line(rep, "fourth-moment-on-second-part").lhs == "512");  // 16 a^4 b
  CHECK(line(rep, "residual-mean").lhs == "-8");                  // -2ab

  // identity is symmetric in the roles
  CHECK(verify_decomposition_moments(B, A).exact_equal);

  CHECK(thrown_code([&] {
          verify_decomposition_moments(FpSubset::from_elements(field, {1, 2}), B);
        }) == Errc::NotADecomposition);
}

TEST_CASE("difference-cover moments") {
  SUBCASE("p = 7, A = {0,1}: s = (0,0,1,-2,-2,-2,1)") {
    const auto field = build_field(7);
    const auto A = FpSubset::from_elements(field, {0, 1});
    const auto rep = verify_diff_cover_moments(A);
    CHECK(rep.exact_equal);
    CHECK(line(rep, "vanishes-on-set").pass);
    CHECK(line(rep, "congruent-to-minus-size-mod-3-off-set").pass);
    CHECK(line(rep, "cube-count-form-off-set").pass);
    CHECK(line(rep, "mean").lhs == "-4");  // -2a(a-1) = -4
    CHECK(line(rep, "minus-one-count").pass);
  }

  SUBCASE("p = 19, A = {0,1,8}") {
    const auto field = build_field(19);
    const auto rep =
        verify_diff_cover_moments(FpSubset::from_elements(field, {0, 1, 8}));
    CHECK(rep.exact_equal);
    CHECK(line(rep, "mean").lhs == "-12");  // -2*3*2
  }

  SUBCASE("guards") {
    const auto field = build_field(7);
    // 2 - 0 = 2 is not a cube mod 7
    CHECK(thrown_code([&] {
            verify_diff_cover_moments(FpSubset::from_elements(field, {0, 2}));
          }) == Errc::NotADiffCover);
    // 0 must be a member
    CHECK(thrown_code([&] {
            verify_diff_cover_moments(FpSubset::from_elements(field, {1, 2}));
          }) == Errc::NotADiffCover);
  }
}

TEST_CASE("norm-histogram facts") {
  const auto field = build_field(13);

  SUBCASE("single spike at height c: both sides c^2, lower bound tight") {
    FpFunction f(field);
    f[0] = EisensteinInt::integer(3);
    const auto rep = verify_shkredov_trick(f, 3);
    CHECK(rep.exact_equal);
    CHECK(line(rep, "norm-vs-histogram").lhs == "9");
    CHECK(line(rep, "norm-lower-bound").pass);
  }

  SUBCASE("zero function") {
    const auto rep = verify_shkredov_trick(FpFunction(field), 3);
    CHECK(rep.exact_equal);
    CHECK(line(rep, "norm-vs-histogram").lhs == "0");
  }

  SUBCASE("seeded random functions at the two constants the bound is used with") {
    Rng rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
      const auto f = random_integer_function(field, rng, -4, 4);
      CHECK(verify_shkredov_trick(f, -2).exact_equal);
      CHECK(verify_shkredov_trick(f, 3).exact_equal);
    }
  }

  SUBCASE("non-integer input is rejected") {
    const CharTable chars(field);
    CHECK(thrown_code([&] {
            verify_shkredov_trick(FpFunction::chi(chars, 1), 3);
          }) == Errc::NonIntegerValues);
  }
}

TEST_CASE("sumset size-product inequality") {
  const auto field = build_field(31);

  SUBCASE("singletons: equality at 1") {
    std::vector<FpSubset> sets = {FpSubset::singleton(field, 3),
                                  FpSubset::singleton(field, 9)};
    const auto rep = verify_gmr(sets);
    CHECK(rep.exact_equal);
    CHECK(rep.lines[0].lhs == "1");
    CHECK(rep.lines[0].rhs == "1");
  }

  SUBCASE("singleton plus full field: equality at p") {
    std::vector<FpSubset> sets = {FpSubset::singleton(field, 3), FpSubset::full(field)};
    const auto rep = verify_gmr(sets);
    CHECK(rep.exact_equal);
    CHECK(rep.lines[0].lhs == "31");
    CHECK(rep.lines[0].rhs == "31");
  }

  SUBCASE("seeded random triples") {
    Rng rng(55);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<FpSubset> sets;
      for (int j = 0; j < 3; ++j) {
        FpSubset s(field);
        const int n = 1 + (int)rng.below(6);
        for (int i = 0; i < n; ++i) s.add((elem)rng.below(31));
        sets.push_back(std::move(s));
      }
      CHECK(verify_gmr(sets).exact_equal);
    }
  }

  SUBCASE("guards") {
    CHECK(thrown_code([&] { verify_gmr({FpSubset::singleton(field, 1)}); }) ==
          Errc::BadInput);
    CHECK(thrown_code([&] {
            verify_gmr({FpSubset::singleton(field, 1), FpSubset(field)});
          }) == Errc::EmptySet);
    CHECK(thrown_code([&] {
            verify_gmr({FpSubset::singleton(field, 1),
                        FpSubset::singleton(build_field(13), 1)});
          }) == Errc::FieldMismatch);
  }
}
