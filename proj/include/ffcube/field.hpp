#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "ffcube/error.hpp"

namespace ffcube {

using elem = std::uint32_t;  // field element, p < 2^22 so this is ample

// Multiplicative cube class of a nonzero element: its discrete-log residue
// mod 3 with respect to the least primitive root. For p != 1 (mod 3) cubing
// is a bijection and every nonzero element is a cube.
enum class CubeClass : std::uint8_t { Zero = 3, Cube = 0, NonCubeA = 1, NonCubeB = 2 };

/**
 * Immutable arithmetic context for F_p.
 *
 * Conventions fixed here and relied on everywhere else:
 *  - generator() is the least primitive root g of p;
 *  - index_of(x) is the discrete log of x base g, in [0, p-2];
 *  - cube_class(x) is index_of(x) mod 3 (p == 1 mod 3), which is exactly
 *    the exponent convention chi(g^k) = w^(k mod 3) used by CharTable.
 *
 * Build through PrimeField::build so instances are always shared_ptr-owned;
 * subsets and functions keep the field alive through that handle.
 */
class PrimeField : public std::enable_shared_from_this<PrimeField> {
 public:
  static constexpr elem kDefaultCapacity = 1u << 22;

  struct Options {
    elem max_p = kDefaultCapacity;
    // When false, no discrete-log table is stored and cube classes are
    // computed by streaming exponentiation x^((p-1)/3) instead.
    bool index_table = true;
  };

  static std::shared_ptr<const PrimeField> build(elem p);
  static std::shared_ptr<const PrimeField> build(elem p, const Options& opt);

  elem p() const { return p_; }
  elem generator() const { return g_; }
  bool one_mod_three() const { return p_ % 3 == 1; }

  bool has_index_table() const { return !index_.empty(); }
  // discrete log base generator(); x must be nonzero
  elem index_of(elem x) const;

  CubeClass cube_class(elem x) const { return static_cast<CubeClass>(class_[x]); }
  // true for nonzero cubes only (0 is not a member of C_p)
  bool is_cube(elem x) const { return class_[x] == 0; }
  // chi exponent in {0,1,2}; -1 at 0
  int chi_exponent(elem x) const { return x == 0 ? -1 : static_cast<int>(class_[x]); }

  // the cube set C_p, ascending
  const std::vector<elem>& cube_elements() const { return cubes_; }
  std::size_t cube_count() const { return cubes_.size(); }

  elem add(elem x, elem y) const { elem s = x + y; return s >= p_ ? s - p_ : s; }
  elem sub(elem x, elem y) const { return x >= y ? x - y : x + p_ - y; }
  elem neg(elem x) const { return x == 0 ? 0 : p_ - x; }
  elem mul(elem x, elem y) const {
    return static_cast<elem>((std::uint64_t)x * y % p_);
  }
  elem pow(elem x, std::uint64_t e) const;
  elem inv(elem x) const;

 private:
  PrimeField() = default;

  elem p_ = 0;
  elem g_ = 0;
  std::vector<elem> index_;          // discrete logs, index_[0] unused
  std::vector<std::uint8_t> class_;  // CubeClass per element
  std::vector<elem> cubes_;
};

using FieldPtr = std::shared_ptr<const PrimeField>;

// Convenience wrapper matching the module's operation name.
inline FieldPtr build_field(elem p) { return PrimeField::build(p); }
inline FieldPtr build_field(elem p, const PrimeField::Options& opt) {
  return PrimeField::build(p, opt);
}

bool is_prime_u32(elem n);

/**
 * Subset of F_p as a word-packed bit vector with cached cardinality.
 * Shift (x -> x+c) is a two-block bit rotation; everything else is plain
 * word logic. Ordering (lex_less) compares ascending element sequences,
 * which is the order used for canonical decomposition representatives.
 */
class FpSubset {
 public:
  FpSubset() = default;
  explicit FpSubset(FieldPtr field);

  static FpSubset from_elements(FieldPtr field, const std::vector<elem>& xs);
  static FpSubset singleton(FieldPtr field, elem x);
  static FpSubset full(FieldPtr field);              // all of F_p
  static FpSubset cubes(FieldPtr field);             // C_p

  const FieldPtr& field() const { return field_; }
  elem p() const { return field_->p(); }

  bool test(elem x) const { return (words_[x >> 6] >> (x & 63)) & 1; }
  void add(elem x);
  void remove(elem x);

  std::int64_t card() const { return card_; }
  bool empty() const { return card_ == 0; }
  std::vector<elem> elements() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        unsigned tz = std::countr_zero(bits);
        fn(static_cast<elem>(w * 64 + tz));
        bits &= bits - 1;
      }
    }
  }

  FpSubset shifted(elem c) const;          // { x + c }
  FpSubset dilated(elem lambda) const;     // { lambda * x }, lambda != 0
  FpSubset reflected() const;              // { -x }
  FpSubset intersect(const FpSubset& o) const;
  FpSubset unite(const FpSubset& o) const;
  bool is_subset_of(const FpSubset& o) const;

  // ORs (other + c) into this set; the workhorse of sumsets.
  void or_shifted(const FpSubset& other, elem c);

  bool operator==(const FpSubset& o) const;
  bool operator!=(const FpSubset& o) const { return !(*this == o); }
  // ascending-element-sequence comparison (sets of equal size only get
  // compared this way in practice; a strict prefix counts as smaller)
  bool lex_less(const FpSubset& o) const;

 private:
  void recount();
  void check_same_field(const FpSubset& o) const;

  FieldPtr field_;
  std::vector<std::uint64_t> words_;
  std::int64_t card_ = 0;
};

}  // namespace ffcube
