#pragma once

#include <cstdint>
#include <vector>

#include "ffcube/eisenstein.hpp"
#include "ffcube/field.hpp"
#include "ffcube/poly.hpp"

namespace ffcube {

/**
 * Cubic character tables over F_p, p == 1 (mod 3).
 *
 * chi is the multiplicative character of order 3 pinned by
 * chi(g^k) = w^(k mod 3) for the least primitive root g, chi(0) = 0.
 * psi(x) = chi(x) + chi(x^2) is integer-valued:
 * 2 on the cube set C_p, 0 at 0, -1 elsewhere.
 */
class CharTable {
 public:
  explicit CharTable(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  elem p() const { return field_->p(); }

  // chi(x)^power, power in {1, 2}; chi(0) = 0
  EisensteinInt chi(elem x, int power = 1) const;
  // exponent e with chi(x) = w^e; -1 at x = 0
  int chi_exp(elem x) const { return chi_exp_[x]; }
  int psi(elem x) const { return psi_[x]; }

  // sum over x in F_p of psi(x)^k, exact
  std::int64_t psi_power_sum(int k) const;
  // S(b) = sum_x psi(x) psi(x+b)
  std::int64_t psi_shift_sum(elem b) const;
  // sum_x psi(x) psi(x+b1) psi(x+b2)
  std::int64_t psi_triple_sum(elem b1, elem b2) const;

 private:
  FieldPtr field_;
  std::vector<std::int8_t> chi_exp_;  // -1 at 0, else 0/1/2
  std::vector<std::int8_t> psi_;      // 2 / 0 / -1
};

// J(chi^r, chi^s) = sum_x chi^r(x) chi^s(1-x); r, s in {1, 2}
EisensteinInt jacobi_sum(const CharTable& t, int r, int s);

/**
 * Complete character sum sum_x chi^power(a * f(x)) with the exact Weil-type
 * certificate: r = number of distinct roots of f in a closure, and the
 * norm comparison norm(sum) <= (r-1)^2 * p carried out in integers.
 * The bound is only asserted when f (made monic) is not a perfect cube;
 * otherwise hypothesis_ok is false and weil_ok is not meaningful.
 */
struct CharSumResult {
  EisensteinInt sum;
  int distinct_roots = 0;
  bool hypothesis_ok = false;  // monic part of f is not a cube
  bool weil_ok = false;        // norm(sum) <= (r-1)^2 p (when hypothesis_ok)
  std::int64_t norm = 0;
  std::int64_t bound = 0;      // (r-1)^2 p
};

CharSumResult char_sum(const CharTable& t, const FpPoly& f, int power, elem a);

}  // namespace ffcube
