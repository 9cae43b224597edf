#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ffcube/error.hpp"
#include "ffcube/field.hpp"

namespace ffcube {

/**
 * Dense polynomial over F_p, coefficients ascending, always normalized
 * (no trailing zero coefficients). degree() of the zero polynomial is -1.
 *
 * The point of this type is squarefree structure in characteristic p:
 * the number of distinct roots in an algebraic closure and perfect-power
 * detection, both needed as the r in complete character sum bounds.
 */
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(elem p, std::vector<elem> coeffs);

  static FpPoly zero(elem p) { return FpPoly(p, {}); }
  static FpPoly constant(elem p, elem c) { return FpPoly(p, {c}); }
  static FpPoly x(elem p) { return FpPoly(p, {0, 1}); }

  elem p() const { return p_; }
  const std::vector<elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  elem leading() const { return c_.back(); }

  elem eval(elem x) const;

  FpPoly derivative() const;
  FpPoly monic() const;

  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator*(const FpPoly& o) const;
  // quotient/remainder; divisor must be nonzero
  std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const;

  bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

 private:
  void normalize();
  void check_field(const FpPoly& o) const;

  elem p_ = 0;
  std::vector<elem> c_;
};

// Monic gcd, Euclid over F_p[x].
FpPoly poly_gcd(FpPoly a, FpPoly b);

// Squarefree decomposition in characteristic p: f = lc * prod fac_i^mult_i
// with the fac_i monic, squarefree, pairwise coprime, mult_i distinct.
struct SquarefreeFactor {
  FpPoly factor;
  std::uint64_t multiplicity;
};
std::vector<SquarefreeFactor> squarefree_decomposition(const FpPoly& f);

// Number of distinct roots of f in an algebraic closure of F_p
// (= degree of the squarefree part). ZeroPolynomial for f = 0; 0 for constants.
int squarefree_part_degree(const FpPoly& f);

// Whether f = g^m for some g in F_p[x]. Checks coefficient structure and
// that the leading coefficient is an m-th power in F_p.
bool is_perfect_power(const FpPoly& f, std::uint64_t m);

}  // namespace ffcube
