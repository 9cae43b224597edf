#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ffcube/characters.hpp"
#include "ffcube/eisenstein.hpp"
#include "ffcube/field.hpp"

namespace ffcube {

/**
 * A function F_p -> Z[w], stored densely. Indicators, characters and the
 * residual functions of the moment identities all live here. Arithmetic is
 * exact; the desk-scale caps documented on each operation keep 64-bit
 * accumulators safe.
 */
class FpFunction {
 public:
  FpFunction() = default;
  explicit FpFunction(FieldPtr field);

  static FpFunction indicator(const FpSubset& s);
  static FpFunction psi(const CharTable& t);
  static FpFunction chi(const CharTable& t, int power);
  static FpFunction delta(FieldPtr field, elem x0);  // point mass at x0

  const FieldPtr& field() const { return field_; }
  elem p() const { return field_->p(); }

  EisensteinInt& operator[](elem x) { return v_[x]; }
  const EisensteinInt& operator[](elem x) const { return v_[x]; }

  bool integer_valued() const;
  // f^c(x) = f(-x)
  FpFunction reflected() const;
  FpFunction conjugated() const;

  bool operator==(const FpFunction& o) const { return v_ == o.v_; }

 private:
  FieldPtr field_;
  std::vector<EisensteinInt> v_;
};

// ---- subset algebra -------------------------------------------------------

// A + B = { a + b }
FpSubset sumset(const FpSubset& a, const FpSubset& b);
// sum of all listed sets (at least one)
FpSubset k_fold_sumset(const std::vector<FpSubset>& parts);
// A - A
FpSubset difference_set(const FpSubset& a);
// #{(a,b) in A x B : a + b = x}
std::int64_t representation_count(const FpSubset& a, const FpSubset& b, elem x);

// ---- function algebra -----------------------------------------------------

// (f o g)(x) = sum_y f(y) g(x + y)
FpFunction circ(const FpFunction& f, const FpFunction& g);
// (f * g)(x) = sum_y f(y) g(x - y); satisfies f * g = f^c o g
FpFunction convolve(const FpFunction& f, const FpFunction& g);
// fast path for indicator(first argument) o g: O(p |A|)
FpFunction circ_indicator(const FpSubset& a, const FpFunction& g);
FpFunction convolve_indicator(const FpSubset& a, const FpFunction& g);

// <f, g> = sum_x f(x) * conj(g(x))
EisensteinInt inner_product(const FpFunction& f, const FpFunction& g);
// <f> = sum_x f(x)
EisensteinInt total_sum(const FpFunction& f);
// ||f||^2 = <f, f>, always a rational integer
std::int64_t norm2_sq(const FpFunction& f);

// C_{k+1}(f)(t_1..t_k) = sum_x f(x) f(x+t_1) ... f(x+t_k)
EisensteinInt correlation(const FpFunction& f, const std::vector<elem>& shifts);

// Value histogram of an integer-valued function: value -> multiplicity.
// NonIntegerValues if any omega component is nonzero.
using ValueHistogram = std::map<std::int64_t, std::int64_t>;
ValueHistogram histogram(const FpFunction& f);

}  // namespace ffcube
