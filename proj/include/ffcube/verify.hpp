#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffcube/characters.hpp"
#include "ffcube/rng.hpp"
#include "ffcube/setfun.hpp"

namespace ffcube {

// One certified comparison. lhs/rhs are the exact values compared, printed
// in full (plain integers, Eisenstein integers, or counts), so a failing
// line pinpoints what went wrong on its own.
struct CheckLine {
  std::string name;
  std::string lhs, rhs;
  bool pass = true;
};

struct IdentityReport {
  std::string identity_id;
  elem p = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<CheckLine> lines;
  bool exact_equal = true;  // conjunction of all lines
  std::string note;

  void add(std::string name, std::string lhs, std::string rhs, bool pass);
  void add_eq(std::string name, std::int64_t lhs, std::int64_t rhs);
};

// Integer-valued test function with entries uniform in [lo, hi].
FpFunction random_integer_function(const FieldPtr& field, Rng& rng, int lo = -3, int hi = 3);

// sum_x (f o g)^{k+1}(x)  ==  sum over k-tuples of C_{k+1}(f) * C_{k+1}(g),
// where C_{k+1}(f)(t_1..t_k) = sum_x f(x) f(x+t_1)...f(x+t_k).
// Cost O(p^{k+1}); refuses when p^{k+1} exceeds tuple_cap.
IdentityReport verify_shkredov_correlation(const FieldPtr& field, int k, const FpFunction& f,
                                           const FpFunction& g,
                                           std::uint64_t tuple_cap = 10'000'000);

// <f o psi, g o psi> == 2p<f,g> - 2<f><g-> + J(chi,chi)<chi^2, f- o g>
//                       + J(chi^2,chi^2)<chi, f- o g>
// for integer-valued f, g (conjugation is then the identity on values).
IdentityReport verify_inner_product_identity(const CharTable& chars, const FpFunction& f,
                                             const FpFunction& g);

// H(x) = (1 + psi(x))(2 - psi(x+b))(2 - psi(x-b)); certifies the four-term
// expansion of sum_x H(x), and when every cube x has x+b or x-b a cube,
// additionally H = 0 off 0 and sum H = (2 - psi(b))^2 in [0, 9].
IdentityReport verify_h_expansion(const CharTable& chars, elem b);

// The sieve mask N(x) = prod_{b in B} (1 + psi(x+b)) over a decomposition
// A + B = C_p: N >= 0 everywhere, N = 3^|B| on A, and the size window
// (p-1)/(3k) <= |A| <= p/3^k + (2k/3) sqrt(p) (exact squared comparison).
IdentityReport verify_cover_mask(const CharTable& chars, const FpSubset& A, const FpSubset& B);

// Structure of the fourth correlation C_4(psi)(x1,x2,x3) = sum_x
// psi(x)psi(x+x1)psi(x+x2)psi(x+x3): the closed form on the three diagonal
// crosses, the origin value 6(p-1) <= 6p, and |C_4|^2 <= 48^2 p elsewhere.
// Exhaustive over all tuples for p <= 31, seeded sampling above.
IdentityReport verify_psi_fourth_correlation(const CharTable& chars, std::uint64_t trials = 1000,
                                             std::uint64_t seed = 1);

// Moment identities of a two-part decomposition A + B = C_p, a = |A|, b = |B|:
// (A o psi) = 2a on B, its second/fourth moments over B are 4a^2 b and
// 16a^4 b, and the residual r = (A o psi) - 2a B has total sum -2ab.
IdentityReport verify_decomposition_moments(const FpSubset& A, const FpSubset& B);

// Moment facts for a difference cover A - A = C_p u {0} with 0 in A:
// s = (A * psi) - 2(a-1)A vanishes on A, s == -a (mod 3) off A with the
// exact cube-count form 3|C_p n (x-A)| - a, <s> = -2a(a-1), and the
// count of x with s(x) = -1 is at most 2(p-1)/3.
IdentityReport verify_diff_cover_moments(const FpSubset& A);

// Norm-vs-histogram facts for integer-valued f and integer c:
//   ||f||^2 == c<f> + sum_k N_k (k^2 - ck)          (exact)
//   ||f||^2 >= c|<f>| - (c-1)|sum_{0<|f(x)|<c} f(x)| (inequality)
IdentityReport verify_shkredov_trick(const FpFunction& f, std::int64_t c);

// |A_1 + ... + A_k|^{k-1} <= prod_j |sum of the A_i, i != j|, k >= 2.
IdentityReport verify_gmr(const std::vector<FpSubset>& sets);

}  // namespace ffcube
