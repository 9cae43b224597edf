#include "ffcube/characters.hpp"

#include <string>

namespace ffcube {

CharTable::CharTable(FieldPtr field) : field_(std::move(field)) {
  if (!field_->one_mod_three())
    fail(Errc::WrongResidueClass,
         "cubic characters need p == 1 (mod 3), got p=" + std::to_string(field_->p()));
  const elem p = field_->p();
  chi_exp_.assign(p, -1);
  psi_.assign(p, 0);
  for (elem x = 1; x < p; ++x) {
    const int e = field_->chi_exponent(x);
    chi_exp_[x] = static_cast<std::int8_t>(e);
    psi_[x] = static_cast<std::int8_t>(e == 0 ? 2 : -1);
  }
}

EisensteinInt CharTable::chi(elem x, int power) const {
  if (power != 1 && power != 2) fail(Errc::BadInput, "chi power must be 1 or 2");
  const int e = chi_exp_[x];
  if (e < 0) return {0, 0};
  return EisensteinInt::unit_power(e * power);
}

std::int64_t CharTable::psi_power_sum(int k) const {
  std::int64_t s = 0;
  for (elem x = 0; x < p(); ++x) {
    std::int64_t t = 1;
    for (int i = 0; i < k; ++i) t *= psi_[x];
    s += t;
  }
  return s;
}

std::int64_t CharTable::psi_shift_sum(elem b) const {
  const elem pp = p();
  std::int64_t s = 0;
  for (elem x = 0; x < pp; ++x) s += (std::int64_t)psi_[x] * psi_[field_->add(x, b)];
  return s;
}

std::int64_t CharTable::psi_triple_sum(elem b1, elem b2) const {
  const elem pp = p();
  std::int64_t s = 0;
  for (elem x = 0; x < pp; ++x)
    s += (std::int64_t)psi_[x] * psi_[field_->add(x, b1)] * psi_[field_->add(x, b2)];
  return s;
}

EisensteinInt jacobi_sum(const CharTable& t, int r, int s) {
  if ((r != 1 && r != 2) || (s != 1 && s != 2)) fail(Errc::BadInput, "jacobi_sum powers must be 1 or 2");
  const elem p = t.p();
  const auto& F = *t.field();
  // accumulate counts of w^0, w^1, w^2 then assemble once
  std::int64_t n[3] = {0, 0, 0};
  for (elem x = 0; x < p; ++x) {
    const int e1 = t.chi_exp(x);
    if (e1 < 0) continue;
    const int e2 = t.chi_exp(F.sub(1 % p, x));
    if (e2 < 0) continue;
    n[(e1 * r + e2 * s) % 3] += 1;
  }
  return n[0] * EisensteinInt::unit_power(0) + n[1] * EisensteinInt::unit_power(1) +
         n[2] * EisensteinInt::unit_power(2);
}

CharSumResult char_sum(const CharTable& t, const FpPoly& f, int power, elem a) {
  if (power != 1 && power != 2) fail(Errc::BadInput, "char_sum power must be 1 or 2");
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "char_sum of zero polynomial");
  if (f.p() != t.p()) fail(Errc::FieldMismatch, "polynomial prime differs from character prime");
  const elem p = t.p();
  a %= p;

  CharSumResult res;
  std::int64_t n[3] = {0, 0, 0};
  for (elem x = 0; x < p; ++x) {
    const elem v = t.field()->mul(a, f.eval(x));
    const int e = t.chi_exp(v);
    if (e >= 0) n[(e * power) % 3] += 1;
  }
  res.sum = n[0] * EisensteinInt::unit_power(0) + n[1] * EisensteinInt::unit_power(1) +
            n[2] * EisensteinInt::unit_power(2);

  res.distinct_roots = f.degree() >= 1 ? squarefree_part_degree(f) : 0;
  res.hypothesis_ok = f.degree() >= 1 && !is_perfect_power(f.monic(), 3);
  res.norm = res.sum.norm();
  const std::int64_t r1 = res.distinct_roots > 0 ? res.distinct_roots - 1 : 0;
  res.bound = r1 * r1 * (std::int64_t)p;
  res.weil_ok = res.hypothesis_ok && res.norm <= res.bound;
  return res;
}

}  // namespace ffcube
