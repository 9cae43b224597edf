#include "ffcube/poly.hpp"

#include <algorithm>
#include <numeric>

namespace ffcube {

namespace {

elem mulmod(elem a, elem b, elem p) { return static_cast<elem>((std::uint64_t)a * b % p); }

elem powmod(std::uint64_t x, std::uint64_t e, elem p) {
  std::uint64_t r = 1 % p;
  x %= p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<elem>(r);
}

elem invmod(elem a, elem p) { return powmod(a, p - 2, p); }

}  // namespace

FpPoly::FpPoly(elem p, std::vector<elem> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (!is_prime_u32(p)) fail(Errc::NotPrime, "FpPoly: modulus must be prime");
  for (elem& c : c_) c %= p_;
  normalize();
}

void FpPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void FpPoly::check_field(const FpPoly& o) const {
  if (p_ != o.p_) fail(Errc::FieldMismatch, "polynomials over different primes");
}

elem FpPoly::eval(elem x) const {
  std::uint64_t acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = (acc * x + c_[i]) % p_;
  return static_cast<elem>(acc);
}

FpPoly FpPoly::derivative() const {
  if (c_.size() <= 1) return zero(p_);
  std::vector<elem> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    d[i - 1] = mulmod(c_[i], static_cast<elem>(i % p_), p_);
  return FpPoly(p_, std::move(d));
}

FpPoly FpPoly::monic() const {
  if (is_zero()) fail(Errc::ZeroPolynomial, "monic of zero polynomial");
  if (leading() == 1) return *this;
  const elem s = invmod(leading(), p_);
  std::vector<elem> c(c_);
  for (elem& x : c) x = mulmod(x, s, p_);
  return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  check_field(o);
  std::vector<elem> c(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    elem s = (i < c_.size() ? c_[i] : 0) + (i < o.c_.size() ? o.c_[i] : 0);
    c[i] = s >= p_ ? s - p_ : s;
  }
  return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
  check_field(o);
  std::vector<elem> c(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    elem a = i < c_.size() ? c_[i] : 0;
    elem b = i < o.c_.size() ? o.c_[i] : 0;
    c[i] = a >= b ? a - b : a + p_ - b;
  }
  return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
  check_field(o);
  if (is_zero() || o.is_zero()) return zero(p_);
  std::vector<elem> c(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      std::uint64_t v = c[i + j] + (std::uint64_t)c_[i] * o.c_[j] % p_;
      c[i + j] = static_cast<elem>(v >= p_ ? v - p_ : v);
    }
  }
  return FpPoly(p_, std::move(c));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& d) const {
  check_field(d);
  if (d.is_zero()) fail(Errc::ZeroPolynomial, "division by zero polynomial");
  if (degree() < d.degree()) return {zero(p_), *this};
  std::vector<elem> rem(c_);
  std::vector<elem> quo(c_.size() - d.c_.size() + 1, 0);
  const elem lead_inv = invmod(d.leading(), p_);
  for (std::size_t i = quo.size(); i-- > 0;) {
    const elem top = rem[i + d.c_.size() - 1];
    if (top == 0) continue;
    const elem q = mulmod(top, lead_inv, p_);
    quo[i] = q;
    for (std::size_t j = 0; j < d.c_.size(); ++j) {
      elem sub = mulmod(q, d.c_[j], p_);
      elem& r = rem[i + j];
      r = r >= sub ? r - sub : r + p_ - sub;
    }
  }
  return {FpPoly(p_, std::move(quo)), FpPoly(p_, std::move(rem))};
}

FpPoly poly_gcd(FpPoly a, FpPoly b) {
  if (a.is_zero() && b.is_zero()) return a;
  while (!b.is_zero()) {
    FpPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

// f must have zero derivative, i.e. only exponents divisible by p.
// Returns z with f(x) = z(x^p); over F_p this also means f = z^p.
FpPoly pth_root_shape(const FpPoly& f) {
  const elem p = f.p();
  std::vector<elem> z(f.coeffs().size() / p + 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i] == 0) continue;
    if (i % p != 0) fail(Errc::Internal, "pth_root_shape: derivative was not zero");
    z[i / p] = f.coeffs()[i];
  }
  return FpPoly(p, std::move(z));
}

void decompose_monic(const FpPoly& f, std::uint64_t scale,
                     std::vector<SquarefreeFactor>& out) {
  if (f.degree() <= 0) return;
  FpPoly fp = f.derivative();
  if (fp.is_zero()) {
    // f = z(x^p) = z(x)^p: every multiplicity picks up a factor p
    decompose_monic(pth_root_shape(f).monic(), scale * f.p(), out);
    return;
  }
  FpPoly g = poly_gcd(f, fp);       // prod_{p|e} P^e * prod_{p∤e} P^{e-1}
  FpPoly w = f.divmod(g).first.monic();  // prod_{p∤e} P, each once
  std::uint64_t i = 1;
  while (w.degree() > 0) {
    FpPoly y = poly_gcd(w, g);
    FpPoly fac = w.divmod(y).first;  // multiplicity exactly i
    if (fac.degree() > 0) out.push_back({fac.monic(), scale * i});
    w = std::move(y);
    if (!g.is_zero() && w.degree() >= 0) g = g.divmod(w).first;
    ++i;
  }
  // leftover g = prod_{p|e} P^e, a p-th power
  if (g.degree() > 0) decompose_monic(pth_root_shape(g.monic()).monic(), scale * f.p(), out);
}

}  // namespace

std::vector<SquarefreeFactor> squarefree_decomposition(const FpPoly& f) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "squarefree_decomposition of zero");
  std::vector<SquarefreeFactor> out;
  decompose_monic(f.monic(), 1, out);
  std::sort(out.begin(), out.end(), [](const SquarefreeFactor& a, const SquarefreeFactor& b) {
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

int squarefree_part_degree(const FpPoly& f) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "squarefree_part_degree of zero");
  int r = 0;
  for (const auto& sf : squarefree_decomposition(f)) r += sf.factor.degree();
  return r;
}

bool is_perfect_power(const FpPoly& f, std::uint64_t m) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "is_perfect_power of zero");
  if (m == 0) fail(Errc::BadInput, "is_perfect_power: m must be positive");
  if (m == 1) return true;
  for (const auto& sf : squarefree_decomposition(f))
    if (sf.multiplicity % m != 0) return false;
  // leading coefficient must itself be an m-th power in F_p^*
  const elem p = f.p();
  const std::uint64_t d = std::gcd<std::uint64_t>(m, p - 1);
  return powmod(f.leading(), (p - 1) / d, p) == 1;
}

}  // namespace ffcube
