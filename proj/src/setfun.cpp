#include "ffcube/setfun.hpp"

namespace ffcube {

FpFunction::FpFunction(FieldPtr field) : field_(std::move(field)) {
  v_.assign(field_->p(), EisensteinInt{});
}

FpFunction FpFunction::indicator(const FpSubset& s) {
  FpFunction f(s.field());
  s.for_each([&](elem x) { f.v_[x] = EisensteinInt::integer(1); });
  return f;
}

FpFunction FpFunction::psi(const CharTable& t) {
  FpFunction f(t.field());
  for (elem x = 0; x < t.p(); ++x) f.v_[x] = EisensteinInt::integer(t.psi(x));
  return f;
}

FpFunction FpFunction::chi(const CharTable& t, int power) {
  FpFunction f(t.field());
  for (elem x = 0; x < t.p(); ++x) f.v_[x] = t.chi(x, power);
  return f;
}

FpFunction FpFunction::delta(FieldPtr field, elem x0) {
  FpFunction f(std::move(field));
  f.v_[x0] = EisensteinInt::integer(1);
  return f;
}

bool FpFunction::integer_valued() const {
  for (const auto& z : v_)
    if (z.b != 0) return false;
  return true;
}

FpFunction FpFunction::reflected() const {
  FpFunction out(field_);
  for (elem x = 0; x < p(); ++x) out.v_[field_->neg(x)] = v_[x];
  return out;
}

FpFunction FpFunction::conjugated() const {
  FpFunction out(field_);
  for (elem x = 0; x < p(); ++x) out.v_[x] = v_[x].conj();
  return out;
}

// ---- subset algebra -------------------------------------------------------

FpSubset sumset(const FpSubset& a, const FpSubset& b) {
  FpSubset acc(a.field());
  if (a.field()->p() != b.field()->p()) fail(Errc::FieldMismatch, "sumset over different fields");
  b.for_each([&](elem bb) { acc.or_shifted(a, bb); });
  return acc;
}

FpSubset k_fold_sumset(const std::vector<FpSubset>& parts) {
  if (parts.empty()) fail(Errc::EmptySet, "k_fold_sumset of no parts");
  FpSubset acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = sumset(acc, parts[i]);
  return acc;
}

FpSubset difference_set(const FpSubset& a) { return sumset(a.reflected(), a); }

std::int64_t representation_count(const FpSubset& a, const FpSubset& b, elem x) {
  if (a.field()->p() != b.field()->p())
    fail(Errc::FieldMismatch, "representation_count over different fields");
  const auto& F = *a.field();
  std::int64_t n = 0;
  b.for_each([&](elem bb) { n += a.test(F.sub(x, bb)) ? 1 : 0; });
  return n;
}

// ---- function algebra -----------------------------------------------------

FpFunction circ(const FpFunction& f, const FpFunction& g) {
  if (f.field()->p() != g.field()->p()) fail(Errc::FieldMismatch, "circ over different fields");
  const elem p = f.p();
  const auto& F = *f.field();
  FpFunction out(f.field());
  for (elem x = 0; x < p; ++x) {
    EisensteinInt s{};
    for (elem y = 0; y < p; ++y) {
      const EisensteinInt& fy = f[y];
      if (fy.is_zero()) continue;
      s += fy * g[F.add(x, y)];
    }
    out[x] = s;
  }
  return out;
}

FpFunction convolve(const FpFunction& f, const FpFunction& g) {
  // (f * g)(x) = sum_y f(y) g(x - y) = (f^c o g)(x)
  return circ(f.reflected(), g);
}

FpFunction circ_indicator(const FpSubset& a, const FpFunction& g) {
  if (a.field()->p() != g.field()->p()) fail(Errc::FieldMismatch, "circ over different fields");
  const elem p = g.p();
  const auto& F = *g.field();
  FpFunction out(g.field());
  const auto xs = a.elements();
  for (elem x = 0; x < p; ++x) {
    EisensteinInt s{};
    for (elem y : xs) s += g[F.add(x, y)];
    out[x] = s;
  }
  return out;
}

FpFunction convolve_indicator(const FpSubset& a, const FpFunction& g) {
  const elem p = g.p();
  const auto& F = *g.field();
  FpFunction out(g.field());
  const auto xs = a.elements();
  for (elem x = 0; x < p; ++x) {
    EisensteinInt s{};
    for (elem y : xs) s += g[F.sub(x, y)];
    out[x] = s;
  }
  return out;
}

EisensteinInt inner_product(const FpFunction& f, const FpFunction& g) {
  if (f.field()->p() != g.field()->p())
    fail(Errc::FieldMismatch, "inner_product over different fields");
  EisensteinInt s{};
  for (elem x = 0; x < f.p(); ++x) s += f[x] * g[x].conj();
  return s;
}

EisensteinInt total_sum(const FpFunction& f) {
  EisensteinInt s{};
  for (elem x = 0; x < f.p(); ++x) s += f[x];
  return s;
}

std::int64_t norm2_sq(const FpFunction& f) {
  const EisensteinInt n = inner_product(f, f);
  if (n.b != 0) fail(Errc::Internal, "norm2_sq produced a non-integer");
  return n.a;
}

EisensteinInt correlation(const FpFunction& f, const std::vector<elem>& shifts) {
  const elem p = f.p();
  const auto& F = *f.field();
  EisensteinInt s{};
  for (elem x = 0; x < p; ++x) {
    EisensteinInt t = f[x];
    if (t.is_zero()) continue;
    for (elem sh : shifts) {
      t *= f[F.add(x, sh)];
      if (t.is_zero()) break;
    }
    s += t;
  }
  return s;
}

ValueHistogram histogram(const FpFunction& f) {
  if (!f.integer_valued()) fail(Errc::NonIntegerValues, "histogram needs an integer-valued function");
  ValueHistogram h;
  for (elem x = 0; x < f.p(); ++x) h[f[x].a] += 1;
  return h;
}

}  // namespace ffcube
