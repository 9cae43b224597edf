#include "ffcube/field.hpp"

#include <algorithm>
#include <string>

#include "ffcube/eisenstein.hpp"

namespace ffcube {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::CapacityExceeded: return "CapacityExceeded";
    case Errc::WrongResidueClass: return "WrongResidueClass";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::EmptySet: return "EmptySet";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NonIntegerValues: return "NonIntegerValues";
    case Errc::NotADecomposition: return "NotADecomposition";
    case Errc::NotADiffCover: return "NotADiffCover";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::TripleExcluded: return "TripleExcluded";
    case Errc::BadInput: return "BadInput";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

std::string eisenstein_to_string(const EisensteinInt& z) {
  if (z.b == 0) return std::to_string(z.a);
  std::string s;
  if (z.a != 0) s += std::to_string(z.a);
  if (z.b > 0 && z.a != 0) s += "+";
  if (z.b == -1) s += "-";
  else if (z.b != 1) s += std::to_string(z.b);
  s += "w";
  return s;
}

bool is_prime_u32(elem n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (elem d = 3; (std::uint64_t)d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::vector<elem> prime_factors(elem n) {
  std::vector<elem> fs;
  for (elem d = 2; (std::uint64_t)d * d <= n; d == 2 ? d = 3 : d += 2) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

elem pow_mod(std::uint64_t x, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  x %= p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<elem>(r);
}

elem least_primitive_root(elem p) {
  if (p == 2) return 1;
  const std::vector<elem> qs = prime_factors(p - 1);
  for (elem g = 2; g < p; ++g) {
    bool ok = true;
    for (elem q : qs) {
      if (pow_mod(g, (p - 1) / q, p) == 1) { ok = false; break; }
    }
    if (ok) return g;
  }
  fail(Errc::Internal, "no primitive root found for p=" + std::to_string(p));
}

}  // namespace

std::shared_ptr<const PrimeField> PrimeField::build(elem p) { return build(p, Options()); }

std::shared_ptr<const PrimeField> PrimeField::build(elem p, const Options& opt) {
  if (p > opt.max_p)
    fail(Errc::CapacityExceeded,
         "p=" + std::to_string(p) + " exceeds capacity " + std::to_string(opt.max_p));
  if (!is_prime_u32(p)) fail(Errc::NotPrime, "p=" + std::to_string(p) + " is not prime");

  auto f = std::shared_ptr<PrimeField>(new PrimeField());
  f->p_ = p;
  f->g_ = least_primitive_root(p);
  f->class_.assign(p, static_cast<std::uint8_t>(CubeClass::Zero));

  const bool one_mod3 = (p % 3 == 1);
  if (opt.index_table) {
    f->index_.assign(p, 0);
    std::uint64_t x = 1;
    for (elem k = 0; k + 1 < p; ++k) {
      f->index_[x] = k;
      f->class_[x] = one_mod3 ? static_cast<std::uint8_t>(k % 3) : 0;
      x = x * f->g_ % p;
    }
  } else {
    // streaming classification: x^((p-1)/3) lands in {1, z, z^2} with
    // z = g^((p-1)/3), and the landing spot is w^(ind(x) mod 3)
    if (one_mod3) {
      const elem z = pow_mod(f->g_, (p - 1) / 3, p);
      const elem z2 = static_cast<elem>((std::uint64_t)z * z % p);
      for (elem v = 1; v < p; ++v) {
        const elem t = pow_mod(v, (p - 1) / 3, p);
        f->class_[v] = t == 1 ? 0 : (t == z ? 1 : (t == z2 ? 2 : 0));
        if (t != 1 && t != z && t != z2)
          fail(Errc::Internal, "cube classification failed at x=" + std::to_string(v));
      }
    } else {
      for (elem v = 1; v < p; ++v) f->class_[v] = 0;
    }
  }

  f->cubes_.reserve(one_mod3 ? (p - 1) / 3 : (p > 0 ? p - 1 : 0));
  for (elem v = 1; v < p; ++v)
    if (f->class_[v] == 0) f->cubes_.push_back(v);

  const std::size_t expect = one_mod3 ? (p - 1) / 3 : p - 1;
  if (f->cubes_.size() != expect)
    fail(Errc::Internal, "cube count mismatch for p=" + std::to_string(p));
  return f;
}

elem PrimeField::index_of(elem x) const {
  if (x == 0 || x >= p_) fail(Errc::BadInput, "index_of: element out of range");
  if (index_.empty()) fail(Errc::BadInput, "index_of: field built without index table");
  return index_[x];
}

elem PrimeField::pow(elem x, std::uint64_t e) const { return pow_mod(x, e, p_); }

elem PrimeField::inv(elem x) const {
  if (x == 0) fail(Errc::BadInput, "inv(0)");
  return pow_mod(x, p_ - 2, p_);
}

// ---------------------------------------------------------------------------
// FpSubset

FpSubset::FpSubset(FieldPtr field) : field_(std::move(field)) {
  words_.assign((field_->p() + 63) / 64, 0);
}

FpSubset FpSubset::from_elements(FieldPtr field, const std::vector<elem>& xs) {
  FpSubset s(std::move(field));
  for (elem x : xs) s.add(x);
  return s;
}

FpSubset FpSubset::singleton(FieldPtr field, elem x) {
  FpSubset s(std::move(field));
  s.add(x);
  return s;
}

FpSubset FpSubset::full(FieldPtr field) {
  FpSubset s(field);
  const elem p = field->p();
  for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~0ull;
  if (p & 63) s.words_.back() &= (1ull << (p & 63)) - 1;
  s.card_ = p;
  return s;
}

FpSubset FpSubset::cubes(FieldPtr field) {
  FpSubset s(field);
  for (elem x : field->cube_elements()) s.add(x);
  return s;
}

void FpSubset::add(elem x) {
  if (x >= field_->p()) fail(Errc::BadInput, "FpSubset::add: element out of range");
  std::uint64_t& w = words_[x >> 6];
  const std::uint64_t bit = 1ull << (x & 63);
  if (!(w & bit)) { w |= bit; ++card_; }
}

void FpSubset::remove(elem x) {
  std::uint64_t& w = words_[x >> 6];
  const std::uint64_t bit = 1ull << (x & 63);
  if (w & bit) { w &= ~bit; --card_; }
}

std::vector<elem> FpSubset::elements() const {
  std::vector<elem> out;
  out.reserve(static_cast<std::size_t>(card_));
  for_each([&](elem x) { out.push_back(x); });
  return out;
}

void FpSubset::recount() {
  std::int64_t c = 0;
  for (std::uint64_t w : words_) c += std::popcount(w);
  card_ = c;
}

void FpSubset::check_same_field(const FpSubset& o) const {
  if (!field_ || !o.field_ || field_->p() != o.field_->p())
    fail(Errc::FieldMismatch, "subset operands over different fields");
}

namespace {

// OR bits [from, from+len) of src into dst starting at bit `to`.
// Both arrays are little-endian 64-bit words over the same bit length.
void or_bit_range(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
                  std::size_t from, std::size_t len, std::size_t to) {
  auto read64 = [&](std::size_t bitpos) -> std::uint64_t {
    const std::size_t wi = bitpos >> 6, bo = bitpos & 63;
    std::uint64_t lo = wi < src.size() ? src[wi] : 0;
    if (bo == 0) return lo;
    std::uint64_t hi = wi + 1 < src.size() ? src[wi + 1] : 0;
    return (lo >> bo) | (hi << (64 - bo));
  };
  std::size_t done = 0;
  while (done < len) {
    const std::size_t n = std::min<std::size_t>(64, len - done);
    std::uint64_t win = read64(from + done);
    if (n < 64) win &= (1ull << n) - 1;
    const std::size_t pos = to + done, wi = pos >> 6, bo = pos & 63;
    dst[wi] |= win << bo;
    if (bo && wi + 1 < dst.size()) dst[wi + 1] |= win >> (64 - bo);
    done += n;
  }
}

}  // namespace

void FpSubset::or_shifted(const FpSubset& other, elem c) {
  check_same_field(other);
  const elem p = field_->p();
  c %= p;
  if (c == 0) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  } else {
    // bit j of other lands at (j + c) mod p: block [0, p-c) shifts up by c,
    // block [p-c, p) wraps to [0, c)
    or_bit_range(words_, other.words_, 0, p - c, c);
    or_bit_range(words_, other.words_, p - c, c, 0);
  }
  recount();
}

FpSubset FpSubset::shifted(elem c) const {
  FpSubset out(field_);
  out.or_shifted(*this, c);
  return out;
}

FpSubset FpSubset::dilated(elem lambda) const {
  if (lambda % field_->p() == 0) fail(Errc::BadInput, "dilation by zero");
  FpSubset out(field_);
  for_each([&](elem x) { out.add(field_->mul(lambda, x)); });
  return out;
}

FpSubset FpSubset::reflected() const {
  FpSubset out(field_);
  for_each([&](elem x) { out.add(field_->neg(x)); });
  return out;
}

FpSubset FpSubset::intersect(const FpSubset& o) const {
  check_same_field(o);
  FpSubset out(field_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & o.words_[i];
  out.recount();
  return out;
}

FpSubset FpSubset::unite(const FpSubset& o) const {
  check_same_field(o);
  FpSubset out(field_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] | o.words_[i];
  out.recount();
  return out;
}

bool FpSubset::is_subset_of(const FpSubset& o) const {
  check_same_field(o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

bool FpSubset::operator==(const FpSubset& o) const {
  check_same_field(o);
  return words_ == o.words_;
}

bool FpSubset::lex_less(const FpSubset& o) const {
  check_same_field(o);
  const auto a = elements(), b = o.elements();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace ffcube
