#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace ffcube {

using bigint = boost::multiprecision::cpp_int;

// Exact decision of  lhs <= k * sqrt(p)  for integers lhs, k >= 0, p >= 0,
// by one squaring. Every inequality this library checks against sqrt(p)
// reduces to this form after clearing denominators.
inline bool le_k_sqrt(const bigint& lhs, const bigint& k, const bigint& p) {
  if (lhs <= 0) return true;
  return lhs * lhs <= k * k * p;
}

// Exact decision of  lhs >= k * sqrt(p).
inline bool ge_k_sqrt(const bigint& lhs, const bigint& k, const bigint& p) {
  if (lhs < 0) return false;
  return lhs * lhs >= k * k * p;
}

inline std::string big_str(const bigint& v) { return v.str(); }

}  // namespace ffcube
