#pragma once

#include <stdexcept>
#include <string>

namespace ffcube {

// Failure modes surfaced by the library. The CLI maps these onto process
// exit codes (usage = 2, capacity = 3, everything verification-shaped = 1).
enum class Errc {
  NotPrime,
  CapacityExceeded,   // field larger than the configured build capacity
  WrongResidueClass,  // operation needs p == 1 (mod 3)
  FieldMismatch,
  EmptySet,
  ZeroPolynomial,
  NonIntegerValues,   // function has a nonzero omega component
  NotADecomposition,
  NotADiffCover,
  CapExceeded,        // work/size cap of a search or verify op
  TripleExcluded,     // three-part search refused: provably empty for this p
  BadInput,
  Internal,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace ffcube
