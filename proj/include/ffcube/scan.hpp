#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffcube/search.hpp"

namespace ffcube {

// Tasks: pair2, pair3, selfsum, diffcover, triple (exhaustive searches per
// prime) and identities, weil (per-prime certification bundles).
struct ScanConfig {
  std::string task = "pair2";
  elem pmin = 2;
  elem pmax = 2;
  int max_part = 2;            // triple only
  std::uint64_t trials = 100;  // identities / weil sampling per prime
  std::uint64_t seed = 1;
  int threads = 1;
  SearchParams search;
};

struct ScanRow {
  elem p = 0;
  bool ok = true;
  std::int64_t witnesses = 0;
  bool exhaustive = true;
  std::string detail;
  std::vector<DecompositionRecord> records;  // search tasks only
};

struct ScanResult {
  std::vector<ScanRow> rows;  // one per prime == 1 (mod 3) in range, ascending
  bool all_ok = true;
};

std::vector<elem> primes_one_mod_three(elem pmin, elem pmax);

// "{1,5}+{0,7}" style summary of a record's parts
std::string parts_brief(const std::vector<FpSubset>& parts);

// Runs the task over every prime == 1 (mod 3) in [pmin, pmax], distributing
// primes across threads; row order and content do not depend on scheduling.
ScanResult run_scan(const ScanConfig& cfg);

}  // namespace ffcube
