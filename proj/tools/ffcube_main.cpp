#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ffcube/bounds.hpp"
#include "ffcube/characters.hpp"
#include "ffcube/report.hpp"
#include "ffcube/scan.hpp"
#include "ffcube/search.hpp"
#include "ffcube/verify.hpp"

namespace {

using namespace ffcube;

int exit_for(Errc code) {
  switch (code) {
    case Errc::NotPrime:
    case Errc::WrongResidueClass:
    case Errc::BadInput:
    case Errc::TripleExcluded:
    case Errc::NotADecomposition:
    case Errc::NotADiffCover:
    case Errc::EmptySet:
    case Errc::FieldMismatch:
    case Errc::ZeroPolynomial:
    case Errc::NonIntegerValues:
      return 2;
    case Errc::CapacityExceeded:
    case Errc::CapExceeded:
      return 3;
    case Errc::Internal:
      return 1;
  }
  return 1;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void emit_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) fail(Errc::BadInput, "cannot open output file " + out_path);
  f << text;
}

// ---------------------------------------------------------------------------

ojson search_envelope(const std::string& task, const FieldPtr& field, const SearchOutcome& out,
                      ojson params, bool& ok) {
  ojson env = envelope_head(task);
  env["params"] = std::move(params);
  env["field"] = field_info_json(field);
  ojson records = ojson::array();
  for (const auto& rec : out.records) {
    ojson rj = record_json(rec);
    const BoundReport br = check_bounds(rec);
    if (!br.all_hold) ok = false;  // proven bounds can only fail on an artifact bug
    records.push_back(std::move(rj));
  }
  env["records"] = std::move(records);
  env["record_count"] = out.records.size();
  env["exhaustive"] = out.exhaustive;
  if (!out.note.empty()) env["note"] = out.note;
  return env;
}

// ---------------------------------------------------------------------------
// verify suites

struct SuiteAcc {
  ojson sample;                    // first report, for inspection
  ojson failures = ojson::array();
  std::int64_t total = 0, failed = 0;

  void take(const IdentityReport& rep) {
    if (total == 0) sample = identity_report_json(rep);
    ++total;
    if (!rep.exact_equal) {
      ++failed;
      if (failures.size() < 8) failures.push_back(identity_report_json(rep));
    }
  }
};

std::string canonical_suite(std::string name) {
  static const std::pair<const char*, const char*> kAliases[] = {
      {"lemma24", "correlation-moment"}, {"lemma41", "inner-product"},
      {"lemma22", "h-expansion"},        {"lemma23", "cover-mask"},
      {"c4", "fourth-correlation"},      {"lemma51", "norm-histogram"},
      {"lemma31", "size-product"},
  };
  for (const auto& [alias, target] : kAliases)
    if (name == alias) return target;
  return name;
}

struct VerifyArgs {
  elem p = 0;      // 0: suite default
  elem pmax = 0;   // 0: suite default
  int k = 0;       // 0: suite default
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
};

ojson run_verify(const std::string& suite_in, const VerifyArgs& va, bool& ok) {
  const std::string suite = canonical_suite(suite_in);
  SuiteAcc acc;
  ojson env = envelope_head("verify-" + suite);
  ojson params;
  params["suite"] = suite;
  params["seed"] = va.seed;
  std::string note;

  auto seeded = [&](std::uint64_t trial) { return Rng(mix_seed({va.seed, trial})); };

  if (suite == "correlation-moment") {
    const elem p = va.p ? va.p : 13;
    const int k = va.k ? va.k : 1;
    const std::uint64_t trials = va.trials ? va.trials : 100;
    params["p"] = p;
    params["k"] = k;
    params["trials"] = trials;
    const FieldPtr field = build_field(p);
    for (std::uint64_t t = 0; t < trials; ++t) {
      Rng rng = seeded(t);
      const FpFunction f = random_integer_function(field, rng);
      const FpFunction g = random_integer_function(field, rng);
      acc.take(verify_shkredov_correlation(field, k, f, g));
    }
  } else if (suite == "inner-product") {
    const elem p = va.p ? va.p : 13;
    const std::uint64_t trials = va.trials ? va.trials : 100;
    params["p"] = p;
    params["trials"] = trials;
    const FieldPtr field = build_field(p);
    CharTable chars(field);
    for (std::uint64_t t = 0; t < trials; ++t) {
      Rng rng = seeded(t);
      const FpFunction f = random_integer_function(field, rng);
      const FpFunction g = random_integer_function(field, rng);
      acc.take(verify_inner_product_identity(chars, f, g));
    }
  } else if (suite == "h-expansion") {
    std::vector<elem> ps;
    if (va.pmax)
      ps = primes_one_mod_three(2, va.pmax);
    else
      ps = {va.p ? va.p : 13};
    params["primes"] = ps.size();
    for (elem p : ps) {
      const FieldPtr field = build_field(p);
      CharTable chars(field);
      for (elem b = 0; b < p; ++b) acc.take(verify_h_expansion(chars, b));
    }
    note = "every b in F_p checked per prime";
  } else if (suite == "cover-mask") {
    const elem p = va.p ? va.p : 13;
    params["p"] = p;
    const FieldPtr field = build_field(p);
    CharTable chars(field);
    const SearchOutcome out = search_pair(field, va.k ? va.k : 2, SearchParams{});
    for (const auto& rec : out.records) {
      acc.take(verify_cover_mask(chars, rec.parts[0], rec.parts[1]));
      acc.take(verify_cover_mask(chars, rec.parts[1], rec.parts[0]));
    }
    if (out.records.empty()) note = "no two-part decompositions at this p; nothing to check";
  } else if (suite == "fourth-correlation") {
    const elem p = va.p ? va.p : 13;
    const std::uint64_t trials = va.trials ? va.trials : 1000;
    params["p"] = p;
    params["trials"] = trials;
    const FieldPtr field = build_field(p);
    CharTable chars(field);
    acc.take(verify_psi_fourth_correlation(chars, trials, va.seed));
  } else if (suite == "moments") {
    const elem p = va.p ? va.p : 13;
    params["p"] = p;
    const FieldPtr field = build_field(p);
    for (const auto& rec : search_pair(field, 2, SearchParams{}).records)
      acc.take(verify_decomposition_moments(rec.parts[0], rec.parts[1]));
    for (const auto& rec : search_self_sum(field, SearchParams{}).records)
      acc.take(verify_decomposition_moments(rec.parts[0], rec.parts[0]));
    for (const auto& rec : search_diff_cover(field, SearchParams{}).records)
      acc.take(verify_diff_cover_moments(rec.parts[0]));
    if (acc.total == 0) note = "no decompositions at this p; nothing to check";
  } else if (suite == "norm-histogram") {
    const elem p = va.p ? va.p : 13;
    const std::uint64_t trials = va.trials ? va.trials : 100;
    params["p"] = p;
    params["trials"] = trials;
    const FieldPtr field = build_field(p);
    for (std::uint64_t t = 0; t < trials; ++t) {
      Rng rng = seeded(t);
      const FpFunction f = random_integer_function(field, rng, -4, 4);
      acc.take(verify_shkredov_trick(f, -2));
      acc.take(verify_shkredov_trick(f, 3));
    }
    note = "each trial checked with c = -2 and c = 3";
  } else if (suite == "size-product") {
    const elem p = va.p ? va.p : 31;
    const std::uint64_t trials = va.trials ? va.trials : 100;
    params["p"] = p;
    params["trials"] = trials;
    const FieldPtr field = build_field(p);
    {
      std::vector<FpSubset> singles(3, FpSubset::singleton(field, 1));
      acc.take(verify_gmr(singles));
      acc.take(verify_gmr({FpSubset::full(field), FpSubset::full(field)}));
    }
    for (std::uint64_t t = 0; t < trials; ++t) {
      Rng rng = seeded(t);
      std::vector<FpSubset> sets;
      for (int j = 0; j < 3; ++j) {
        FpSubset s(field);
        const std::uint64_t n = 1 + rng.below(8);
        for (std::uint64_t i = 0; i < n; ++i) s.add(static_cast<elem>(rng.below(p)));
        sets.push_back(std::move(s));
      }
      acc.take(verify_gmr(sets));
    }
  } else if (suite == "jacobi") {
    const elem pmax = va.pmax ? va.pmax : 10000;
    params["pmax"] = pmax;
    const std::vector<elem> ps = primes_one_mod_three(2, pmax);
    params["primes"] = ps.size();
    for (elem p : ps) {
      const FieldPtr field = build_field(p);
      CharTable chars(field);
      IdentityReport rep;
      rep.identity_id = "jacobi-and-psi-sums";
      rep.p = p;
      const EisensteinInt j11 = jacobi_sum(chars, 1, 1);
      rep.add("jacobi-chi-chi2", jacobi_sum(chars, 1, 2).str(), "-1",
              jacobi_sum(chars, 1, 2) == EisensteinInt::integer(-1));
      rep.add("jacobi-norm", std::to_string(j11.norm()), std::to_string(p),
              j11.norm() == (std::int64_t)p);
      rep.add("jacobi-conjugate-pair", jacobi_sum(chars, 2, 2).str(), j11.conj().str(),
              jacobi_sum(chars, 2, 2) == j11.conj());
      rep.add_eq("psi-sum", chars.psi_power_sum(1), 0);
      rep.add_eq("psi-square-sum", chars.psi_power_sum(2), 2 * ((std::int64_t)p - 1));
      acc.take(rep);
    }
  } else if (suite == "weil") {
    const std::uint64_t trials = va.trials ? va.trials : 1000;
    params["trials"] = trials;
    std::vector<elem> ps;
    if (va.p)
      ps = {va.p};
    else
      ps = {13, 31, 97, 199, 1009};
    ScanConfig cfg;
    cfg.task = "weil";
    cfg.trials = trials;
    cfg.seed = va.seed;
    ojson rows = ojson::array();
    for (elem p : ps) {
      cfg.pmin = cfg.pmax = p;
      const ScanResult res = run_scan(cfg);
      for (const auto& row : res.rows) {
        ojson rj;
        rj["p"] = row.p;
        rj["ok"] = row.ok;
        rj["detail"] = row.detail;
        rows.push_back(std::move(rj));
        ++acc.total;
        if (!row.ok) ++acc.failed;
      }
    }
    env["rows"] = std::move(rows);
  } else {
    fail(Errc::BadInput, "unknown verify suite '" + suite_in + "'");
  }

  env["params"] = std::move(params);
  ojson summary;
  summary["reports"] = acc.total;
  summary["failures"] = acc.failed;
  env["summary"] = std::move(summary);
  if (!acc.sample.is_null()) env["sample"] = std::move(acc.sample);
  if (acc.failed > 0) env["failing_reports"] = std::move(acc.failures);
  if (!note.empty()) env["note"] = note;
  ok = acc.failed == 0;
  env["ok"] = ok;
  return env;
}

// ---------------------------------------------------------------------------

std::string scan_csv(const ScanConfig& cfg, const ScanResult& res) {
  std::string out = "p,task,ok,witnesses,exhaustive,detail\r\n";
  for (const auto& row : res.rows) {
    out += std::to_string(row.p) + "," + csv_escape(cfg.task) + "," +
           (row.ok ? "true" : "false") + "," + std::to_string(row.witnesses) + "," +
           (row.exhaustive ? "true" : "false") + "," + csv_escape(row.detail) + "\r\n";
  }
  return out;
}

ojson scan_envelope(const ScanConfig& cfg, const ScanResult& res) {
  ojson env = envelope_head("scan");
  ojson params;
  params["task"] = cfg.task;
  params["pmin"] = cfg.pmin;
  params["pmax"] = cfg.pmax;
  params["max_part"] = cfg.max_part;
  params["trials"] = cfg.trials;
  params["seed"] = cfg.seed;
  env["params"] = std::move(params);
  ojson rows = ojson::array();
  for (const auto& row : res.rows) {
    ojson rj;
    rj["p"] = row.p;
    rj["ok"] = row.ok;
    rj["witnesses"] = row.witnesses;
    rj["exhaustive"] = row.exhaustive;
    rj["detail"] = row.detail;
    if (!row.records.empty()) {
      ojson recs = ojson::array();
      for (const auto& rec : row.records) recs.push_back(record_json(rec));
      rj["records"] = std::move(recs);
    }
    rows.push_back(std::move(rj));
  }
  env["rows"] = std::move(rows);
  env["row_count"] = res.rows.size();
  env["all_ok"] = res.all_ok;
  env["ok"] = res.all_ok;
  return env;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"exact cubic-residue decomposition toolkit over prime fields"};
  app.require_subcommand(1);
  // let --threads / --out appear after the subcommand too
  app.fallthrough();

  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--threads", threads, "worker threads (default: hardware, env FFCUBE_THREADS)")
      ->envname("FFCUBE_THREADS");
  std::string out_path;
  app.add_option("--out", out_path, "write the report to this file instead of stdout");

  // field
  auto* cmd_field = app.add_subcommand("field", "inspect F_p: generator, cube set, Jacobi sums");
  elem field_p = 0;
  cmd_field->add_option("--p", field_p, "prime modulus")->required();

  // search
  auto* cmd_search = app.add_subcommand("search", "exhaustive decomposition searches");
  cmd_search->require_subcommand(1);
  elem search_p = 0;
  int search_k = 2;
  int max_part = 2;
  std::uint64_t work_cap = SearchParams{}.work_cap;
  elem backtrack_max_p = SearchParams{}.backtrack_max_p;
  auto* sp_pair = cmd_search->add_subcommand("pair", "A + B = C_p with |B| = k");
  sp_pair->add_option("--p", search_p, "prime, p == 1 (mod 3)")->required();
  sp_pair->add_option("--k", search_k, "size of the small part (>= 2)")->check(CLI::Range(2, 12));
  sp_pair->add_option("--work-cap", work_cap, "abort if the work estimate exceeds this");
  auto* sp_self = cmd_search->add_subcommand("selfsum", "A + A = C_p");
  sp_self->add_option("--p", search_p, "prime, p == 1 (mod 3)")->required();
  sp_self->add_option("--max-p", backtrack_max_p, "largest p the backtracking search accepts");
  auto* sp_diff = cmd_search->add_subcommand("diffcover", "A - A = C_p u {0}");
  sp_diff->add_option("--p", search_p, "prime, p == 1 (mod 3)")->required();
  sp_diff->add_option("--max-p", backtrack_max_p, "largest p the backtracking search accepts");
  auto* sp_triple = cmd_search->add_subcommand("triple", "A + B + C = C_p");
  sp_triple->add_option("--p", search_p, "prime, p == 1 (mod 3)")->required();
  sp_triple->add_option("--max-part", max_part, "size cap for the two enumerated parts")
      ->check(CLI::Range(2, 6));
  sp_triple->add_option("--work-cap", work_cap, "abort if the work estimate exceeds this");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "identity and bound certification suites");
  std::string suite;
  VerifyArgs va;
  cmd_verify->add_option("--suite", suite,
                         "correlation-moment | inner-product | h-expansion | cover-mask | "
                         "fourth-correlation | moments | norm-histogram | size-product | "
                         "jacobi | weil (plus aliases)")
      ->required();
  cmd_verify->add_option("--p", va.p, "prime to test at");
  cmd_verify->add_option("--pmax", va.pmax, "sweep primes == 1 (mod 3) up to here");
  cmd_verify->add_option("--k", va.k, "order parameter where the suite takes one");
  cmd_verify->add_option("--trials", va.trials, "seeded random trials");
  cmd_verify->add_option("--seed", va.seed, "base seed");

  // scan
  auto* cmd_scan = app.add_subcommand("scan", "run a task over every prime == 1 (mod 3) in range");
  ScanConfig cfg;
  std::string format = "json";
  cmd_scan->add_option("--task", cfg.task, "pair2|pair3|selfsum|diffcover|triple|identities|weil")
      ->required();
  cmd_scan->add_option("--pmin", cfg.pmin, "range start")->required();
  cmd_scan->add_option("--pmax", cfg.pmax, "range end (inclusive)")->required();
  cmd_scan->add_option("--max-part", cfg.max_part, "triple: size cap for enumerated parts");
  cmd_scan->add_option("--trials", cfg.trials, "identities/weil: trials per prime");
  cmd_scan->add_option("--seed", cfg.seed, "base seed");
  cmd_scan->add_option("--format", format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // bounds
  auto* cmd_bounds = app.add_subcommand("bounds", "re-check every bound in a saved report");
  std::string in_path;
  cmd_bounds->add_option("--in", in_path, "saved JSON report")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Timer timer;
  bool ok = true;
  ojson env;

  if (*cmd_field) {
    const FieldPtr field = build_field(field_p);
    if (!field->one_mod_three())
      std::cerr << "note: p != 1 (mod 3); every nonzero element of F_" << field_p
                << " is a cube\n";
    env = envelope_head("field");
    env["params"] = ojson{{"p", field_p}};
    env["field"] = field_info_json(field);
    env["ok"] = true;
  } else if (*cmd_search) {
    SearchParams sp;
    sp.work_cap = work_cap;
    sp.backtrack_max_p = backtrack_max_p;
    sp.threads = threads;
    const FieldPtr field = build_field(search_p);
    if (*sp_pair) {
      env = search_envelope("search-pair", field, search_pair(field, search_k, sp),
                            ojson{{"p", search_p}, {"k", search_k}}, ok);
    } else if (*sp_self) {
      env = search_envelope("search-selfsum", field, search_self_sum(field, sp),
                            ojson{{"p", search_p}}, ok);
    } else if (*sp_diff) {
      env = search_envelope("search-diffcover", field, search_diff_cover(field, sp),
                            ojson{{"p", search_p}}, ok);
    } else {
      env = search_envelope("search-triple", field, search_triple(field, max_part, sp),
                            ojson{{"p", search_p}, {"max_part", max_part}}, ok);
    }
    env["ok"] = ok;
  } else if (*cmd_verify) {
    env = run_verify(suite, va, ok);
  } else if (*cmd_scan) {
    cfg.threads = threads;
    const ScanResult res = run_scan(cfg);
    ok = res.all_ok;
    if (format == "csv") {
      emit_output(scan_csv(cfg, res), out_path);
      return ok ? 0 : 1;
    }
    env = scan_envelope(cfg, res);
  } else if (*cmd_bounds) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) fail(Errc::BadInput, "cannot open " + in_path);
    ojson saved;
    try {
      in >> saved;
    } catch (const ojson::exception& e) {
      fail(Errc::BadInput, std::string("not valid JSON: ") + e.what());
    }
    const std::vector<DecompositionRecord> recs = parse_records(saved);
    env = envelope_head("bounds-replay");
    env["params"] = ojson{{"in", in_path}};
    ojson out_recs = ojson::array();
    for (const auto& rec : recs) {
      const bool valid = validate_record(rec);
      const BoundReport br = check_bounds(rec);
      ojson rj;
      rj["p"] = rec.p;
      rj["kind"] = decomp_kind_name(rec.kind);
      ojson parts = ojson::array();
      for (const auto& part : rec.parts) parts.push_back(part.elements());
      rj["parts"] = std::move(parts);
      rj["revalidated"] = valid;
      rj["bounds"] = bound_report_json(br)["checks"];
      rj["all_hold"] = br.all_hold;
      if (!valid || !br.all_hold) ok = false;
      out_recs.push_back(std::move(rj));
    }
    env["records"] = std::move(out_recs);
    env["record_count"] = recs.size();
    env["ok"] = ok;
  }

  env["wall_ms"] = timer.ms();
  emit_output(render_json(env), out_path);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << " [" << errc_name(e.code()) << "]\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
