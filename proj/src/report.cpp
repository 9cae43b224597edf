#include "ffcube/report.hpp"

#include "ffcube/characters.hpp"

namespace ffcube {

ojson envelope_head(const std::string& task) {
  ojson env;
  env["version"] = kArtifactVersion;
  env["tool"] = "ffcube";
  env["chi_convention"] = kChiConvention;
  env["task"] = task;
  return env;
}

ojson field_info_json(const FieldPtr& field) {
  ojson j;
  j["p"] = field->p();
  j["generator"] = field->generator();
  j["one_mod_three"] = field->one_mod_three();
  j["cube_count"] = field->cube_elements().size();
  if (field->cube_elements().size() <= 64) j["cubes"] = field->cube_elements();
  if (field->one_mod_three()) {
    CharTable chars(field);
    j["jacobi_chi_chi"] = jacobi_sum(chars, 1, 1).str();
    j["jacobi_chi_chi2"] = jacobi_sum(chars, 1, 2).str();
    j["jacobi_chi2_chi2"] = jacobi_sum(chars, 2, 2).str();
  } else {
    j["note"] = "p != 1 (mod 3): cubing is a bijection, C_p is all of F_p minus 0";
  }
  return j;
}

ojson bound_check_json(const BoundCheck& c) {
  ojson j;
  j["id"] = c.id;
  j["applicable"] = c.applicable;
  j["holds"] = c.holds;
  if (c.applicable) {
    j["lhs"] = c.lhs;
    j["rel"] = c.rel;
    j["rhs"] = c.rhs;
    j["tight"] = c.tight;
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

ojson bound_report_json(const BoundReport& rep) {
  ojson j;
  j["p"] = rep.p;
  j["kind"] = decomp_kind_name(rep.kind);
  j["part_sizes"] = rep.part_sizes;
  j["all_hold"] = rep.all_hold;
  ojson checks = ojson::array();
  for (const auto& c : rep.checks) checks.push_back(bound_check_json(c));
  j["checks"] = std::move(checks);
  return j;
}

ojson record_json(const DecompositionRecord& rec) {
  ojson j;
  j["p"] = rec.p;
  j["kind"] = decomp_kind_name(rec.kind);
  ojson parts = ojson::array();
  for (const auto& part : rec.parts) parts.push_back(part.elements());
  j["parts"] = std::move(parts);
  j["exhaustive"] = rec.exhaustive;
  if (rec.k > 0) j["k"] = rec.k;
  j["normalization"] = rec.normalization;
  j["bounds"] = bound_report_json(check_bounds(rec))["checks"];
  return j;
}

ojson identity_report_json(const IdentityReport& rep) {
  ojson j;
  j["identity"] = rep.identity_id;
  j["p"] = rep.p;
  if (rep.k > 0) j["k"] = rep.k;
  if (rep.seed != 0) j["seed"] = rep.seed;
  j["exact"] = rep.exact_equal;
  ojson lines = ojson::array();
  for (const auto& l : rep.lines) {
    ojson lj;
    lj["check"] = l.name;
    lj["lhs"] = l.lhs;
    lj["rhs"] = l.rhs;
    lj["pass"] = l.pass;
    lines.push_back(std::move(lj));
  }
  j["lines"] = std::move(lines);
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

std::string render_json(const ojson& doc) { return doc.dump(2) + "\n"; }

DecompKind decomp_kind_from_name(const std::string& name) {
  if (name == "pair") return DecompKind::Pair;
  if (name == "self-sum") return DecompKind::SelfSum;
  if (name == "diff-cover") return DecompKind::DiffCover;
  if (name == "triple") return DecompKind::Triple;
  fail(Errc::BadInput, "unknown record kind '" + name + "'");
}

std::vector<DecompositionRecord> parse_records(const ojson& envelope) {
  std::vector<DecompositionRecord> out;
  if (!envelope.is_object() || !envelope.contains("records"))
    fail(Errc::BadInput, "envelope has no records array");
  const auto& arr = envelope.at("records");
  if (!arr.is_array()) fail(Errc::BadInput, "records is not an array");
  for (const auto& rj : arr) {
    try {
      DecompositionRecord rec;
      rec.p = rj.at("p").get<elem>();
      rec.kind = decomp_kind_from_name(rj.at("kind").get<std::string>());
      rec.exhaustive = rj.value("exhaustive", true);
      rec.k = rj.value("k", 0);
      rec.normalization = rj.value("normalization", "");
      const FieldPtr field = build_field(rec.p);
      for (const auto& pj : rj.at("parts")) {
        std::vector<elem> xs;
        for (const auto& x : pj) {
          const std::int64_t v = x.get<std::int64_t>();
          if (v < 0 || v >= (std::int64_t)rec.p)
            fail(Errc::BadInput, "part element out of range");
          xs.push_back(static_cast<elem>(v));
        }
        rec.parts.push_back(FpSubset::from_elements(field, xs));
      }
      out.push_back(std::move(rec));
    } catch (const ojson::exception& e) {
      fail(Errc::BadInput, std::string("malformed record: ") + e.what());
    }
  }
  return out;
}

std::string csv_escape(const std::string& cell) {
  bool needs = false;
  for (char ch : cell)
    if (ch == ',' || ch == '"' || ch == '\n' || ch == '\r') { needs = true; break; }
  if (!needs) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    out.push_back(ch);
    if (ch == '"') out.push_back('"');
  }
  out.push_back('"');
  return out;
}

}  // namespace ffcube
