#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ffcube/bounds.hpp"
#include "ffcube/search.hpp"
#include "ffcube/verify.hpp"

namespace ffcube {

// Insertion-ordered JSON keeps envelope serialization deterministic:
// identical command + seed means byte-identical output except wall_ms.
using ojson = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr const char* kChiConvention =
    "chi(g^k) = w^(k mod 3), g = least primitive root, w = exp(2*pi*i/3)";

// Envelope skeleton: version, tool, chi_convention, task. The caller adds
// params/records/reports and finally wall_ms (kept last).
ojson envelope_head(const std::string& task);

// p, generator, cube count, the cube set itself when it has at most 64
// elements, and the Jacobi sums when p == 1 (mod 3).
ojson field_info_json(const FieldPtr& field);

ojson bound_check_json(const BoundCheck& c);
ojson bound_report_json(const BoundReport& rep);
// record with parts as element arrays plus its bound evaluation
ojson record_json(const DecompositionRecord& rec);
ojson identity_report_json(const IdentityReport& rep);

std::string render_json(const ojson& doc);  // 2-space indent, trailing newline

// Rebuilds search records from an envelope's "records" array (the replay
// path of the bounds command). Throws BadInput on malformed input.
std::vector<DecompositionRecord> parse_records(const ojson& envelope);

DecompKind decomp_kind_from_name(const std::string& name);

// RFC-4180 quoting; always safe to embed.
std::string csv_escape(const std::string& cell);

}  // namespace ffcube
