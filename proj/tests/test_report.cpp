#include <doctest.h>

#include <string>
#include <vector>

#include "ffcube/error.hpp"
#include "ffcube/field.hpp"
#include "ffcube/report.hpp"
#include "ffcube/search.hpp"
#include "ffcube/verify.hpp"

using namespace ffcube;

namespace {

template <typename Fn>
Errc thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

}  // namespace

TEST_CASE("kind names round-trip") {
  for (DecompKind k : {DecompKind::Pair, DecompKind::SelfSum, DecompKind::DiffCover,
                       DecompKind::Triple})
    CHECK(decomp_kind_from_name(decomp_kind_name(k)) == k);
  CHECK(thrown_code([] { decomp_kind_from_name("nonsense"); }) == Errc::BadInput);
}

TEST_CASE("field info json") {
  const auto j = field_info_json(build_field(13));
  CHECK(j["p"] == 13);
  CHECK(j["generator"] == 2);
  CHECK(j["one_mod_three"] == true);
  CHECK(j["cube_count"] == 4);
  CHECK(j["cubes"] == ojson::array({1, 5, 8, 12}));
  CHECK(j["jacobi_chi_chi"] == "-4-3w");
  CHECK(j["jacobi_chi_chi2"] == "-1");
  CHECK(j["jacobi_chi2_chi2"] == "-1+3w");
  // repeated rendering is byte-identical
  CHECK(render_json(j) == render_json(field_info_json(build_field(13))));

  const auto j5 = field_info_json(build_field(5));
  CHECK(j5["one_mod_three"] == false);
  CHECK(j5.count("jacobi_chi_chi") == 0);
  CHECK(j5.count("note") == 1);
}

TEST_CASE("record json carries parts, flags and bound rows") {
  const auto field = build_field(13);
  const auto out = search_pair(field, 2);
  REQUIRE(out.records.size() == 1);
  const auto j = record_json(out.records[0]);
  CHECK(j["p"] == 13);
  CHECK(j["kind"] == "pair");
  CHECK(j["parts"] == ojson::array({ojson::array({1, 5}), ojson::array({0, 7})}));
  CHECK(j["exhaustive"] == true);
  CHECK(j["k"] == 2);
  CHECK(j["bounds"].size() == 11);
  CHECK(j["normalization"].is_string());
}

TEST_CASE("records round-trip through parse_records") {
  const auto field = build_field(13);
  const auto out = search_pair(field, 2);
  ojson env;
  env["records"] = ojson::array();
  for (const auto& r : out.records) env["records"].push_back(record_json(r));

  const auto back = parse_records(env);
  REQUIRE(back.size() == out.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].p == out.records[i].p);
    CHECK(back[i].kind == out.records[i].kind);
    REQUIRE(back[i].parts.size() == out.records[i].parts.size());
    for (std::size_t q = 0; q < back[i].parts.size(); ++q)
      CHECK(back[i].parts[q].elements() == out.records[i].parts[q].elements());
    CHECK(validate_record(back[i]));
  }
}

TEST_CASE("parse_records rejects malformed input") {
  auto wrap = [](ojson record) {
    ojson env;
    env["records"] = ojson::array({std::move(record)});
    return env;
  };
  // element out of range
  ojson bad1 = wrap({{"p", 13},
                     {"kind", "pair"},
                     {"parts", ojson::array({ojson::array({1, 99}), ojson::array({0, 7})})}});
  CHECK(thrown_code([&] { parse_records(bad1); }) == Errc::BadInput);
  // unknown kind
  ojson bad2 =
      wrap({{"p", 13}, {"kind", "what"}, {"parts", ojson::array({ojson::array({1, 5})})}});
  CHECK(thrown_code([&] { parse_records(bad2); }) == Errc::BadInput);
  // not even the right shape
  CHECK(thrown_code([&] { parse_records(wrap(ojson::parse("{\"p\": []}"))); }) ==
        Errc::BadInput);
  CHECK(thrown_code([&] { parse_records(ojson::parse("[1, 2]")); }) == Errc::BadInput);
  // composite p surfaces the field construction error
  ojson bad3 = wrap({{"p", 12},
                     {"kind", "pair"},
                     {"parts", ojson::array({ojson::array({1, 5}), ojson::array({0, 7})})}});
  CHECK(thrown_code([&] { parse_records(bad3); }) == Errc::NotPrime);
}

TEST_CASE("identity report json shape") {
  const CharTable chars(build_field(13));
  const auto rep = verify_h_expansion(chars, 7);
  const auto j = identity_report_json(rep);
  CHECK(j["identity"] == "h-expansion");
  CHECK(j["p"] == 13);
  CHECK(j["exact"] == true);
  REQUIRE(j["lines"].is_array());
  for (const auto& l : j["lines"]) {
    CHECK(l.count("check") == 1);
    CHECK(l.count("lhs") == 1);
    CHECK(l.count("rhs") == 1);
    CHECK(l.count("pass") == 1);
  }
}

TEST_CASE("envelope head pins version, tool and chi convention") {
  const auto env = envelope_head("search-pair");
  CHECK(env["version"] == kArtifactVersion);
  CHECK(env["tool"] == "ffcube");
  CHECK(env["task"] == "search-pair");
  CHECK(env["chi_convention"] == kChiConvention);
  // ordered serialization: the head keys come out in insertion order
  const std::string s = render_json(env);
  CHECK(s.find("\"version\"") < s.find("\"tool\""));
  CHECK(s.find("\"tool\"") < s.find("\"chi_convention\""));
  CHECK(s.back() == '\n');
}

TEST_CASE("csv escaping") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("") == "");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
  CHECK(csv_escape("{1,5}+{0,7}") == "\"{1,5}+{0,7}\"");
}
