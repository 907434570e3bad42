#ifndef CTIDENT_JSON_IO_HPP
#define CTIDENT_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include <ctident/identities.hpp>
#include <ctident/verify.hpp>

namespace ctident {

using Json = nlohmann::ordered_json;

/// Flat parameter record, e.g. {"family":"morris","n":2,"a":1,"b":1,"k":1}.
/// This is the CLI's input contract and the form embedded in reports.
/// With suppress_a set, the free parameter is omitted (replay reports).
inline Json instance_to_json(const IdentityInstance& inst, bool suppress_a = false) {
  Json j;
  j["family"] = family_name(inst.family());
  switch (inst.family()) {
    case Family::dyson: {
      const DysonParams& p = inst.dyson();
      if (suppress_a) {
        Json rest = Json::array();
        for (std::size_t i = 1; i < p.a.size(); ++i) rest.push_back(p.a[i]);
        j["a_rest"] = rest;
      } else {
        j["a"] = p.a;
      }
      break;
    }
    case Family::morris: {
      const MorrisParams& p = inst.morris();
      j["n"] = p.n;
      if (!suppress_a) j["a"] = p.a;
      j["b"] = p.b;
      j["k"] = p.k;
      break;
    }
    case Family::aomoto: {
      const AomotoParams& p = inst.aomoto();
      j["n"] = p.n;
      j["m"] = p.m;
      if (!suppress_a) j["a"] = p.a;
      j["b"] = p.b;
      j["k"] = p.k;
      break;
    }
    case Family::forrester: {
      const ForresterParams& p = inst.forrester();
      j["n0"] = p.n0;
      j["n1"] = p.n1;
      if (!suppress_a) j["a"] = p.a;
      j["b"] = p.b;
      j["k"] = p.k;
      break;
    }
  }
  return j;
}

inline IdentityInstance instance_from_json(const Json& j) {
  const std::string fam = j.at("family").get<std::string>();
  if (fam == "dyson") {
    DysonParams p;
    p.a = j.at("a").get<std::vector<long>>();
    return IdentityInstance{std::move(p)};
  }
  if (fam == "morris") {
    MorrisParams p;
    p.n = j.at("n").get<int>();
    p.a = j.value("a", 0L);
    p.b = j.at("b").get<long>();
    p.k = j.at("k").get<long>();
    return IdentityInstance{p};
  }
  if (fam == "aomoto") {
    AomotoParams p;
    p.n = j.at("n").get<int>();
    p.m = j.at("m").get<int>();
    p.a = j.value("a", 0L);
    p.b = j.at("b").get<long>();
    p.k = j.at("k").get<long>();
    return IdentityInstance{p};
  }
  if (fam == "forrester") {
    ForresterParams p;
    p.n0 = j.at("n0").get<int>();
    p.n1 = j.at("n1").get<int>();
    p.a = j.value("a", 0L);
    p.b = j.at("b").get<long>();
    p.k = j.at("k").get<long>();
    return IdentityInstance{p};
  }
  throw usage_error("instance_from_json: unknown family '" + fam + "'");
}

/// Stable field order; timing lives outside the payload.
inline Json report_to_json(const VerificationReport& rep) {
  Json j;
  j["instance"] = instance_to_json(rep.instance, rep.a_is_free);
  j["method"] = rep.method;
  Json checks = Json::array();
  for (const CheckResult& c : rep.checks) {
    Json jc;
    jc["name"] = c.name;
    jc["expected"] = c.expected;
    jc["actual"] = c.actual;
    jc["pass"] = c.pass;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  j["overall"] = rep.overall() ? "pass" : "fail";
  return j;
}

}  // namespace ctident

#endif  // CTIDENT_JSON_IO_HPP
