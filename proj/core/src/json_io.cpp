#include "igusa/json_io.hpp"

#include <json.hpp>

namespace igusa {

namespace {

using njson = nlohmann::ordered_json;

mpq_class parse_rational(const std::string& s) {
  mpq_class v;
  if (s.empty() || v.set_str(s, 10) != 0)
    throw Error("malformed rational string: \"" + s + "\"");
  v.canonicalize();
  return v;
}

njson cs_to_jsonv(const CycloScalar& c) {
  if (c.m == 1) return njson(c.coords.at(0).get_str());
  njson coords = njson::array();
  for (const mpq_class& q : c.coords) coords.push_back(q.get_str());
  njson out;
  out["m"] = c.m;
  out["coords"] = coords;
  return out;
}

CycloScalar cs_from_jsonv(const njson& j) {
  if (j.is_string()) return cs_rational(parse_rational(j.get<std::string>()));
  CycloScalar out;
  out.m = j.at("m").get<long>();
  for (const njson& s : j.at("coords"))
    out.coords.push_back(parse_rational(s.get<std::string>()));
  if (static_cast<long>(out.coords.size()) != totient(out.m))
    throw Error("cyclotomic coordinate count does not match the order");
  return out;
}

njson padic_to_jsonv(const PadicScalar& x) {
  njson out;
  out["p"] = x.p;
  out["coeffs"] = x.coeffs;
  out["exact"] = x.exact;
  return out;
}

PadicScalar padic_from_jsonv(const njson& j, long p_hint) {
  if (j.is_number_integer()) {
    if (p_hint < 2)
      throw Error("a bare integer scalar needs a base prime from context");
    return padic_int(p_hint, j.get<long>());
  }
  long p = j.at("p").get<long>();
  std::vector<int> coeffs = j.at("coeffs").get<std::vector<int>>();
  bool exact = j.value("exact", true);
  return exact ? padic_exact(p, std::move(coeffs))
               : padic_truncated(p, std::move(coeffs));
}

}  // namespace

std::string padic_to_json(const PadicScalar& x) {
  return padic_to_jsonv(x).dump();
}

PadicScalar padic_from_json(const std::string& text, long p_hint) {
  try {
    return padic_from_jsonv(njson::parse(text), p_hint);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("malformed scalar JSON: ") + ex.what());
  }
}

std::string trunc_poly_to_json(const TruncPoly& a) {
  njson out;
  out["arity"] = a.arity;
  out["p"] = a.p;
  njson terms = njson::array();
  for (const auto& [e, c] : a.terms) {
    njson t;
    t["exps"] = e;
    t["coeff"] = padic_to_jsonv(c);
    terms.push_back(t);
  }
  out["terms"] = terms;
  return out.dump();
}

TruncPoly trunc_poly_from_json(const std::string& text) {
  try {
    njson j = njson::parse(text);
    long p = j.at("p").get<long>();
    int arity = j.at("arity").get<int>();
    TruncPoly out = tp_zero(arity, p);
    for (const njson& t : j.at("terms")) {
      std::vector<int> exps = t.at("exps").get<std::vector<int>>();
      tp_add_term(out, exps, padic_from_jsonv(t.at("coeff"), p));
    }
    return out;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("malformed polynomial JSON: ") + ex.what());
  }
}

std::string zeta_rat_to_json(const ZetaRat& x) {
  njson out;
  out["q"] = x.q;
  njson num = njson::array();
  for (const auto& [t, c] : x.num) {
    njson e;
    e["t"] = t;
    e["c"] = cs_to_jsonv(c);
    num.push_back(e);
  }
  out["num"] = num;
  njson den = njson::array();
  for (const auto& [a, b] : x.den) {
    njson e;
    e["a"] = a;
    e["b"] = b;
    den.push_back(e);
  }
  out["den"] = den;
  out["zeta_order"] = x.zeta_order;
  return out.dump();
}

std::string cyclo_to_json(const CycloScalar& c) { return cs_to_jsonv(c).dump(); }

CycloScalar cyclo_from_json(const std::string& text) {
  try {
    return cs_from_jsonv(njson::parse(text));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("malformed coefficient JSON: ") + ex.what());
  }
}

ZetaRat zeta_rat_from_json(const std::string& text) {
  try {
    njson j = njson::parse(text);
    ZetaRat out;
    out.q = j.at("q").get<long>();
    out.zeta_order = j.at("zeta_order").get<long>();
    for (const njson& e : j.at("num"))
      out.num[e.at("t").get<long>()] = cs_from_jsonv(e.at("c"));
    for (const njson& e : j.at("den"))
      out.den.insert({e.at("a").get<long>(), e.at("b").get<long>()});
    return out;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("malformed rational-function JSON: ") + ex.what());
  }
}

}  // namespace igusa
