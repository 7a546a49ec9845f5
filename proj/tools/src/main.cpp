// Command-line front end: compute hybrid and two-variable zeta values,
// inspect Newton cone data, run the residue-ring oracle, and verify closed
// forms against it. JSON output is a single deterministic document; text
// output pretty-prints rational functions.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "igusa/json_io.hpp"
#include "igusa/newton.hpp"
#include "igusa/oracle.hpp"
#include "igusa/spf.hpp"
#include "igusa/zeta.hpp"

namespace {

using njson = nlohmann::ordered_json;
using namespace igusa;

MultChar parse_char_spec(long p, const std::string& spec) {
  auto pos = spec.find(':');
  if (pos == std::string::npos)
    throw InvalidParams("character must be given as m:e");
  long m = 0, e = 0;
  try {
    m = std::stol(spec.substr(0, pos));
    e = std::stol(spec.substr(pos + 1));
  } catch (const std::exception&) {
    throw InvalidParams("character must be given as m:e with integer parts");
  }
  return make_character(p, m, e);
}

std::string cache_path() {
  const char* env = std::getenv("ZETA_CACHE");
  return env ? std::string(env) : std::string("./zeta-cache.ndjson");
}

njson rat_json(const ZetaRat& z) { return njson::parse(zeta_rat_to_json(z)); }

njson poles_json(const ZetaRat& z) {
  njson out = njson::array();
  for (const PoleDescriptor& d : poles_of(z)) {
    njson e;
    e["real_part"] = d.real_part.get_str();
    e["period"] = d.period;
    out.push_back(e);
  }
  return out;
}

void emit(bool json_mode, const njson& doc, const std::string& text_body) {
  if (json_mode)
    std::cout << doc.dump() << "\n";
  else
    std::cout << text_body << "\n";
}

njson base_doc(const std::string& command) {
  njson doc;
  doc["schema_version"] = 1;
  doc["command"] = command;
  return doc;
}

struct HybridArgs {
  long p = 0, k = 0, r = 0, l = 0;
  std::string sigma = "1";
  std::string chr = "1:0";
  std::string out = "json";
  bool breakdown = false;
};

void add_hybrid_params(CLI::App* cmd, HybridArgs& a) {
  cmd->add_option("--p", a.p, "base prime q = p")->required();
  cmd->add_option("--k", a.k, "exponent k")->required();
  cmd->add_option("--r", a.r, "exponent r")->required();
  cmd->add_option("--l", a.l, "exponent l")->required();
  cmd->add_option("--sigma", a.sigma, "unit scalar sigma as JSON (default 1)");
}

int run_hybrid(const HybridArgs& a) {
  PadicScalar sigma = padic_from_json(a.sigma, a.p);
  HybridParams params = make_hybrid_params(a.p, a.k, a.r, a.l, sigma);
  MultChar chi = parse_char_spec(a.p, a.chr);
  HybridBreakdown b = zeta_hybrid(params, chi);

  njson doc = base_doc("hybrid");
  njson in;
  in["p"] = a.p;
  in["k"] = a.k;
  in["r"] = a.r;
  in["l"] = a.l;
  in["sigma"] = njson::parse(padic_to_json(sigma));
  in["char"] = a.chr;
  doc["inputs"] = in;
  doc["case"] =
      b.case_tag == HybridCase::degenerate ? "degenerate" : "generic";
  doc["result"] = rat_json(b.total);
  doc["poles"] = poles_json(b.total);
  if (a.breakdown) {
    njson bd;
    for (const auto& [key, v] : b.per_region) bd[key] = rat_json(v);
    doc["breakdown"] = bd;
  }
  emit(a.out == "json", doc, rf_to_string(b.total));
  return 0;
}

int run_twovar(const std::string& poly, const std::string& chr,
               const std::string& out) {
  TruncPoly g = trunc_poly_from_json(poly);
  MultChar chi = parse_char_spec(g.p, chr);
  ZetaRat z = zeta_form12(g, chi);

  njson doc = base_doc("twovar");
  njson in;
  in["poly"] = njson::parse(trunc_poly_to_json(g));
  in["char"] = chr;
  doc["inputs"] = in;
  doc["result"] = rat_json(z);
  doc["poles"] = poles_json(z);
  emit(out == "json", doc, rf_to_string(z));
  return 0;
}

int run_newton(long i0, long j0, long check_b, const std::string& out) {
  NewtonData nd = newton_faces(i0, j0);

  njson doc = base_doc("newton");
  njson in;
  in["i0"] = i0;
  in["j0"] = j0;
  doc["inputs"] = in;
  njson faces = njson::array();
  for (const FaceInfo& f : nd.faces) {
    njson e;
    e["index"] = f.index;
    e["face"] = f.face;
    e["cone"] = f.cone;
    faces.push_back(e);
  }
  doc["faces"] = faces;
  njson res;
  res["n_m"] = nd.n_m;
  res["w_m"] = nd.w_m;
  res["n_prime_m"] = nd.n_prime_m;
  res["w_prime_m"] = nd.w_prime_m;
  doc["residues"] = res;

  bool ok = true;
  if (check_b > 0) {
    PartitionReport rep = partition_check(nd, check_b);
    njson chk;
    chk["B"] = rep.B;
    chk["ok"] = rep.ok;
    chk["violations"] = static_cast<long>(rep.violations.size());
    doc["partition_check"] = chk;
    ok = rep.ok;
  }

  std::ostringstream text;
  for (const FaceInfo& f : nd.faces)
    text << "gamma_" << f.index << ": " << f.face << "  cone " << f.cone
         << "\n";
  if (check_b > 0)
    text << "partition check up to B=" << check_b << ": "
         << (ok ? "ok" : "violated") << "\n";
  std::string body = text.str();
  if (!body.empty()) body.pop_back();
  emit(out == "json", doc, body);
  return ok ? 0 : 3;
}

int run_oracle_count(const std::string& poly, long levels,
                     unsigned long budget, const std::string& out) {
  TruncPoly f = trunc_poly_from_json(poly);
  CountCache cache(cache_path());

  njson doc = base_doc("oracle-count");
  njson in;
  in["poly"] = njson::parse(trunc_poly_to_json(f));
  in["levels"] = levels;
  doc["inputs"] = in;
  njson counts = njson::array();
  std::ostringstream text;
  for (long i = 0; i <= levels; ++i) {
    mpz_class n = count_solutions(f, i, budget, &cache);
    njson e;
    e["i"] = i;
    e["N"] = n.get_str();
    counts.push_back(e);
    text << "N_" << i << " = " << n.get_str() << "\n";
  }
  doc["counts"] = counts;
  std::string body = text.str();
  if (!body.empty()) body.pop_back();
  emit(out == "json", doc, body);
  return 0;
}

int run_oracle_series(const std::string& poly, long order,
                      const std::string& chr, unsigned long budget,
                      const std::string& out) {
  TruncPoly f = trunc_poly_from_json(poly);
  MultChar chi = parse_char_spec(f.p, chr);
  std::vector<CycloScalar> coeffs = zeta_series_oracle(f, chi, order, budget);

  njson doc = base_doc("oracle-series");
  njson in;
  in["poly"] = njson::parse(trunc_poly_to_json(f));
  in["order"] = order;
  in["char"] = chr;
  doc["inputs"] = in;
  njson series = njson::array();
  std::ostringstream text;
  for (long t = 0; t < static_cast<long>(coeffs.size()); ++t) {
    series.push_back(njson::parse(cyclo_to_json(coeffs[t])));
    text << "T^" << t << ": " << cs_to_string(coeffs[t]) << "\n";
  }
  doc["series"] = series;
  std::string body = text.str();
  if (!body.empty()) body.pop_back();
  emit(out == "json", doc, body);
  return 0;
}

int run_verify_hybrid(const HybridArgs& a, long order, unsigned long budget) {
  PadicScalar sigma = padic_from_json(a.sigma, a.p);
  HybridParams params = make_hybrid_params(a.p, a.k, a.r, a.l, sigma);
  MultChar chi = parse_char_spec(a.p, a.chr);
  HybridBreakdown b = zeta_hybrid(params, chi);
  std::vector<CycloScalar> closed = rf_series(b.total, order);
  std::vector<CycloScalar> oracle =
      zeta_series_oracle(build_hybrid(params), chi, order, budget);

  njson doc = base_doc("verify-hybrid");
  njson in;
  in["p"] = a.p;
  in["k"] = a.k;
  in["r"] = a.r;
  in["l"] = a.l;
  in["sigma"] = njson::parse(padic_to_json(sigma));
  in["char"] = a.chr;
  in["order"] = order;
  doc["inputs"] = in;
  doc["result"] = rat_json(b.total);

  long matched = 0;
  njson diffs = njson::array();
  for (long t = 0; t < order; ++t) {
    if (cs_eq(closed[t], oracle[t])) {
      ++matched;
      continue;
    }
    njson d;
    d["t"] = t;
    d["closed"] = njson::parse(cyclo_to_json(closed[t]));
    d["oracle"] = njson::parse(cyclo_to_json(oracle[t]));
    diffs.push_back(d);
  }
  doc["order"] = order;
  doc["matched"] = matched;
  doc["diffs"] = diffs;

  std::ostringstream text;
  text << matched << "/" << order << " coefficients match";
  if (matched < order) {
    long t0 = diffs[0]["t"].get<long>();
    text << "; first mismatch at T^" << t0 << ": closed=" << cs_to_string(closed[t0])
         << ", oracle=" << cs_to_string(oracle[t0]);
  }
  emit(a.out == "json", doc, text.str());
  return matched == order ? 0 : 3;
}

int run_poles(const HybridArgs& a) {
  PadicScalar sigma = padic_from_json(a.sigma, a.p);
  HybridParams params = make_hybrid_params(a.p, a.k, a.r, a.l, sigma);
  std::set<PoleDescriptor> cand = candidate_poles(params);

  njson doc = base_doc("poles");
  njson in;
  in["p"] = a.p;
  in["k"] = a.k;
  in["r"] = a.r;
  in["l"] = a.l;
  doc["inputs"] = in;
  njson list = njson::array();
  std::ostringstream text;
  for (const PoleDescriptor& d : cand) {
    njson e;
    e["real_part"] = d.real_part.get_str();
    e["period"] = d.period;
    list.push_back(e);
    text << d.real_part.get_str() << " (period " << d.period << ")\n";
  }
  doc["candidates"] = list;
  std::string body = text.str();
  if (!body.empty()) body.pop_back();
  emit(a.out == "json", doc, body);
  return 0;
}

int run_spf_drive(const std::string& poly, const std::string& chr,
                  unsigned long budget, const std::string& out) {
  TruncPoly f = trunc_poly_from_json(poly);
  MultChar chi = parse_char_spec(f.p, chr);
  IntegralState st{f, domain_full(f.arity), 1, 0, chi};
  ZetaRat z = generic_drive(st, budget);

  njson doc = base_doc("spf-drive");
  njson in;
  in["poly"] = njson::parse(trunc_poly_to_json(f));
  in["char"] = chr;
  in["budget"] = budget;
  doc["inputs"] = in;
  doc["result"] = rat_json(z);
  doc["poles"] = poles_json(z);
  emit(out == "json", doc, rf_to_string(z));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Igusa-type local zeta functions over F_q((pi))"};
  app.require_subcommand(1);

  HybridArgs hy;
  CLI::App* hybrid = app.add_subcommand("hybrid", "closed-form hybrid zeta");
  add_hybrid_params(hybrid, hy);
  hybrid->add_option("--char", hy.chr, "multiplicative character m:e");
  hybrid->add_option("--out", hy.out, "output mode: json|text")
      ->check(CLI::IsMember({"json", "text"}));
  hybrid->add_flag("--breakdown", hy.breakdown, "include per-region values");

  std::string tv_poly, tv_chr = "1:0", tv_out = "json";
  CLI::App* twovar =
      app.add_subcommand("twovar", "two-variable binomial-tail form zeta");
  twovar->add_option("--poly", tv_poly, "polynomial JSON")->required();
  twovar->add_option("--char", tv_chr, "multiplicative character m:e");
  twovar->add_option("--out", tv_out, "output mode: json|text")
      ->check(CLI::IsMember({"json", "text"}));

  long nw_i0 = 0, nw_j0 = 0, nw_check = 0;
  std::string nw_out = "json";
  CLI::App* newton = app.add_subcommand("newton", "Newton face/cone table");
  newton->add_option("--i0", nw_i0, "leading u-exponent")->required();
  newton->add_option("--j0", nw_j0, "leading v-exponent")->required();
  newton->add_option("--check", nw_check, "verify the cone partition up to B");
  newton->add_option("--out", nw_out, "output mode: json|text")
      ->check(CLI::IsMember({"json", "text"}));

  CLI::App* oracle = app.add_subcommand("oracle", "residue-ring oracle");
  oracle->require_subcommand(1);
  std::string oc_poly, oc_out = "json";
  long oc_levels = 0;
  unsigned long oc_budget = kDefaultOracleBudget;
  CLI::App* ocount = oracle->add_subcommand("count", "solution counts N_i");
  ocount->add_option("--poly", oc_poly, "polynomial JSON")->required();
  ocount->add_option("--levels", oc_levels, "highest level i")->required();
  ocount->add_option("--budget", oc_budget, "node budget");
  ocount->add_option("--out", oc_out, "output mode: json|text")
      ->check(CLI::IsMember({"json", "text"}));

  std::string os_poly, os_chr = "1:0", os_out = "json";
  long os_order = 0;
  unsigned long os_budget = kDefaultOracleBudget;
  CLI::App* oseries = oracle->add_subcommand("series", "series coefficients");
  oseries->add_option("--poly", os_poly, "polynomial JSON")->required();
  oseries->add_option("--order", os_order, "number of coefficients")->required();
  oseries->add_option("--char", os_chr, "multiplicative character m:e");
  oseries->add_option("--budget", os_budget, "node budget");
  oseries->add_option("--out", os_out, "output mode: json|text")
      ->check(CLI::IsMember({"json", "text"}));

  CLI::App* verify = app.add_subcommand("verify", "closed form vs oracle");
  verify->require_subcommand(1);
  HybridArgs vh;
  long vh_order = 0;
  unsigned long vh_budget = kDefaultOracleBudget;
  CLI::App* vhybrid = verify->add_subcommand("hybrid", "verify hybrid zeta");
  add_hybrid_params(vhybrid, vh);
  vhybrid->add_option("--order", vh_order, "coefficients to compare")
      ->required();
  vhybrid->add_option("--char", vh.chr, "multiplicative character m:e");
  vhybrid->add_option("--budget", vh_budget, "node budget");
  vhybrid->add_option("--out", vh.out, "output mode: json|text")
      ->check(CLI::IsMember({"json", "text"}));

  HybridArgs pl;
  CLI::App* poles = app.add_subcommand("poles", "candidate pole families");
  add_hybrid_params(poles, pl);
  poles->add_option("--out", pl.out, "output mode: json|text")
      ->check(CLI::IsMember({"json", "text"}));

  std::string dr_poly, dr_chr = "1:0", dr_out = "json";
  unsigned long dr_budget = 1'000'000UL;
  CLI::App* drive =
      app.add_subcommand("spf-drive", "iterated stationary-phase fallback");
  drive->add_option("--poly", dr_poly, "polynomial JSON")->required();
  drive->add_option("--char", dr_chr, "multiplicative character m:e");
  drive->add_option("--budget", dr_budget, "state budget");
  drive->add_option("--out", dr_out, "output mode: json|text")
      ->check(CLI::IsMember({"json", "text"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (hybrid->parsed()) return run_hybrid(hy);
    if (twovar->parsed()) return run_twovar(tv_poly, tv_chr, tv_out);
    if (newton->parsed()) return run_newton(nw_i0, nw_j0, nw_check, nw_out);
    if (oracle->parsed()) {
      if (ocount->parsed())
        return run_oracle_count(oc_poly, oc_levels, oc_budget, oc_out);
      if (oseries->parsed())
        return run_oracle_series(os_poly, os_order, os_chr, os_budget, os_out);
    }
    if (verify->parsed() && vhybrid->parsed())
      return run_verify_hybrid(vh, vh_order, vh_budget);
    if (poles->parsed()) return run_poles(pl);
    if (drive->parsed()) return run_spf_drive(dr_poly, dr_chr, dr_budget, dr_out);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
