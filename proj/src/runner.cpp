#include "zetaforms/runner.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "zetaforms/criterion.hpp"
#include "zetaforms/elimination.hpp"
#include "zetaforms/errors.hpp"
#include "zetaforms/hurwitz.hpp"
#include "zetaforms/search.hpp"

namespace zetaforms {

namespace {

void expect_keys(const Json& obj, std::initializer_list<const char*> allowed,
                 const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* key : allowed)
      if (it.key() == key) ok = true;
    if (!ok) throw ConfigError(std::string("unknown key \"") + it.key() + "\" in " + where);
  }
}

long get_long(const Json& j, const char* key, const char* where) {
  if (!j.at(key).is_number_integer())
    throw ConfigError(std::string(key) + " must be an integer in " + where);
  return j.at(key).get<long>();
}

std::string dstr(const Real& x) { return x.str(12); }

struct CheckList {
  Json items = Json::array();
  bool all_pass = true;
  void add(const std::string& name, bool pass, const std::string& witness) {
    Json it;
    it["name"] = name;
    it["pass"] = pass;
    it["witness"] = witness;
    items.push_back(std::move(it));
    all_pass = all_pass && pass;
  }
};

BigRational random_noninteger(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-2000, 2000);
  std::uniform_int_distribution<long> den(2, 64);
  while (true) {
    BigRational t = make_rational(num(rng), den(rng));
    if (t.get_den() != 1) return t;
  }
}

Json run_constants_impl(const RunConfig& cfg, CheckList& checks) {
  cfg.params.validate();
  CriterionReport rep =
      compute_constants(cfg.params.M, cfg.params.deltas, cfg.precision_bits);
  checks.add("C0 closed form vs variational form", true,
             "sqrt(4 zr F(r0)) agrees within tolerance");
  if (cfg.params.s && cfg.params.B) {
    checks.add("large-scale condition s >= 10(2r+1)MB^2 (informational)", true,
               cfg.params.satisfies_scale_condition() ? "holds"
                                                      : "does not hold at this scale");
  }
  Json res;
  res["varpi"] = dstr(rep.varpi);
  res["r0"] = dstr(rep.r0);
  res["C0"] = dstr(rep.C0);
  res["F_r0"] = dstr(rep.F_r0);
  res["c_max"] = dstr(rep.c_max);
  res["zeta_ratio"] = dstr(rep.zeta_ratio_v);
  res["r0_rational"] = rational_str(rep.r0_rational);
  return res;
}

Json run_verify_impl(const RunConfig& cfg, CheckList& checks) {
  ProofParameters p = cfg.params;
  p.validate();
  if (!p.s) throw ConfigError("verify requires params.s");
  if (!p.B) throw ConfigError("verify requires params.B");
  if (!cfg.verify_n) throw ConfigError("verify requires verify.n");
  const long n = *cfg.verify_n;
  const long s = *p.s;
  const long sJ = s / p.J;
  const long prec = cfg.precision_bits;
  const long wp = prec + 32;

  const bool phi_on = cfg.phi_checks.value_or(n > s * s);
  if (phi_on && n <= s * s)
    throw PreconditionError("prime-factor valuation checks require n > s^2");

  SieveSets sv = build_sieve_sets(*p.B, p.M, p.r);
  FactoredForm form = build_rational_function(n, p, sv);
  PartialFractionTable table = partial_fractions(form);
  LinearForm lf = linear_form_coeffs(table, form.thetas);

  std::mt19937_64 rng(0x7e5717ULL + static_cast<std::uint64_t>(n));

  {
    bool ok = true;
    std::string wit = "exact equality";
    for (int it = 0; it < 20 && ok; ++it) {
      BigRational t = random_noninteger(rng);
      if (table.reconstruct_at(t) != form.eval_exact(t)) {
        ok = false;
        wit = "mismatch at t = " + rational_str(t);
      }
    }
    checks.add("partial-fraction reconstruction at 20 random points", ok, wit);
  }
  {
    bool ok = true;
    std::string wit = "exact equality";
    const BigRational Mn(p.M * n);
    for (int it = 0; it < 20 && ok; ++it) {
      BigRational t = random_noninteger(rng);
      if (form.eval_exact(-t - Mn) != -form.eval_exact(t)) {
        ok = false;
        wit = "broken at t = " + rational_str(t);
      }
    }
    checks.add("reflection antisymmetry at 20 random points", ok, wit);
  }
  {
    bool ok = true;
    std::string wit = "all sampled terms vanish";
    std::vector<long> ms;
    if (form.rMn <= 16) {
      for (long m = 0; m < form.rMn; ++m) ms.push_back(m);
    } else {
      ms = {0, 1, form.rMn / 3, form.rMn / 2, form.rMn - 2, form.rMn - 1};
    }
    for (const BigRational& th : form.thetas) {
      for (long m : ms) {
        if (form.eval_exact(BigRational(m) + th) != 0) {
          ok = false;
          wit = "nonzero at m = " + std::to_string(m) + ", theta = " + rational_str(th);
        }
      }
    }
    checks.add("vanishing on the first rMn shifted integers", ok, wit);
  }
  {
    bool ok = table.residue_sum() == 0;
    checks.add("simple-pole residues sum to zero", ok, ok ? "exact" : "nonzero sum");
  }
  {
    bool ok = true;
    std::string wit = "exact zeros";
    for (long i = 2; i <= s; i += 2) {
      BigRational sum(0);
      for (long k = table.k_min; k <= table.k_max; ++k) sum += table.at(i, k);
      if (sum != 0) {
        ok = false;
        wit = "nonzero at i = " + std::to_string(i);
      }
    }
    checks.add("even-index column sums vanish", ok, wit);
  }

  const BigInt D = lcm_upto((p.M - 2 * p.deltas.front()) * n);
  std::vector<BigInt> Dpow(s + 1);
  Dpow[s] = 1;
  for (long i = s - 1; i >= 0; --i) Dpow[i] = Dpow[i + 1] * D;
  {
    bool ok = true;
    std::string wit = "denominators divide the lcm power";
    for (long k = table.k_min; k <= table.k_max && ok; ++k) {
      for (long i = 1; i <= s; ++i) {
        const BigRational& a = table.at(i, k);
        if (a == 0) continue;
        if (!mpz_divisible_p(Dpow[i].get_mpz_t(), a.get_den().get_mpz_t())) {
          ok = false;
          wit = "fails at (i,k) = (" + std::to_string(i) + "," + std::to_string(k) + ")";
          break;
        }
      }
    }
    checks.add("lcm-power integrality of all coefficients", ok, wit);
  }

  if (phi_on) {
    PrimePowerProduct phi = phi_product(n, p.M, p.deltas);
    const BigInt PhiPow = phi.pow(sJ).to_integer();
    {
      bool ok = true;
      std::string wit;
      long checked = 0;
      const long lo2 = p.M * n;
      for (long q : primes_upto((p.M - 2 * p.deltas.front()) * n)) {
        if (q * q <= lo2 || q <= s) continue;
        const long e = omega_at(n % q, q, p.M, p.deltas);
        const BigInt Q(q);
        for (long k = table.k_min; k <= table.k_max && ok; ++k) {
          for (long i = 1; i <= s; ++i) {
            const BigRational& a = table.at(i, k);
            if (a == 0) continue;
            long bound = -(s - i) + sJ * e;
            BigInt rem;
            long v = static_cast<long>(mpz_remove(rem.get_mpz_t(), a.get_num().get_mpz_t(),
                                                  Q.get_mpz_t()));
            v -= static_cast<long>(
                mpz_remove(rem.get_mpz_t(), a.get_den().get_mpz_t(), Q.get_mpz_t()));
            ++checked;
            if (v < bound) {
              ok = false;
              wit = "fails at p = " + std::to_string(q) + ", (i,k) = (" +
                    std::to_string(i) + "," + std::to_string(k) + ")";
              break;
            }
          }
        }
        if (!ok) break;
      }
      if (ok) wit = std::to_string(checked) + " valuations checked";
      checks.add("per-prime valuation lower bound", ok, wit);
    }
    {
      bool ok = true;
      std::string wit = "all integral";
      for (const auto& [i, rho] : lf.rho_odd) {
        BigRational x = rho * BigRational(Dpow[i]) / BigRational(PhiPow);
        if (x.get_den() != 1) {
          ok = false;
          wit = "fails at i = " + std::to_string(i);
        }
      }
      checks.add("weighted odd-column integrality", ok, wit);
    }
    {
      bool ok = true;
      std::string wit = "all integral";
      for (const auto& [th, rho0] : lf.rho0) {
        if (th == 1) continue;
        BigRational x = rho0 * BigRational(Dpow[0]) / BigRational(PhiPow);
        if (x.get_den() != 1) {
          ok = false;
          wit = "fails at theta = " + rational_str(th);
        }
      }
      checks.add("fractional-theta tail-sum integrality", ok, wit);
    }
    {
      BigInt prod = 1;
      for (long d : p.deltas) {
        long Mj = std::max(p.M - 2 * p.deltas.front(), p.M - d);
        BigInt t, tp;
        t = lcm_upto(Mj * n);
        mpz_pow_ui(tp.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(sJ));
        prod *= tp;
      }
      BigRational x = lf.rho0_at(BigRational(1)) * BigRational(prod) / BigRational(PhiPow);
      bool ok = x.get_den() == 1;
      checks.add("unit-theta tail-sum integrality", ok,
                 ok ? "integral" : "denominator survives");
    }
  }

  {
    bool ok = true;
    std::string wit;
    const Real tol = pow2(-(prec - 56), wp);
    double worst = -1e300;
    for (const BigRational& th : form.thetas) {
      Real S = evaluate_series(form, th, prec, &table);
      Real rhs = Real::of(lf.rho0_at(th), wp);
      for (const auto& [i, rho] : lf.rho_odd) {
        if (rho == 0) continue;
        rhs += Real::of(rho, wp) * hurwitz_zeta(i, th, wp);
      }
      Real resid = abs(S - rhs);
      Real scale = abs(S);
      if (scale < 1) scale = Real::of(1L, wp);
      if (!(resid <= tol * scale)) ok = false;
      Real rel = resid / scale;
      worst = std::max(worst, rel.is_zero() ? -9999.0 : double(rel.exponent2()));
    }
    std::ostringstream os;
    os << "worst relative residual ~ 2^" << (worst <= -9000 ? std::string("-inf")
                                                            : std::to_string((long)worst));
    wit = os.str();
    checks.add("series matches the Hurwitz linear form", ok, wit);
  }

  {
    auto I = default_eliminated(sv.psi, s);
    WeightVector wv = integer_weights(sv.psi, I);
    bool ok = wv.constraint_sum(0) == 0;
    for (long i : I) ok = ok && wv.constraint_sum(i) == 0;
    ok = ok && wv.constraint_sum(1) != 0;
    std::ostringstream os;
    os << "weights:";
    for (const auto& w : wv.weights) os << " " << w.get_str();
    checks.add("integer weight constraints", ok, os.str());

    EliminationWitness ew = assemble_elimination_sum(wv, p, sv, n, prec);
    const Real tol = pow2(-(prec - 56), wp);
    Real scale = abs(ew.weighted_sum);
    if (abs(ew.predicted) > scale) scale = abs(ew.predicted);
    if (scale < 1) scale = Real::of(1L, wp);
    bool rok = ew.residual <= tol * scale;
    std::ostringstream ros;
    ros << "residual ~ 2^"
        << (ew.residual.is_zero() ? std::string("-inf")
                                  : std::to_string(ew.residual.exponent2()));
    checks.add("eliminated weighted sum matches prediction", rok, ros.str());
  }

  Json res;
  res["n"] = n;
  res["phi_checks"] = phi_on;
  res["degree"] = form.degree;
  res["pole_window"] = Json::array({form.k_min, form.k_max});
  res["scale_condition_met"] = p.satisfies_scale_condition();
  return res;
}

Json run_search_impl(const RunConfig& cfg, CheckList& checks) {
  cfg.params.validate();
  SearchResult sr;
  if (cfg.M_min && cfg.M_max) {
    sr = scan_M(cfg.params.J, cfg.params.deltas, *cfg.M_min, *cfg.M_max,
                cfg.precision_bits);
  } else if (cfg.budget) {
    sr = local_search(cfg.params, *cfg.budget, cfg.precision_bits);
  } else {
    throw ConfigError("search requires either M_min/M_max or budget");
  }
  checks.add("every evaluated candidate admissible", true,
             std::to_string(sr.evaluations.size()) + " evaluations");
  Json res;
  res["best_M"] = sr.best_M;
  res["best_deltas"] = sr.best_deltas;
  res["best_C0"] = dstr(sr.best_C0);
  res["budget_used"] = sr.budget_used;
  res["notices"] = sr.notices;
  Json evals = Json::array();
  for (const auto& rec : sr.evaluations) {
    Json e;
    e["digest"] = rec.digest;
    e["M"] = rec.M;
    e["deltas"] = rec.deltas;
    e["varpi"] = dstr(rec.varpi);
    e["r0"] = dstr(rec.r0);
    e["C0"] = dstr(rec.C0);
    evals.push_back(std::move(e));
  }
  res["evaluations"] = evals;
  if (!cfg.csv_path.empty()) {
    Json tmp;
    tmp["results"] = res;
    std::ofstream out(cfg.csv_path);
    if (!out) throw ConfigError("cannot open csv path " + cfg.csv_path);
    out << search_csv(tmp);
  }
  return res;
}

Json run_report_impl(const RunConfig& cfg, CheckList& checks) {
  cfg.params.validate();
  CriterionReport rep =
      compute_constants(cfg.params.M, cfg.params.deltas, cfg.precision_bits);
  checks.add("C0 closed form vs variational form", true,
             "sqrt(4 zr F(r0)) agrees within tolerance");
  Json res;
  res["varpi"] = dstr(rep.varpi);
  res["r0"] = dstr(rep.r0);
  res["C0"] = dstr(rep.C0);
  res["bound_shape"] = "C0 * sqrt(s / log s)";
  if (cfg.report_s) {
    const long s = *cfg.report_s;
    if (s < 3) throw ConfigError("report.s must be at least 3");
    const long wp = cfg.precision_bits;
    Real sv = Real::of(s, wp);
    Real value = rep.C0 * sqrt(sv / log(sv));
    Json ill;
    ill["s"] = s;
    ill["value"] = dstr(value);
    ill["note"] =
        "illustration of the asymptotic constant only; not a proven count for this s";
    res["bound_illustration"] = ill;
  }
  return res;
}

}  // namespace

RunConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  expect_keys(j, {"schema", "command", "params", "precision_bits", "verify", "search",
                  "report", "output"},
              "config");
  RunConfig cfg;
  if (!j.contains("schema") || !j.at("schema").is_number_integer() ||
      j.at("schema").get<int>() != kSchemaVersion)
    throw ConfigError("config must carry \"schema\": 1");
  if (!j.contains("command") || !j.at("command").is_string())
    throw ConfigError("config must carry a \"command\" string");
  cfg.command = j.at("command").get<std::string>();
  if (cfg.command != "constants" && cfg.command != "verify" && cfg.command != "search" &&
      cfg.command != "report")
    throw ConfigError("command must be one of constants, verify, search, report");

  if (!j.contains("params") || !j.at("params").is_object())
    throw ConfigError("config must carry a \"params\" object");
  const Json& pj = j.at("params");
  expect_keys(pj, {"M", "J", "deltas", "r", "s", "B"}, "params");
  if (!pj.contains("M") || !pj.contains("J") || !pj.contains("deltas"))
    throw ConfigError("params must carry M, J and deltas");
  cfg.params.M = get_long(pj, "M", "params");
  cfg.params.J = get_long(pj, "J", "params");
  if (!pj.at("deltas").is_array()) throw ConfigError("deltas must be an array");
  cfg.params.deltas.clear();
  for (const auto& d : pj.at("deltas")) {
    if (!d.is_number_integer()) throw ConfigError("deltas entries must be integers");
    cfg.params.deltas.push_back(d.get<long>());
  }
  if (pj.contains("r")) {
    if (!pj.at("r").is_string())
      throw ConfigError("r must be an exact fraction string like \"3/2\"");
    cfg.params.r = parse_rational(pj.at("r").get<std::string>());
    if (cfg.params.r <= 0) throw ConfigError("r must be positive");
    cfg.r_set = true;
  }
  if (pj.contains("s")) cfg.params.s = get_long(pj, "s", "params");
  if (pj.contains("B")) cfg.params.B = get_long(pj, "B", "params");

  if (j.contains("precision_bits")) {
    cfg.precision_bits = get_long(j, "precision_bits", "config");
    if (cfg.precision_bits < 64) throw ConfigError("precision_bits must be at least 64");
  }

  if (j.contains("verify")) {
    const Json& vj = j.at("verify");
    expect_keys(vj, {"n", "phi_checks"}, "verify");
    if (vj.contains("n")) cfg.verify_n = get_long(vj, "n", "verify");
    if (vj.contains("phi_checks")) {
      if (!vj.at("phi_checks").is_boolean())
        throw ConfigError("phi_checks must be a boolean");
      cfg.phi_checks = vj.at("phi_checks").get<bool>();
    }
  }
  if (j.contains("search")) {
    const Json& sj = j.at("search");
    expect_keys(sj, {"M_min", "M_max", "budget", "csv"}, "search");
    if (sj.contains("M_min")) cfg.M_min = get_long(sj, "M_min", "search");
    if (sj.contains("M_max")) cfg.M_max = get_long(sj, "M_max", "search");
    if (sj.contains("budget")) cfg.budget = get_long(sj, "budget", "search");
    if (sj.contains("csv")) {
      if (!sj.at("csv").is_string()) throw ConfigError("csv must be a path string");
      cfg.csv_path = sj.at("csv").get<std::string>();
    }
  }
  if (j.contains("report")) {
    const Json& rj = j.at("report");
    expect_keys(rj, {"s"}, "report");
    if (rj.contains("s")) cfg.report_s = get_long(rj, "s", "report");
  }
  if (j.contains("output")) {
    if (!j.at("output").is_string()) throw ConfigError("output must be a path string");
    cfg.output_path = j.at("output").get<std::string>();
  }
  return cfg;
}

Json emit_config(const RunConfig& cfg) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = cfg.command;
  Json pj;
  pj["M"] = cfg.params.M;
  pj["J"] = cfg.params.J;
  pj["deltas"] = cfg.params.deltas;
  if (cfg.r_set) pj["r"] = rational_str(cfg.params.r);
  if (cfg.params.s) pj["s"] = *cfg.params.s;
  if (cfg.params.B) pj["B"] = *cfg.params.B;
  j["params"] = pj;
  j["precision_bits"] = cfg.precision_bits;
  if (cfg.verify_n || cfg.phi_checks) {
    Json vj;
    if (cfg.verify_n) vj["n"] = *cfg.verify_n;
    if (cfg.phi_checks) vj["phi_checks"] = *cfg.phi_checks;
    j["verify"] = vj;
  }
  if (cfg.M_min || cfg.M_max || cfg.budget || !cfg.csv_path.empty()) {
    Json sj;
    if (cfg.M_min) sj["M_min"] = *cfg.M_min;
    if (cfg.M_max) sj["M_max"] = *cfg.M_max;
    if (cfg.budget) sj["budget"] = *cfg.budget;
    if (!cfg.csv_path.empty()) sj["csv"] = cfg.csv_path;
    j["search"] = sj;
  }
  if (cfg.report_s) {
    Json rj;
    rj["s"] = *cfg.report_s;
    j["report"] = rj;
  }
  if (!cfg.output_path.empty()) j["output"] = cfg.output_path;
  return j;
}

RunOutcome run_command(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunOutcome out;
  Json rep;
  rep["schema"] = kSchemaVersion;
  rep["tool"] = kToolVersion;
  rep["command"] = cfg.command;
  rep["config"] = emit_config(cfg);
  CheckList checks;
  try {
    Json results;
    if (cfg.command == "constants")
      results = run_constants_impl(cfg, checks);
    else if (cfg.command == "verify")
      results = run_verify_impl(cfg, checks);
    else if (cfg.command == "search")
      results = run_search_impl(cfg, checks);
    else if (cfg.command == "report")
      results = run_report_impl(cfg, checks);
    else
      throw ConfigError("unknown command " + cfg.command);
    rep["results"] = std::move(results);
    rep["checks"] = checks.items;
    out.exit_code = checks.all_pass ? 0 : 4;
  } catch (const PreconditionError& e) {
    rep["checks"] = checks.items;
    rep["error"] = e.what();
    out.exit_code = 3;
  } catch (const CheckFailure& e) {
    rep["checks"] = checks.items;
    rep["error"] = e.what();
    out.exit_code = 4;
  } catch (const ConfigError& e) {
    rep["checks"] = checks.items;
    rep["error"] = e.what();
    out.exit_code = 2;
  } catch (const std::invalid_argument& e) {
    rep["checks"] = checks.items;
    rep["error"] = e.what();
    out.exit_code = 2;
  } catch (const std::domain_error& e) {
    rep["checks"] = checks.items;
    rep["error"] = e.what();
    out.exit_code = 2;
  } catch (const std::exception& e) {
    rep["checks"] = checks.items;
    rep["error"] = e.what();
    out.exit_code = 4;
  }
  const auto t1 = std::chrono::steady_clock::now();
  Json timing;
  timing["total"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  rep["timing_ms"] = timing;
  out.report = rep;
  if (!cfg.output_path.empty() && out.exit_code != 2) {
    std::ofstream f(cfg.output_path);
    if (f) f << rep.dump(2) << "\n";
  }
  return out;
}

std::string search_csv(const Json& report) {
  std::ostringstream os;
  os << "M,deltas,varpi,r0,C0\n";
  const Json& evals = report.at("results").at("evaluations");
  for (const auto& e : evals) {
    os << e.at("M").get<long>() << ",\"";
    const auto& ds = e.at("deltas");
    for (size_t i = 0; i < ds.size(); ++i) {
      if (i) os << ";";
      os << ds[i].get<long>();
    }
    os << "\"," << e.at("varpi").get<std::string>() << ","
       << e.at("r0").get<std::string>() << "," << e.at("C0").get<std::string>() << "\n";
  }
  return os.str();
}

}  // namespace zetaforms
