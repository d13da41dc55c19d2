#pragma once

// Command-line surface. Every subcommand emits one JSON document on stdout.
// Exit codes: 0 success, 1 a verify suite failed, 2 usage or invalid input,
// 3 a comparison or refinement hit the precision cap.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mnorm/arith.hpp"
#include "mnorm/collisions.hpp"
#include "mnorm/farey.hpp"
#include "mnorm/fock.hpp"
#include "mnorm/json_out.hpp"
#include "mnorm/markov.hpp"
#include "mnorm/norm.hpp"
#include "mnorm/ordering.hpp"
#include "mnorm/svg.hpp"
#include "mnorm/verify.hpp"

namespace mnorm::cli {

inline Fraction parse_fraction(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos)
    throw std::invalid_argument("expected a fraction p/q, got: " + s);
  return Fraction(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

inline BigRat parse_rational(const std::string& s) {
  BigRat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("expected a rational, got: " + s);
  r.canonicalize();
  return r;
}

inline std::pair<long long, long long> parse_point(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("expected a point q,p, got: " + s);
  return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
}

// Round an enclosure to `digits` decimals, refining the evaluator until both
// endpoints agree on the rounded string.
template <typename F>
inline std::pair<std::string, RealEnclosure> rounded_decimal(const F& eval, int digits) {
  for (int prec = std::max(128, digits * 4 + 16);; prec += prec) {
    RealEnclosure e = eval(prec);
    char *lo = nullptr, *hi = nullptr;
    mpfr_asprintf(&lo, "%.*Rf", digits, e.lo());
    mpfr_asprintf(&hi, "%.*Rf", digits, e.hi());
    std::string slo(lo), shi(hi);
    mpfr_free_str(lo);
    mpfr_free_str(hi);
    if (slo == shi) return {slo, e};
    if (prec * 2 > kPrecisionCapBits)
      throw PrecisionCapError("decimal rounding undecided at the precision cap");
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Markov numbers, the stable norm of the modular torus, and the "
               "Markov ordering"};
  app.require_subcommand(1);
  app.fallthrough();
  int prec = 128;
  app.add_option("--prec", prec, "working precision in bits")->capture_default_str();

  std::string fraction_arg, slope_arg, through_arg = "1,0", out_path;
  std::vector<long long> pair_arg;
  long long q_arg = 1, p_arg = 0, bound = 10, kmax = 200, kstart = 1;
  int digits = 4;
  bool coprime_only = false;
  std::string deriv_arg, suite_arg;

  auto* markov_cmd = app.add_subcommand("markov", "Markov number of p/q, or the Markov distance of a pair");
  markov_cmd->add_option("fraction", fraction_arg, "reduced fraction p/q in [0,1]");
  markov_cmd->add_option("--pair", pair_arg, "sector point q p")->expected(2);

  auto* psi_cmd = app.add_subcommand("psi", "Fock's function or a one-sided derivative at p/q in [0,1/2]");
  psi_cmd->add_option("fraction", fraction_arg)->required();
  psi_cmd->add_option("--deriv", deriv_arg, "left or right")
      ->check(CLI::IsMember({"left", "right"}));

  auto* slopes_cmd = app.add_subcommand("slopes", "corner data mu-, mu+, ell, L, R at (q,p)");
  slopes_cmd->add_option("q", q_arg)->required();
  slopes_cmd->add_option("p", p_arg)->required();

  auto* sigma_cmd = app.add_subcommand("sigma", "the extreme boundary slopes sigma-, sigma+");
  sigma_cmd->add_option("--digits", digits, "decimal digits")->capture_default_str();

  auto* scan_cmd = app.add_subcommand("scan-line", "scan a lattice line and classify the Markov distances");
  scan_cmd->add_option("--slope", slope_arg, "line slope dp/dq, e.g. -7/6")->required();
  scan_cmd->add_option("--through", through_arg, "base point q0,p0")->required();
  scan_cmd->add_option("--bound", bound, "largest q")->required();
  scan_cmd->add_flag("--coprime", coprime_only, "restrict to coprime points");

  auto* anti_cmd = app.add_subcommand("find-antimodal", "search antimodal witness lines of a given slope");
  anti_cmd->add_option("--slope", slope_arg)->required();
  anti_cmd->add_option("--kmax", kmax)->required();
  anti_cmd->add_option("--kstart", kstart)->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("--suite", suite_arg)
      ->required()
      ->check(CLI::IsMember({"aigner", "llrs", "thm11", "thm14", "dehn",
                             "derivatives", "convexity"}));
  verify_cmd->add_option("--bound", bound, "suite bound");
  verify_cmd->add_option("--kmax", kmax, "witness search bound (llrs)");

  auto* census_cmd = app.add_subcommand("census", "Markov label multiplicity census");
  census_cmd->add_option("--bound", bound)->required();

  auto* svg_cmd = app.add_subcommand("ball-svg", "render the stable-norm ball");
  svg_cmd->add_option("--bound", bound)->required();
  svg_cmd->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  const char* cache_env = std::getenv("MARKOV_CACHE");
  if (cache_env && *cache_env && std::filesystem::exists(cache_env))
    markov_tree().load_snapshot(cache_env);

  auto t0 = std::chrono::steady_clock::now();
  json doc;
  int rc = 0;
  try {
    if (markov_cmd->parsed()) {
      doc["command"] = "markov";
      if (!pair_arg.empty()) {
        doc["inputs"] = {{"q", pair_arg[0]}, {"p", pair_arg[1]}};
        doc["results"] = {{"markov_distance",
                           markov_distance(pair_arg[0], pair_arg[1]).get_str()}};
      } else if (!fraction_arg.empty()) {
        Fraction f = parse_fraction(fraction_arg);
        doc["inputs"] = {{"fraction", f.str()}};
        doc["results"] = {{"markov_number", markov_number(f).get_str()}};
      } else {
        err << "markov: need a fraction or --pair q p\n";
        return 2;
      }
    } else if (psi_cmd->parsed()) {
      Fraction f = parse_fraction(fraction_arg);
      doc["command"] = "psi";
      doc["inputs"] = {{"fraction", f.str()}, {"deriv", deriv_arg}, {"prec", prec}};
      RealEnclosure v = deriv_arg == "left"    ? psi_left_derivative(f, prec)
                        : deriv_arg == "right" ? psi_right_derivative(f, prec)
                                               : psi(f, prec);
      doc["results"] = {{deriv_arg.empty() ? "psi" : "derivative", enclosure_json(v)}};
    } else if (slopes_cmd->parsed()) {
      CoprimePair v(q_arg, p_arg);
      doc["command"] = "slopes";
      doc["inputs"] = {{"q", v.q}, {"p", v.p}, {"prec", prec}};
      doc["results"] = corner_json(corner_slopes(v, prec));
    } else if (sigma_cmd->parsed()) {
      doc["command"] = "sigma";
      doc["inputs"] = {{"digits", digits}};
      auto [sm, sme] = rounded_decimal([](int p) { return sigma_minus(p); }, digits);
      auto [sp, spe] = rounded_decimal([](int p) { return sigma_plus(p); }, digits);
      doc["results"] = {{"sigma_minus", {{"rounded", sm}, {"enclosure", enclosure_json(sme)}}},
                        {"sigma_plus", {{"rounded", sp}, {"enclosure", enclosure_json(spe)}}}};
    } else if (scan_cmd->parsed()) {
      BigRat slope = parse_rational(slope_arg);
      auto [q0, p0] = parse_point(through_arg);
      LatticeLine line = line_through(slope, q0, p0);
      doc["command"] = "scan-line";
      doc["inputs"] = {{"slope", slope.get_str()},
                       {"through", pair_json(q0, p0)},
                       {"bound", bound},
                       {"coprime", coprime_only}};
      doc["results"] = scan_json(scan_line(
          line, bound, coprime_only ? ScanMode::CoprimeOnly : ScanMode::AllSector));
    } else if (anti_cmd->parsed()) {
      BigRat slope = parse_rational(slope_arg);
      doc["command"] = "find-antimodal";
      doc["inputs"] = {{"slope", slope.get_str()}, {"kstart", kstart}, {"kmax", kmax}};
      auto witnesses = find_antimodal(slope, kstart, kmax);
      json arr = json::array();
      for (std::size_t i = 0; i < witnesses.size() && i < 25; ++i) {
        const auto& w = witnesses[i];
        arr.push_back({{"through", pair_json(w.line.q0, w.line.p0)},
                       {"scan", scan_json(w.scan)}});
      }
      doc["results"] = {{"witness_count", witnesses.size()}, {"witnesses", arr}};
    } else if (verify_cmd->parsed()) {
      doc["command"] = "verify";
      SuiteResult res;
      bool bound_set = verify_cmd->count("--bound") > 0;
      if (suite_arg == "aigner") res = verify_aigner(bound_set ? bound : 300);
      else if (suite_arg == "llrs") res = verify_llrs(bound_set ? bound : 300, kmax);
      else if (suite_arg == "thm11") res = verify_thm11(bound_set ? bound : 150);
      else if (suite_arg == "thm14") res = verify_thm14(bound_set ? bound : 150);
      else if (suite_arg == "dehn") res = verify_dehn(10);
      else if (suite_arg == "derivatives") res = verify_derivatives(bound_set ? bound : 30);
      else res = verify_convexity(bound_set ? bound : 100, bound_set ? std::min<long long>(bound, 50) : 50);
      doc["inputs"] = {{"suite", suite_arg}};
      doc["results"] = suite_json(res);
      if (res.undecided_events > 0) rc = 3;
      else if (!res.pass) rc = 1;
    } else if (census_cmd->parsed()) {
      doc["command"] = "census";
      doc["inputs"] = {{"bound", bound}};
      doc["results"] = census_json(collision_census(bound));
    } else if (svg_cmd->parsed()) {
      doc["command"] = "ball-svg";
      doc["inputs"] = {{"bound", bound}, {"out", out_path}};
      doc["results"] = {{"points", write_ball_svg(out_path, bound, prec)},
                        {"out", out_path}};
    }
  } catch (const PrecisionCapError& e) {
    err << "precision cap reached: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  }

  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  doc["elapsed_ms"] = ms;
  out << doc.dump(2) << '\n';

  if (cache_env && *cache_env) {
    std::string tmp = std::string(cache_env) + ".tmp";
    markov_tree().save_snapshot(tmp);
    std::filesystem::rename(tmp, cache_env);
  }
  return rc;
}

}  // namespace mnorm::cli
