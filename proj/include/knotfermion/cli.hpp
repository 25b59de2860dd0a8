#pragma once

#include <algorithm>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "errors.hpp"
#include "suites.hpp"

namespace knotfermion {

/// Exit codes of the command-line interface.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitBadFlags = 2 };

namespace detail {

inline KnotParams knot_from_flags(int Q, int P) {
  if (Q < 1) throw InvalidArgument("--Q must be a positive integer");
  if (P < 1) throw InvalidArgument("--P must be a positive integer");
  if (gcd_long(Q, P) != 1) throw InvalidArgument("--P and --Q must be coprime");
  return KnotParams(Q, P);
}

inline Partition partition_from_flag(const std::vector<int>& parts, const std::string& flag) {
  if (parts.empty()) throw InvalidArgument(flag + " needs at least one part");
  for (int p : parts)
    if (p < 1) throw InvalidArgument(flag + " parts must be positive");
  return Partition(parts);
}

inline void require_at_least(int v, int lo, const std::string& flag) {
  if (v < lo) throw InvalidArgument(flag + " must be at least " + std::to_string(lo));
}

inline void clear_timing(CheckReport& r) { r.ms = 0; }

}  // namespace detail

/// Runs the command line `args` (without the program name), writing JSON to `out` and diagnostics to `err`.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact colored HOMFLY-PT, free-fermion correlator and spectral-curve computations for torus knots"};
  app.name("knotfermion_cli");
  app.require_subcommand(1);

  int Q = 2, P = 3;
  auto add_knot = [&](CLI::App* c) {
    c->add_option("--Q", Q, "torus knot parameter Q (>= 1)");
    c->add_option("--P", P, "torus knot parameter P (>= 1, coprime to Q)");
  };

  CLI::App* compute = app.add_subcommand("compute", "compute and print a single object");
  compute->require_subcommand(1);

  std::vector<int> rep{1};
  int u_order = 4;
  CLI::App* c_homfly = compute->add_subcommand("homfly", "extended colored HOMFLY-PT polynomial in the power sums");
  add_knot(c_homfly);
  c_homfly->add_option("-R,--rep", rep, "partition, parts separated by commas or spaces")->delimiter(',')->required();
  c_homfly->add_option("--u-order", u_order, "number of u-coefficients");

  std::vector<int> mu{1};
  bool connected = false;
  int genus = -1;
  CLI::App* c_corr = compute->add_subcommand("correlator", "fermionic correlator K_mu as a u-series");
  add_knot(c_corr);
  c_corr->add_option("--mu", mu, "partition, parts separated by commas or spaces")->delimiter(',')->required();
  c_corr->add_option("--u-order", u_order, "number of u-coefficients");
  c_corr->add_flag("--connected", connected, "connected correlator");
  c_corr->add_option("--genus", genus, "print the genus-g coefficient C^(g)_mu instead of the series");

  int index = 1, m_max_xi = 8;
  CLI::App* c_xi = compute->add_subcommand("xi", "expansion coefficients xi^index_m in Ahat");
  add_knot(c_xi);
  c_xi->add_option("--index", index, "1 or 2");
  c_xi->add_option("--m-max", m_max_xi, "largest m");

  int l_max = 3;
  CLI::App* c_psi = compute->add_subcommand("psi", "wave function coefficients psi_l in t = e^{hbar/(2Q)} and Ahat");
  add_knot(c_psi);
  c_psi->add_option("--l-max", l_max, "largest l");

  std::string suite = "all", mode = "specialized", out_path;
  SuiteOptions so;
  int m_max = 0;
  std::uint64_t seed = 1;
  bool no_timing = false;
  CLI::App* verify = app.add_subcommand("verify", "run verification suites and print a JSON report");
  add_knot(verify);
  verify->add_option("--suite", suite, "threeway, jacobi, xi, unstable, quasipoly, qcurve, kernel or all")
      ->check(CLI::IsMember({"threeway", "jacobi", "xi", "unstable", "quasipoly", "qcurve", "kernel", "all"}));
  verify->add_option("--max-weight", so.max_weight, "threeway: largest |mu|");
  verify->add_option("--u-order", so.u_order, "threeway: number of u-coefficients");
  verify->add_option("--m-max", m_max, "largest m (jacobi default 12, xi 8, unstable 10)");
  verify->add_option("--seed", seed, "seed for random specializations");
  verify->add_option("--mode", mode, "quasipoly: specialized or exact")->check(CLI::IsMember({"specialized", "exact"}));
  verify->add_option("--n-max", so.n_max, "quasipoly: largest number of points");
  verify->add_option("--k-max", so.k_max, "quasipoly: largest u-order");
  verify->add_option("--N", so.N, "qcurve: largest Lambda power");
  verify->add_option("--cases", so.cases, "kernel: randomized cases per property");
  verify->add_option("--out", out_path, "write the report to this file instead of stdout");
  verify->add_flag("--no-timing", no_timing, "report ms = 0 for byte-reproducible output");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadFlags;
  }

  try {
    KnotParams K = detail::knot_from_flags(Q, P);
    if (*c_homfly) {
      detail::require_at_least(u_order, 1, "--u-order");
      Partition R = detail::partition_from_flag(rep, "-R");
      Json terms = Json::array();
      for (auto& [s, c] : homfly_extended(K, R, u_order)) terms.push_back({{"p", s.parts()}, {"coeff", to_json(c)}});
      out << Json{{"object", "homfly"}, {"Q", Q}, {"P", P}, {"R", R.parts()}, {"u_order", u_order}, {"variables", {"u", "Ahat"}}, {"terms", terms}}.dump(2)
          << "\n";
      return kExitOk;
    }
    if (*c_corr) {
      detail::require_at_least(u_order, 1, "--u-order");
      Partition m = detail::partition_from_flag(mu, "--mu");
      Json j{{"object", "correlator"}, {"Q", Q}, {"P", P}, {"mu", m.parts()}, {"connected", connected || genus >= 0}};
      if (genus >= 0) {
        if (2 * genus - 2 + m.length() < -1) throw InvalidArgument("--genus too small for this --mu");
        j["genus"] = genus;
        j["value"] = to_json(C_g(genus, m, K));
        j["variable"] = "Ahat";
      } else {
        j["u_order"] = u_order;
        j["variables"] = {"u", "Ahat"};
        j["series"] = to_json(connected ? connected_K(m, K, u_order) : K_mu(m, K, u_order));
      }
      out << j.dump(2) << "\n";
      return kExitOk;
    }
    if (*c_xi) {
      if (index != 1 && index != 2) throw InvalidArgument("--index must be 1 or 2");
      detail::require_at_least(m_max_xi, 1, "--m-max");
      Json cs = Json::array();
      for (int m = 1; m <= m_max_xi; ++m) cs.push_back({{"m", m}, {"value", to_json(xi_coeff(index, m, K))}});
      out << Json{{"object", "xi"}, {"Q", Q}, {"P", P}, {"index", index}, {"variable", "Ahat"}, {"coefficients", cs}}.dump(2) << "\n";
      return kExitOk;
    }
    if (*c_psi) {
      detail::require_at_least(l_max, 0, "--l-max");
      Json cs = Json::array();
      std::vector<TAFraction> psi = wave_function(K, l_max);
      for (int l = 0; l <= l_max; ++l) cs.push_back({{"l", l}, {"value", to_json(psi[static_cast<std::size_t>(l)])}});
      out << Json{{"object", "psi"}, {"Q", Q}, {"P", P}, {"variables", {"t", "Ahat"}}, {"coefficients", cs}}.dump(2) << "\n";
      return kExitOk;
    }

    so.K = K;
    so.seed = seed;
    so.mode = mode == "exact" ? FitMode::exact : FitMode::specialized;
    so.m_max = m_max;
    detail::require_at_least(so.max_weight, 1, "--max-weight");
    detail::require_at_least(so.u_order, 1, "--u-order");
    detail::require_at_least(m_max, 0, "--m-max");
    detail::require_at_least(so.n_max, 1, "--n-max");
    detail::require_at_least(so.k_max, -1, "--k-max");
    detail::require_at_least(so.N, 1, "--N");
    detail::require_at_least(so.cases, 1, "--cases");

    std::vector<CheckReport> reports;
    auto want = [&](const std::string& s) { return suite == s || suite == "all"; };
    if (want("threeway")) reports.push_back(threeway_check(K, so.max_weight, so.u_order));
    if (want("jacobi")) reports.push_back(jacobi_check(K, pick(m_max, 12), seed));
    if (want("xi")) reports.push_back(xi_check(K, pick(m_max, 8)));
    if (want("unstable")) reports.push_back(unstable_check(K, pick(m_max, 10), seed));
    if (want("quasipoly")) reports.push_back(quasipoly_check(K, so.mode, seed, so.n_max, so.k_max));
    if (want("qcurve")) reports.push_back(qcurve_suite(K, so.N));
    if (want("kernel")) reports.push_back(kernel_check(seed, so.cases));

    CheckReport rep;
    if (reports.size() == 1) {
      rep = reports[0];
    } else {
      rep.suite = "all";
      for (const CheckReport& r : reports) {
        rep.absorb(r, r.suite + ": ");
        rep.ms += r.ms;
      }
    }
    rep.params = {{"Q", Q},
                  {"P", P},
                  {"suite", suite},
                  {"max_weight", so.max_weight},
                  {"u_order", so.u_order},
                  {"m_max", m_max},
                  {"seed", seed},
                  {"mode", mode},
                  {"n_max", so.n_max},
                  {"k_max", so.k_max},
                  {"N", so.N},
                  {"cases", so.cases}};
    if (no_timing) detail::clear_timing(rep);
    std::string text = rep.to_json().dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw InvalidArgument("--out: cannot open " + out_path);
      f << text;
    }
    return rep.passed() ? kExitOk : kExitCheckFailed;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const StabilityRange& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace knotfermion
