// Command-line front end: kyp {analyze,solve,moebius,fixture} ...
//
// Every command writes one JSON report (stdout, or --output). Exit codes:
// 0 ok, 2 not passive, 3 infeasible candidate, 4 iteration cap,
// 5 Moebius identity failure, 64 input error.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kyp/contraction.hpp"
#include "kyp/errors.hpp"
#include "kyp/fixtures.hpp"
#include "kyp/inequality.hpp"
#include "kyp/io.hpp"
#include "kyp/moebius.hpp"
#include "kyp/solver.hpp"
#include "kyp/system.hpp"

namespace {

using kyp::io::Json;

constexpr int kOk = 0;
constexpr int kNotPassive = 2;
constexpr int kInfeasible = 3;
constexpr int kIterationCap = 4;
constexpr int kMoebiusFailure = 5;
constexpr int kInputError = 64;

struct Options {
  kyp::Tolerances tol;
  int grid_points = 32;
  std::uint64_t seed = 0;
  std::string system_path;
  std::string output_path;
  std::string candidate_path;
  std::string rescaled_path;
  std::string nu_path;
  std::string fixture_kind;
  long n_h = 1;
  long n_m = -1;
  long n_n = -1;
  double alpha = 0.5;
};

int emit(const Options& opt, Json report, int status) {
  report["exit_status"] = status;
  if (opt.output_path.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    kyp::io::write_json_file(opt.output_path, report);
  }
  return status;
}

Json header(const char* command, const Options& opt,
            const kyp::SystemRealization& sys) {
  Json out;
  out["command"] = command;
  out["tolerances"] = kyp::io::tolerances_to_json(opt.tol);
  out["system"] = {{"state_dim", sys.state_dim()},
                   {"input_dim", sys.input_dim()},
                   {"output_dim", sys.output_dim()}};
  return out;
}

// Returns the report of a non-passive system, or nullopt when passive.
std::optional<int> reject_non_passive(const Options& opt, Json& report,
                                      const kyp::Classification& c) {
  if (c.passive) return std::nullopt;
  report["classification"] = kyp::io::classification_to_json(c);
  report["contractivity_margin"] = 1.0 - c.norm;
  report["error"] = "system is not passive: ||T|| = " + kyp::format_number(c.norm);
  return emit(opt, report, kNotPassive);
}

int run_analyze(const Options& opt) {
  const kyp::SystemRealization sys = kyp::io::load_system(opt.system_path);
  Json report = header("analyze", opt, sys);
  const kyp::Classification c = kyp::classify(sys, opt.tol);
  if (auto status = reject_non_passive(opt, report, c)) return *status;
  report["classification"] = kyp::io::classification_to_json(c);
  const kyp::UniquenessReport u = kyp::uniqueness_report(sys, opt.tol);
  report["defshort"] = kyp::io::shorted_defects_to_json(u.defects);
  report["est1"] = kyp::io::bounds_to_json(kyp::solution_bounds(sys, opt.tol));
  const Json verdicts = kyp::io::uniqueness_to_json(u);
  for (const auto& [key, value] : verdicts.items()) report[key] = value;
  return emit(opt, report, kOk);
}

int run_solve(const Options& opt) {
  const kyp::SystemRealization sys = kyp::io::load_system(opt.system_path);
  Json report = header("solve", opt, sys);
  const kyp::Classification c = kyp::classify(sys, opt.tol);
  if (auto status = reject_non_passive(opt, report, c)) return *status;

  if (!opt.candidate_path.empty()) {
    const kyp::CMatrix x =
        kyp::io::load_candidate(opt.candidate_path, sys.state_dim());
    try {
      (void)kyp::KypCandidate::Make(x, opt.tol);
    } catch (const kyp::NotPsdError& e) {
      report["candidate"] = kyp::io::matrix_to_json(x);
      report["error"] = e.what();
      return emit(opt, report, kInfeasible);
    }
    const kyp::KypReport r = kyp::evaluate_forms(sys, x, opt.tol);
    report["kyp"] = kyp::io::kyp_report_to_json(r);
    return emit(opt, report, r.feasible ? kOk : kInfeasible);
  }

  const kyp::SolveResult solved = kyp::solve_min(sys, opt.tol);
  report["X_min"] = kyp::io::matrix_to_json(solved.x_min);
  report["trace"] = kyp::io::trace_to_json(solved.trace);
  const kyp::KypReport at_min = kyp::evaluate_forms(sys, solved.x_min, opt.tol);
  report["riccati_at_X_min"] = kyp::io::kyp_report_to_json(at_min)["riccati"];
  const kyp::Index n = sys.state_dim();
  const kyp::KypReport at_identity =
      kyp::evaluate_forms(sys, kyp::identity(n), opt.tol);
  report["riccati_at_identity"] =
      kyp::io::kyp_report_to_json(at_identity)["riccati"];

  if (c.minimal) {
    const kyp::OptimalityReport o = kyp::optimality_check(sys, opt.tol);
    report["optimality"] = {{"optimal", o.optimal},
                            {"star_optimal", o.star_optimal},
                            {"adjoint_X_min", kyp::io::matrix_to_json(o.adjoint_x_min)},
                            {"adjoint_trace", kyp::io::trace_to_json(o.dual.trace)}};
  } else {
    report["optimality"] = nullptr;
  }

  try {
    const kyp::SystemRealization t1 =
        kyp::rescale_realization(sys, solved.x_min, opt.tol);
    // X_min is approached from below, so T1 can exceed norm 1 by the
    // remaining iteration error; that excess is reported and scaled away
    // before the shorted defect is taken.
    const double norm = t1.T().norm();
    const kyp::BlockContraction unit = kyp::BlockContraction::FromFull(
        t1.T().full() / std::max(1.0, norm), n, n);
    const kyp::ShortedDefects sd = kyp::shorted_defects(unit, opt.tol);
    report["rescaled"] = kyp::io::system_to_json(t1);
    report["rescaled_norm_excess"] = norm - 1.0;
    report["rescaled_defect_H_norm"] = kyp::op_norm(sd.defect_H);
    if (!opt.rescaled_path.empty()) kyp::io::save_system(opt.rescaled_path, t1);
  } catch (const kyp::SingularError& e) {
    report["rescaled"] = nullptr;
    report["rescaled_note"] = e.what();
  }
  return emit(opt, report, solved.trace.converged ? kOk : kIterationCap);
}

int run_moebius(const Options& opt) {
  const kyp::SystemRealization sys = kyp::io::load_system(opt.system_path);
  Json report = header("moebius", opt, sys);
  const kyp::Classification c = kyp::classify(sys, opt.tol);
  if (auto status = reject_non_passive(opt, report, c)) return *status;
  const kyp::MoebiusPair pair = kyp::parameter_system(sys, opt.tol);
  const kyp::MoebiusCheck check = kyp::check_moebius(
      sys, pair, kyp::disk_grid(opt.grid_points, 0.9), opt.tol);
  report["theta0"] = kyp::io::matrix_to_json(pair.theta0);
  report["nu"] = kyp::io::system_to_json(pair.parameter_system);
  report["grid_points"] = check.points;
  report["identity_error"] = check.identity_error;
  report["schwarz_excess"] = check.schwarz_excess;
  const bool ok = check.identity_error <= kyp::kAgreementTol &&
                  check.schwarz_excess <= kyp::kAgreementTol;
  report["identity_holds"] = ok;
  if (!opt.nu_path.empty()) kyp::io::save_system(opt.nu_path, pair.parameter_system);
  return emit(opt, report, ok ? kOk : kMoebiusFailure);
}

int run_fixture(const Options& opt) {
  kyp::FixtureSpec spec;
  spec.kind = kyp::parse_fixture_kind(opt.fixture_kind);
  spec.n_h = opt.n_h;
  spec.n_m = opt.n_m;
  spec.n_n = opt.n_n;
  spec.alpha = opt.alpha;
  spec.seed = opt.seed;
  const kyp::SystemRealization sys = kyp::build_fixture(spec);
  const Json doc = kyp::io::system_to_json(sys);
  if (opt.output_path.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    kyp::io::write_json_file(opt.output_path, doc);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Passive systems and the KYP inequality"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--psd-tol", opt.tol.psd_tol, "Absolute eigenvalue floor")
      ->capture_default_str();
  app.add_option("--rank-tol", opt.tol.rank_tol, "Relative rank threshold")
      ->capture_default_str();
  app.add_option("--fixpoint-tol", opt.tol.fixpoint_tol,
                 "Iterate-gap stopping threshold")
      ->capture_default_str();
  app.add_option("--max-iter", opt.tol.max_iter, "Iteration cap")
      ->capture_default_str();
  app.add_option("--grid-points", opt.grid_points,
                 "Disk points for transfer-function checks")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "Fixture seed")->capture_default_str();
  app.add_option("-o,--output", opt.output_path, "Write the report here");

  auto* analyze = app.add_subcommand("analyze", "Classify and test uniqueness");
  analyze->add_option("system", opt.system_path, "System file")->required();

  auto* solve = app.add_subcommand("solve", "Minimal solution or candidate check");
  solve->add_option("system", opt.system_path, "System file")->required();
  solve->add_option("--candidate", opt.candidate_path, "Candidate X file");
  solve->add_option("--rescaled", opt.rescaled_path,
                    "Write the rescaled realization here");

  auto* moebius = app.add_subcommand("moebius", "Moebius parameter system");
  moebius->add_option("system", opt.system_path, "System file")->required();
  moebius->add_option("--nu", opt.nu_path, "Write the parameter system here");

  auto* fixture = app.add_subcommand("fixture", "Emit a fixture system file");
  fixture->add_option("kind", opt.fixture_kind,
                      "EX1, EX2, FIX-A, FIX-B, FIX-C or scalar-generic")
      ->required();
  fixture->add_option("--n-h", opt.n_h, "State dimension")->capture_default_str();
  fixture->add_option("--n-m", opt.n_m, "Input dimension (EX2)");
  fixture->add_option("--n-n", opt.n_n, "Output dimension (EX2)");
  fixture->add_option("--alpha", opt.alpha, "alpha in (0, 1)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    opt.tol.validate();
    if (opt.grid_points < 1) throw std::invalid_argument("--grid-points must be >= 1");
    if (*analyze) return run_analyze(opt);
    if (*solve) return run_solve(opt);
    if (*moebius) return run_moebius(opt);
    if (*fixture) return run_fixture(opt);
  } catch (const kyp::io::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const kyp::DimensionError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const kyp::NotContractiveError& e) {
    std::cerr << "not passive: " << e.what() << '\n';
    return kNotPassive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
