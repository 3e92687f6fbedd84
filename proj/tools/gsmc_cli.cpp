// Copyright 2026 The gsmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <nlohmann/json.hpp>

#include "gsmc/sim/metrics.hpp"
#include "gsmc/sim/scenario.hpp"
#include "gsmc/verify/battery.hpp"

namespace {

using nlohmann::json;

// Exit codes for `simulate`: 0 clean, 1 config error, 2 numeric failure,
// 3 aborted near the controller's critical set.

int cmd_simulate(const std::string& target, bool certify_lambda) {
  gsmc::SimScenario sc;
  try {
    if (auto builtin = gsmc::builtin_scenario(target)) {
      sc = *builtin;
    } else {
      sc = gsmc::scenario_from_file(target);
    }
    sc.validate();
  } catch (const gsmc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  if (certify_lambda) {
    if (sc.system == gsmc::SimScenario::SystemKind::unicycle) {
      const gsmc::UnicycleParams& up = sc.uc;
      const gsmc::WeightedMetric metric(gsmc::Vec3(up.mu, up.mu, up.J_R).asDiagonal());
      const gsmc::Se2KinematicController ctrl(sc.k_b, sc.k1, sc.k2);
      const auto rep =
          gsmc::check_definition1(ctrl, gsmc::Se2SampleDomain{}, 20000, 20260809, metric);
      double sup_xid = 0.0;
      try {
        const auto des = gsmc::scenario_se2_desired(sc);
        for (int i = 0; i <= 400; ++i) {
          const double t = sc.integ.t_end * i / 400.0;
          sup_xid = std::max(sup_xid, metric.norm(des.xi(t)));
        }
      } catch (const gsmc::DegeneratePath& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
      }
      const double gamma = sc.k1 / 8.0;
      const double y_inf = rep.prop_iv_rate_estimate;
      const double b1 = rep.b1_estimate;
      std::cout << "lambda certification (sampled estimates, advisory):\n"
                << "  sup |xi_d|_I = " << sup_xid << ", inf y = " << y_inf
                << ", b1 = " << b1 << ", gamma = " << gamma << "\n";
      if (y_inf > 0.0 && b1 > 0.0) {
        const double lambda_req = sup_xid / (y_inf * std::sqrt(b1 * gamma));
        std::cout << "  required lambda > " << lambda_req << ", configured " << sc.gains.lambda
                  << "\n";
        if (sc.gains.lambda <= lambda_req) {
          std::cout << "  WARNING: configured lambda does not satisfy the sampled rate rule\n";
        }
      } else {
        std::cout << "  WARNING: rate estimates degenerate; rule not evaluable\n";
      }
    } else {
      std::cout << "lambda certification applies to the constrained tracking law only; skipped\n";
    }
  }

  try {
    const auto outcome = gsmc::run_scenario(sc);
    std::cout << "scenario " << sc.name << ": " << outcome.samples << " samples -> "
              << outcome.csv_path << "\n";
    if (!sc.plot_path.empty()) std::cout << "plot script -> " << outcome.plot_path << "\n";
    if (outcome.aborted) {
      std::cerr << "aborted near critical set at t = " << outcome.abort.t << ": "
                << outcome.abort.reason << "\n";
      return 3;
    }
    return 0;
  } catch (const gsmc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  }
}

int cmd_verify(const std::string& suite, const gsmc::verify::VerifyOptions& opt, int jobs,
               const std::string& report_dir) {
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = {"lie", "kinctrl", "dynamics", "sliding"};
  } else {
    suites = {suite};
  }

  std::vector<std::vector<gsmc::verify::BatteryResult>> results(suites.size());
  try {
    if (jobs > 1) {
      std::vector<std::future<std::vector<gsmc::verify::BatteryResult>>> futures;
      for (const auto& s : suites) {
        futures.push_back(std::async(std::launch::async,
                                     [s, opt] { return gsmc::verify::run_suite(s, opt); }));
      }
      for (size_t i = 0; i < futures.size(); ++i) results[i] = futures[i].get();
    } else {
      for (size_t i = 0; i < suites.size(); ++i) {
        results[i] = gsmc::verify::run_suite(suites[i], opt);
      }
    }
  } catch (const gsmc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  int failed = 0;
  json summary;
  summary["seed"] = opt.seed;
  summary["suites"] = json::array();
  for (size_t i = 0; i < suites.size(); ++i) {
    json js;
    js["name"] = suites[i];
    js["checks"] = json::array();
    for (const auto& r : results[i]) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
      if (!r.pass) ++failed;
      js["checks"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    summary["suites"].push_back(js);
  }
  summary["failed_groups"] = failed;
  std::cout << failed << " of the check groups failed\n";
  std::cout << "SUMMARY " << summary.dump() << "\n";

  if (!report_dir.empty() && (suite == "kinctrl" || suite == "all")) {
    const gsmc::UnicycleParams up;
    const gsmc::WeightedMetric metric(gsmc::Vec3(up.mu, up.mu, up.J_R).asDiagonal());
    const gsmc::Se2KinematicController ctrl(opt.kb, opt.k1, opt.k2);
    const auto rep =
        gsmc::check_definition1(ctrl, gsmc::Se2SampleDomain{}, 10000, opt.seed + 1, metric);
    std::ofstream txt(report_dir + "/definition1_se2.txt");
    rep.write_summary(txt, "se2");
    std::ofstream csv(report_dir + "/definition1_se2_violations.csv");
    rep.write_violations_csv(csv);
    std::cout << "reports written to " << report_dir << "\n";
  }

  return std::min(failed, 100);
}

int cmd_metrics(const std::string& csv_path) {
  try {
    const auto table = gsmc::read_csv_file(csv_path);
    const auto m = gsmc::compute_metrics(table);
    if (m.settling_time) {
      std::cout << "settling_time " << *m.settling_time << " s (err_frobenius < "
                << m.settle_threshold << ")\n";
    } else {
      std::cout << "settling_time none (error never settles below " << m.settle_threshold
                << ")\n";
    }
    std::cout << "lyapunov_rate " << m.lyapunov_rate << " 1/s (log-fit over [1 s, end])\n"
              << "peak_tau " << m.peak_tau << "\n"
              << "final err_frobenius " << m.final_err_frobenius << ", err_xi "
              << m.final_err_xi << ", sliding_norm " << m.final_sliding_norm << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "metrics error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-mode control on trivial principal fiber bundles: simulation and "
               "verification front end"};
  app.require_subcommand(1);

  std::string sim_target;
  bool certify_lambda = false;
  auto* sim = app.add_subcommand("simulate", "Run a scenario (built-in name or config file)");
  sim->add_option("config", sim_target, "built-in scenario name or INI config path")->required();
  sim->add_flag("--certify-lambda", certify_lambda,
                "check the tracking-gain rule against sampled constants (warns only)");

  std::string suite;
  gsmc::verify::VerifyOptions vopt;
  int jobs = 1;
  std::string report_dir;
  auto* ver = app.add_subcommand("verify", "Run property batteries with fixed seeds");
  ver->add_option("suite", suite, "lie | kinctrl | dynamics | sliding | all")->required();
  ver->add_option("--seed", vopt.seed, "base seed for the batteries");
  ver->add_option("--jobs", jobs, "run suites in parallel");
  ver->add_option("--kb", vopt.kb, "SE(2) kinematic gain k_b");
  ver->add_option("--k1", vopt.k1, "SE(2) kinematic gain k1");
  ver->add_option("--k2", vopt.k2, "SE(2) kinematic gain k2");
  ver->add_option("--report-dir", report_dir, "write summaries and violation CSVs here");

  std::string csv_path;
  auto* met = app.add_subcommand("metrics", "Summarize a trajectory CSV");
  met->add_option("csv", csv_path, "CSV written by simulate")->required();

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) return cmd_simulate(sim_target, certify_lambda);
  if (ver->parsed()) return cmd_verify(suite, vopt, jobs, report_dir);
  if (met->parsed()) return cmd_metrics(csv_path);
  return 0;
}
