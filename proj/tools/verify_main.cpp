// Command-line front end: list and run the registered numeric checks, and
// import/export states and channels in the matrix JSON format.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "entkit/constructions.hpp"
#include "entkit/measures.hpp"
#include "entkit/verify.hpp"

namespace {

int write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot open output path: " << path << "\n";
    return 2;
  }
  out << text;
  return 0;
}

void print_result_line(const entkit::CheckResult& r) {
  std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.check_id << "  ("
            << r.runtime_ms << " ms)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entkit verification harness"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "list registered checks");

  entkit::VerifyConfig cfg;
  bool run_all_flag = false;
  std::string check_id;
  double tol_arg = -1.0;
  int samples_arg = -1, dim_arg = -1, k_arg = -1;
  double beta_arg = std::numeric_limits<double>::quiet_NaN();
  double alpha_arg = std::numeric_limits<double>::quiet_NaN();

  auto* run_cmd = app.add_subcommand("run", "run checks and write a report");
  run_cmd->add_flag("--all", run_all_flag, "run every registered check");
  run_cmd->add_option("--check", check_id, "run a single check by id");
  run_cmd->add_option("--dim", dim_arg, "dimension override");
  run_cmd->add_option("--k", k_arg, "projection rank override");
  run_cmd->add_option("--beta", beta_arg, "Werner parameter override");
  run_cmd->add_option("--alpha", alpha_arg, "Renyi order override");
  run_cmd->add_option("--seed", cfg.seed, "master seed");
  run_cmd->add_option("--tol", tol_arg, "tolerance override for every check");
  run_cmd->add_option("--samples", samples_arg, "sample-count override");
  run_cmd->add_option("--out", cfg.out_path, "report path (default stdout)");
  run_cmd->add_option("--format", cfg.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string export_state, export_channel, export_out;
  auto* export_cmd =
      app.add_subcommand("export", "write a state or channel as matrix JSON");
  export_cmd->add_option("--state", export_state,
                         "state spec, e.g. werner:d=4,beta=1.0");
  export_cmd->add_option("--channel", export_channel,
                         "channel spec, e.g. superactivation");
  export_cmd->add_option("--out", export_out, "output path (default stdout)");

  std::string import_path;
  auto* import_cmd =
      app.add_subcommand("import", "read matrix JSON and print a summary");
  import_cmd->add_option("--in", import_path, "input path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*list_cmd) {
      for (const entkit::CheckDef* d : entkit::list_checks())
        std::cout << d->id << "\n    " << d->description << "\n";
      return 0;
    }

    if (*run_cmd) {
      if (run_all_flag == !check_id.empty()) {
        std::cerr << "specify exactly one of --all or --check <id>\n";
        return 2;
      }
      if (tol_arg > 0) cfg.tolerance = tol_arg;
      if (samples_arg > 0) cfg.samples = samples_arg;
      if (dim_arg > 0) cfg.dim = dim_arg;
      if (k_arg > 0) cfg.k = k_arg;
      if (!std::isnan(beta_arg)) cfg.beta = beta_arg;
      if (!std::isnan(alpha_arg)) cfg.alpha = alpha_arg;

      entkit::Report report;
      if (run_all_flag) {
        report = entkit::run_all(cfg);
      } else {
        report.config = cfg;
        report.results.push_back(entkit::run_check(check_id, cfg));
        report.total = 1;
        report.passed = report.results.front().pass ? 1 : 0;
      }
      for (const entkit::CheckResult& r : report.results)
        print_result_line(r);
      std::cout << report.passed << "/" << report.total << " checks passed\n";

      const std::string text =
          cfg.format == "csv" ? entkit::report_to_csv(report)
                              : entkit::report_to_json(report).dump(2) + "\n";
      if (!cfg.out_path.empty()) {
        const int rc = write_text(cfg.out_path, text);
        if (rc != 0) return rc;
      }
      return report.passed == report.total ? 0 : 1;
    }

    if (*export_cmd) {
      if (export_state.empty() == export_channel.empty()) {
        std::cerr << "specify exactly one of --state or --channel\n";
        return 2;
      }
      entkit::Json j;
      if (!export_state.empty())
        j = entkit::operator_to_json(entkit::state_from_spec(export_state));
      else
        j = entkit::channel_to_json(
            entkit::channel_from_spec(export_channel));
      return write_text(export_out, j.dump(2) + "\n");
    }

    if (*import_cmd) {
      std::ifstream in(import_path);
      if (!in) {
        std::cerr << "cannot open input path: " << import_path << "\n";
        return 2;
      }
      entkit::Json j = entkit::Json::parse(in);
      if (j.contains("metadata")) {
        const entkit::Channel ch = entkit::channel_from_json(j);
        std::cout << "channel: in_dim " << ch.in_dim() << ", out_dim "
                  << ch.out_dim() << ", cptp "
                  << (entkit::is_cptp(ch) ? "yes" : "no") << ", ppt-map "
                  << (entkit::is_ppt_map(ch) ? "yes" : "no") << "\n";
      } else {
        const entkit::HermitianOperator op = entkit::operator_from_json(j);
        std::cout << "operator: side " << op.side() << ", factors "
                  << op.factor_count() << ", trace " << op.trace()
                  << ", min eigenvalue " << entkit::min_eigenvalue(op)
                  << "\n";
      }
      return 0;
    }
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
