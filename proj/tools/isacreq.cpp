// Command-line front end. Exit codes: 0 success, 1 infeasible, 2 error.

#include "isacreq/commands.hpp"
#include "isacreq/service.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <httplib.h>
#include <iostream>

using namespace isacreq;

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

ScenarioConfig load_or_default(const std::string& path) {
  return path.empty() ? ScenarioConfig{} : load_scenario_file(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ISAC feasibility engine: use-case KPIs to signal, hardware and deployment requirements"};
  app.require_subcommand(1);

  std::string scenario_path, use_cases = "all", json_path, out_path;
  auto* report = app.add_subcommand("report", "Evaluate a scenario against use cases");
  report->add_option("scenario", scenario_path, "Scenario file")->required();
  report->add_option("-u,--use-case", use_cases, "Use case id, comma list, or all");
  report->add_option("--json", json_path, "Also write the JSON report here");

  SweepRequest sweep;
  std::string target = "rate", sweep_uc;
  auto* sw = app.add_subcommand("sweep", "Requirement sweep over one scenario parameter");
  sw->add_option("scenario", scenario_path, "Scenario file")->required();
  sw->add_option("--param", sweep.param, "Dotted key, e.g. signal.bandwidth_hz")->required();
  sw->add_option("--from", sweep.from, "First grid value")->required();
  sw->add_option("--to", sweep.to, "Last grid value")->required();
  sw->add_option("--points", sweep.points, "Grid points")->check(CLI::PositiveNumber);
  sw->add_flag("--log", sweep.log_spacing, "Logarithmic grid");
  sw->add_option("--target", target, "rate, rate-bandwidth or peb");
  sw->add_option("-u,--use-case", sweep_uc, "Use case supplying the KPI (default C2, or L1 for peb)");
  sw->add_option("-o,--output", out_path, "CSV output (default stdout)");

  std::string figure;
  auto* curve = app.add_subcommand("curve", "Trade-off curves as CSV");
  curve->add_option("--figure", figure, "fig2 or fig3")->required();
  curve->add_option("scenario", scenario_path, "Optional scenario for fig2 parameters");
  curve->add_option("-o,--output", out_path, "CSV output (default stdout)");

  std::string metric = "peb", csv_path, pgm_path, bound_uc = "L1";
  auto* heat = app.add_subcommand("heatmap", "Coverage heatmap over the deployment region");
  heat->add_option("scenario", scenario_path, "Scenario file")->required();
  heat->add_option("--metric", metric, "peb, gdop, visible_count, rate or sensing_snr");
  heat->add_option("-u,--use-case", bound_uc, "Use case whose update rate sets the pilot budget");
  heat->add_option("--csv", csv_path, "CSV output (default stdout)");
  heat->add_option("--pgm", pgm_path, "PGM (P2) output");

  auto* rec = app.add_subcommand("recommend", "Joint configuration for a set of use cases");
  rec->add_option("-u,--use-case", use_cases, "Use case id, comma list, or all");
  rec->add_option("-o,--output", out_path, "Write the recommended scenario file here");
  rec->add_option("--json", json_path, "Write the recommendation JSON here");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (report->parsed()) {
      const auto s = load_scenario_file(scenario_path);
      const auto reports = evaluate_selection(s, parse_use_case_selection(use_cases));
      std::cout << render_report_text(reports);
      if (!json_path.empty()) emit(json_path, dump_json(evaluation_json(reports)));
      const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.overall; });
      return ok ? kExitOk : kExitInfeasible;
    }
    if (sw->parsed()) {
      sweep.target = parse_sweep_target(target);
      sweep.use_case = parse_use_case_id(
          sweep_uc.empty() ? (sweep.target == SweepTarget::kPebPower ? "L1" : "C2") : sweep_uc);
      const auto s = load_scenario_file(scenario_path);
      emit(out_path, sweep_csv(sweep, run_sweep(s, sweep)));
      return kExitOk;
    }
    if (curve->parsed()) {
      const auto f = parse_figure(figure);
      if (scenario_path.empty()) {
        emit(out_path, figure_csv(f));
      } else {
        const auto s = load_scenario_file(scenario_path);
        emit(out_path, figure_csv(f, &s));
      }
      return kExitOk;
    }
    if (heat->parsed()) {
      const auto s = load_or_default(scenario_path);
      const auto h = scenario_heatmap(s, parse_heatmap_metric(metric), parse_use_case_id(bound_uc));
      std::ostringstream csv;
      write_heatmap_csv(csv, h);
      emit(csv_path, csv.str());
      if (!pgm_path.empty()) {
        std::ostringstream pgm;
        write_heatmap_pgm(pgm, h);
        write_file(pgm_path, pgm.str());
      }
      return kExitOk;
    }
    if (rec->parsed()) {
      const auto r = recommend(parse_use_case_selection(use_cases));
      for (const auto& line : r.rationale) std::cout << "- " << line << '\n';
      std::cout << render_report_text(r.reports);
      if (!out_path.empty()) write_file(out_path, write_scenario_text(r.scenario));
      if (!json_path.empty()) emit(json_path, dump_json(recommendation_json(r)));
      return r.verified ? kExitOk : kExitInfeasible;
    }
    if (serve->parsed()) {
      httplib::Server server;
      register_routes(server);
      std::cerr << "listening on " << host << ':' << port << '\n';
      if (!server.listen(host, port)) throw ConfigError("cannot bind " + host + ":" + std::to_string(port));
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
