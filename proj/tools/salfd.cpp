// salfd: command-line front end for learning, metrics, plan reversal,
// frame rendering and the HTTP service.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "salfd/salfd.hpp"
#include "salfd/service.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitStepFailure = 1;
constexpr int kExitIo = 2;

struct IoError : salfd::Error {
  using salfd::Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

salfd::PipelineConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  return salfd::config_from_json(salfd::detail::parse_document(read_file(path)));
}

std::vector<salfd::Fixture> select_fixtures(const std::string& spec) {
  if (spec == "all") return salfd::fixtures();
  std::vector<salfd::Fixture> out;
  for (const auto& name : split(spec, ',')) out.push_back(salfd::fixture(name));
  return out;
}

// "default", "standard", "levels:0,4,5" or a JSON file holding a list of
// noise objects.
std::vector<salfd::NoiseConfig> load_noise_grid(const std::string& spec) {
  if (spec == "default") return salfd::default_noise_grid();
  if (spec == "standard") return {salfd::standard_noise()};
  if (spec.rfind("levels:", 0) == 0) {
    std::vector<salfd::NoiseConfig> grid;
    for (const auto& lv : split(spec.substr(7), ',')) grid.push_back(salfd::noise_level(std::stoi(lv)));
    return grid;
  }
  const auto doc = salfd::detail::parse_document(read_file(spec));
  if (!doc.is_array()) throw salfd::FormatError("noise grid must be a JSON array");
  std::vector<salfd::NoiseConfig> grid;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    grid.push_back(salfd::noise_from_json(doc[i], "[" + std::to_string(i) + "]"));
  }
  return grid;
}

void print_table(const salfd::MetricsTable& t, std::size_t grid_size) {
  std::fprintf(stderr, "%-8s %5s %8s %8s %10s %10s %8s\n", "fixture", "noise", "LfD", "SaLfD",
               "cost LfD", "cost SaLfD", "trials");
  for (std::size_t ni = 0; ni < grid_size; ++ni) {
    for (const auto& r : t.rows) {
      if (r.noise_index != ni || r.mode != salfd::Mode::lfd) continue;
      const auto& s = t.find(r.fixture, ni, salfd::Mode::salfd);
      std::fprintf(stderr, "%-8s %5zu %7.1f%% %7.1f%% %10.2f %10.2f %8.2f\n", r.fixture.c_str(), ni,
                   100 * r.success_rate(), 100 * s.success_rate(), r.mean_cost, s.mean_cost,
                   s.mean_trials_per_step);
    }
    std::fprintf(stderr, "%-8s %5zu %7.1f%% %7.1f%%\n", "mean", ni,
                 100 * t.mean_success(ni, salfd::Mode::lfd), 100 * t.mean_success(ni, salfd::Mode::salfd));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation-aided learning from demonstration for brick assembly"};
  app.require_subcommand(1);

  std::string trace_path, config_path, out_path, report_path;
  bool no_verify = false;
  auto* learn = app.add_subcommand("learn", "Learn a construction plan from a demonstration trace");
  learn->add_option("--trace", trace_path, "Demonstration trace (JSON)")->required();
  learn->add_option("--config", config_path, "Pipeline config (JSON)");
  learn->add_option("--out", out_path, "Plan output file (default stdout)");
  learn->add_option("--report", report_path, "Write the per-step learning report here");
  learn->add_flag("--no-verify", no_verify, "Skip simulation verification (LfD ablation)");

  std::string fixtures_spec = "all", grid_spec = "default";
  int seeds = 10;
  auto* metrics = app.add_subcommand("metrics", "Success-rate table, LfD vs SaLfD");
  metrics->add_option("--fixtures", fixtures_spec, "'all' or comma-separated fixture names");
  metrics->add_option("--noise-grid", grid_spec,
                      "'default', 'standard', 'levels:0,4,...' or a JSON file");
  metrics->add_option("--seeds", seeds, "Trials per (fixture, noise point)")->check(CLI::PositiveNumber);
  metrics->add_option("--config", config_path, "Pipeline config (JSON)");
  metrics->add_option("--out", out_path, "Report output file (default stdout)");

  int calib_levels = 11;
  auto* calibrate = app.add_subcommand("calibrate", "Find the lowest sweep level with LfD success in [40%, 90%]");
  calibrate->add_option("--seeds", seeds, "Trials per fixture and level")->check(CLI::PositiveNumber);
  calibrate->add_option("--levels", calib_levels, "Sweep levels to try")->check(CLI::PositiveNumber);

  std::string plan_path;
  auto* reverse = app.add_subcommand("reverse", "Print the disassembly plan of an assembly plan");
  reverse->add_option("--plan", plan_path, "Assembly plan (JSON)")->required();
  reverse->add_option("--out", out_path, "Output file (default stdout)");

  auto* render = app.add_subcommand("render", "Dump the observation frames of a trace as JSON");
  render->add_option("--trace", trace_path, "Demonstration trace (JSON)")->required();
  render->add_option("--out", out_path, "Output file (default stdout)");

  std::string fixture_name, noise_spec = "zero";
  auto* export_fx = app.add_subcommand("fixture", "Write a built-in fixture as a trace file");
  export_fx->add_option("--name", fixture_name, "Fixture name")->required();
  export_fx->add_option("--noise", noise_spec, "'zero', 'standard' or a sweep level");
  std::uint64_t noise_seed = 0;
  export_fx->add_option("--seed", noise_seed, "Sensor seed");
  export_fx->add_option("--out", out_path, "Output file (default stdout)");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "Run the HTTP API for live demonstration sessions");
  serve->add_option("--port", port, "TCP port");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--config", config_path, "Default session config (JSON)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*learn) {
      salfd::PipelineConfig cfg = load_config(config_path);
      if (no_verify) cfg.verification_enabled = false;
      const auto trace = salfd::parse_trace(read_file(trace_path), cfg.catalog);
      const auto report = salfd::learn(trace, cfg);
      write_output(out_path, salfd::serialize(report.plan, *cfg.catalog));
      if (!report_path.empty()) {
        write_output(report_path, salfd::to_json(*cfg.catalog, report).dump(2) + "\n");
      }
      for (const auto& s : report.per_step) {
        if (!s.ok()) std::fprintf(stderr, "step %d: %s\n", s.step, s.error.c_str());
      }
      std::fprintf(stderr, "%s: %zu steps, cost %d, %.1f ms\n", report.success ? "success" : "failure",
                   report.per_step.size(), report.cost, report.elapsed_ms);
      return report.success ? kExitOk : kExitStepFailure;
    }
    if (*metrics) {
      const salfd::PipelineConfig cfg = load_config(config_path);
      const auto grid = load_noise_grid(grid_spec);
      const auto table = salfd::run_metrics(select_fixtures(fixtures_spec), grid, seeds, cfg);
      print_table(table, grid.size());
      write_output(out_path, salfd::to_json(table).dump(2) + "\n");
      return kExitOk;
    }
    if (*calibrate) {
      for (int level = 0; level < calib_levels; ++level) {
        const auto table = salfd::run_metrics(salfd::fixtures(), {salfd::noise_level(level)}, seeds);
        const double lfd = table.mean_success(0, salfd::Mode::lfd);
        const double sa = table.mean_success(0, salfd::Mode::salfd);
        std::printf("level %d: LfD %.1f%%  SaLfD %.1f%%\n", level, 100 * lfd, 100 * sa);
        if (lfd >= 0.40 && lfd <= 0.90) {
          std::printf("standard level = %d\n", level);
          return kExitOk;
        }
      }
      std::printf("no level in band\n");
      return kExitStepFailure;
    }
    if (*reverse) {
      const auto plan = salfd::parse_plan(read_file(plan_path));
      write_output(out_path, salfd::serialize(salfd::reverse_plan(plan)));
      return kExitOk;
    }
    if (*render) {
      const auto trace = salfd::parse_trace(read_file(trace_path));
      salfd::ordered_json j = salfd::ordered_json::array();
      for (const auto& f : salfd::expand_demo(trace)) j.push_back(salfd::to_json(f));
      write_output(out_path, j.dump() + "\n");
      return kExitOk;
    }
    if (*export_fx) {
      salfd::DemonstrationTrace trace;
      trace.events = salfd::fixture(fixture_name).events;
      if (noise_spec == "standard") {
        trace.sensor = salfd::standard_noise();
      } else if (noise_spec != "zero") {
        trace.sensor = salfd::noise_level(std::stoi(noise_spec));
      }
      trace.sensor.seed = noise_seed;
      write_output(out_path, salfd::to_json(trace).dump(2) + "\n");
      return kExitOk;
    }
    if (*serve) {
      salfd::Service service(load_config(config_path));
      std::fprintf(stderr, "listening on %s:%d\n", host.c_str(), port);
      service.listen(host, port);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    // Unreadable, malformed or unbuildable input.
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return kExitOk;
}
