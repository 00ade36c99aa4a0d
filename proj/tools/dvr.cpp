#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "job.hpp"

#ifndef DVR_JOBS_DIR
#define DVR_JOBS_DIR "jobs"
#endif

namespace fs = std::filesystem;
using dvr::JobSpec;

namespace {

struct Cli {
  JobSpec spec;
  std::string trace_out;
  std::string fixtures = DVR_JOBS_DIR;
};

void configure(CLI::App& app, Cli& c) {
  app.set_config("--job", "", "Job file (key = value lines, keys are the long option names)");
  app.add_option("equation,--equation", c.spec.equation, "Equation in the ambient's variables and t");
  app.add_option("--ambient", c.spec.ambient, "P3, WP2111 or WP3211")->capture_default_str();
  app.add_option("--field", c.spec.field, "Residue field: q or fp:<p> with p >= 5")->capture_default_str();
  app.add_option("--mode", c.spec.mode, "cubic, dp2, classify or rigidity")
      ->check(CLI::IsMember({"cubic", "dp2", "classify", "rigidity"}))
      ->capture_default_str();
  app.add_option("--max-steps", c.spec.cap, "Step cap for the flowcharts")->capture_default_str();
  app.add_option("--seed", c.spec.seed, "Seed for every randomized choice")->capture_default_str();
  app.add_option("--truncation", c.spec.truncation, "t-adic precision for the axial multiplicity")
      ->capture_default_str();
  app.add_flag("--verify", c.spec.verify, "Re-check every step of the trace");
  app.add_option("--point", c.spec.point, "classify: projective coordinates, comma separated");
  app.add_option("--count", c.spec.count, "rigidity: number of members")->capture_default_str();
  app.add_option("--box", c.spec.box, "rigidity: coefficient box")->capture_default_str();
  app.add_option("--name", c.spec.name, "Job name recorded in the report");
  app.add_option("--trace-out", c.trace_out, "Write the JSON report to this path (a directory with --fixtures)");
  app.add_option("--fixtures", c.fixtures, "Run every job file in a directory (default: the shipped corpus)")
      ->expected(0, 1);
}

void write_atomically(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, path);
}

int run_fixtures(const Cli& c) {
  std::string dir = c.fixtures.empty() ? DVR_JOBS_DIR : c.fixtures;
  std::vector<fs::path> files;
  for (auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".job") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "no .job files in " << dir << "\n";
    return 1;
  }
  if (!c.trace_out.empty()) fs::create_directories(c.trace_out);
  nlohmann::json all;
  all["version"] = dvr::kReportVersion;
  all["fixtures"] = nlohmann::json::array();
  int worst = 0;
  for (auto& f : files) {
    CLI::App app;
    Cli jc;
    configure(app, jc);
    std::vector<std::string> args = {f.string(), "--job"};  // CLI11 consumes from the back
    app.parse(args);
    if (jc.spec.name.empty()) jc.spec.name = f.stem().string();
    auto res = dvr::run_job(jc.spec);
    if (!c.trace_out.empty())
      write_atomically(fs::path(c.trace_out) / (jc.spec.name + ".json"), dvr::report_text(res.report));
    all["fixtures"].push_back({{"job", jc.spec.name}, {"exit_code", res.exit_code}, {"outcome", res.report["outcome"]}});
    worst = std::max(worst, res.exit_code == 1 ? 3 : res.exit_code);
  }
  std::cout << dvr::report_text(all);
  return worst == 3 ? 1 : worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Models of Del Pezzo fibrations over a discrete valuation ring"};
  Cli c;
  configure(app, c);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  try {
    if (app.count("--fixtures")) return run_fixtures(c);
    if (c.spec.equation.empty()) {
      std::cerr << "an equation is required (positional, --equation or a job file)\n";
      return 1;
    }
    auto res = dvr::run_job(c.spec);
    std::string text = dvr::report_text(res.report);
    if (!c.trace_out.empty()) write_atomically(c.trace_out, text);
    std::cout << text;
    if (res.report.contains("error")) std::cerr << "error: " << res.report["error"]["message"].get<std::string>() << "\n";
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
