// adsmax command line front end; talks to the shared library through the C
// API only. Exit codes: 0 all requested checks pass, 1 run/solver failure or
// failed checks, 2 configuration errors.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "adsmax/adsmax.h"

namespace {

int status_exit_code(adsmax_status st) {
  switch (st) {
    case ADSMAX_OK:
      return 0;
    case ADSMAX_ERR_CONFIG:
    case ADSMAX_ERR_INVALID_ARGUMENT:
      return 2;
    default:
      return 1;
  }
}

int complain(const char* module, adsmax_status st) {
  std::fprintf(stderr, "adsmax: [%s] %s: %s\n", module, adsmax_status_name(st),
               adsmax_last_error());
  return status_exit_code(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximal-surface laboratory for GHMC anti-de Sitter 3-manifolds"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool deterministic = false;

  auto* run = app.add_subcommand("run", "run an experiment config and emit reports");
  run->add_option("config", config_path, "experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "override the config's output directory");
  run->add_flag("--deterministic", deterministic, "single-threaded reference mode");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "print the per-claim verdict table of a run");
  report->add_option("dir", report_dir, "output directory of a previous run")->required();

  std::string validate_config;
  auto* validate = app.add_subcommand("validate-surface", "build and validate the surface");
  validate->add_option("config", validate_config, "experiment config (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    int checks_passed = 0;
    const adsmax_status st = adsmax_run(config_path.c_str(),
                                        out_dir.empty() ? nullptr : out_dir.c_str(),
                                        deterministic ? 1 : 0, &checks_passed);
    if (st != ADSMAX_OK) return complain("run", st);
    if (!checks_passed) {
      std::fprintf(stderr, "adsmax: run finished with failed checks (see manifest.json)\n");
      return 1;
    }
    std::printf("adsmax: run complete, all checks pass\n");
    return 0;
  }

  if (report->parsed()) {
    char* text = nullptr;
    const adsmax_status st = adsmax_report(report_dir.c_str(), &text);
    if (st != ADSMAX_OK) return complain("report", st);
    std::fputs(text, stdout);
    adsmax_string_free(text);
    return 0;
  }

  if (validate->parsed()) {
    char* text = nullptr;
    int all_ok = 0;
    const adsmax_status st = adsmax_validate_surface(validate_config.c_str(), &text, &all_ok);
    if (st != ADSMAX_OK) return complain("validate-surface", st);
    std::fputs(text, stdout);
    adsmax_string_free(text);
    return all_ok ? 0 : 1;
  }
  return 2;
}
