// pea: partial probabilistic error amplification experiments.
//
// Thin front end over the shared-library C API; all physics and file
// emission lives behind pea.h.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pea.h"

namespace {

int exit_code_for(pea_status status) {
  switch (status) {
    case PEA_OK: return 0;
    case PEA_ERR_CONFIG:
    case PEA_ERR_PARSE:
    case PEA_ERR_INVALID_ARGUMENT:
    case PEA_ERR_IO: return 2;
    default: return 3;
  }
}

struct CommonOptions {
  std::string config;
  std::vector<std::string> overrides;
  long long seed = -1;
  std::string out;
  int threads = 0;

  std::vector<std::string> collect() const {
    std::vector<std::string> all = overrides;
    if (seed >= 0) all.push_back("run.seed=" + std::to_string(seed));
    if (!out.empty()) all.push_back("run.out=" + out);
    if (threads > 0) all.push_back("run.threads=" + std::to_string(threads));
    return all;
  }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config, "experiment config file")->required();
  cmd->add_option("--seed", opts.seed, "override run.seed");
  cmd->add_option("--out", opts.out, "override run.out (output directory)");
  cmd->add_option("--threads", opts.threads, "override run.threads (worker count)");
  cmd->add_option("--set", opts.overrides, "override any config key (section.key=value)");
}

int run(const std::string& kind, const CommonOptions& opts, bool summary_instead_of_report) {
  std::vector<std::string> overrides = opts.collect();
  std::vector<const char*> raw;
  raw.reserve(overrides.size());
  for (const std::string& o : overrides) raw.push_back(o.c_str());

  char* summary = nullptr;
  char* report = nullptr;
  pea_status status = pea_run_experiment(opts.config.c_str(), kind.c_str(), raw.data(),
                                         static_cast<int>(raw.size()), &summary, &report);
  if (status != PEA_OK) {
    std::fprintf(stderr, "pea %s: %s\n", kind.c_str(), pea_last_error());
    return exit_code_for(status);
  }
  if (summary_instead_of_report) {
    if (summary) std::fputs(summary, stdout);
  } else if (report && report[0] != '\0') {
    std::fputs(report, stdout);
  }
  pea_string_free(summary);
  pea_string_free(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("pea ") + pea_version() +
               " - noise-model extrapolation experiments"};
  app.require_subcommand(1);

  CommonOptions scaling_opts, tfim_opts, predict_opts, design_opts;
  bool predict_json = false, design_json = false;

  CLI::App* scaling = app.add_subcommand(
      "scaling", "shot-budget sweep with the optimal two-gain design (Clifford circuit)");
  add_common(scaling, scaling_opts);

  CLI::App* tfim = app.add_subcommand(
      "tfim", "per-step extrapolated time evolution of the transverse-field Ising circuit");
  add_common(tfim, tfim_opts);

  CLI::App* predict = app.add_subcommand(
      "predict", "closed-form noisy expectation report (no sampling)");
  add_common(predict, predict_opts);
  predict->add_flag("--json", predict_json, "print the JSON summary instead of the report");

  CLI::App* design = app.add_subcommand(
      "design", "optimal gains, shot allocation and error bound for a shot budget");
  add_common(design, design_opts);
  design->add_flag("--json", design_json, "print the JSON summary instead of the report");

  CLI11_PARSE(app, argc, argv);

  if (scaling->parsed()) return run("scaling", scaling_opts, false);
  if (tfim->parsed()) return run("tfim", tfim_opts, false);
  if (predict->parsed()) return run("predict", predict_opts, predict_json);
  if (design->parsed()) return run("design", design_opts, design_json);
  return 1;  // unreachable: a subcommand is required
}
