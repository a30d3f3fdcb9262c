#include "CLI11.hpp"
#include "seqclass/commands.hpp"

#include <iostream>
#include <optional>

namespace {

struct Source {
  std::string config;
  std::string preset;

  void add(CLI::App* cmd, bool preset_ok) {
    cmd->add_option("--config", config, "key = value config file (schema = 1)");
    if (preset_ok)
      cmd->add_option("--preset", preset, "fig1 | fig2 | fig3")->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  }
  std::optional<std::string> cfg() const { return config.empty() ? std::nullopt : std::optional(config); }
  std::optional<std::string> pre() const { return preset.empty() ? std::nullopt : std::optional(preset); }
};

}  // namespace

int main(int argc, char** argv) {
  using namespace seqclass;
  CLI::App app{"seqclass: error exponents and simulation for binary classification"};
  app.require_subcommand(1);

  Source ex_src, cu_src, si_src;
  std::string cu_out, si_out, level = "quick";
  std::vector<int> only;

  auto* ex = app.add_subcommand("exponents", "print the exponent report as JSON");
  ex_src.add(ex, true);
  auto* cu = app.add_subcommand("curve", "sweep one parameter, write curve.csv and curve.svg");
  cu_src.add(cu, true);
  cu->add_option("--out", cu_out, "output directory")->required();
  auto* si = app.add_subcommand("simulate", "Monte Carlo runs, write trials.csv and summary.json");
  si_src.add(si, true);
  si->add_option("--out", si_out, "output directory")->required();
  auto* ve = app.add_subcommand("verify", "run the acceptance checks");
  ve->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  ve->add_option("--criterion", only, "run only these criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  auto load = [&](const Source& s, RunConfig& out) {
    try {
      out = load_config(s.cfg(), s.pre());
      return true;
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return false;
    }
  };

  RunConfig cfg;
  if (*ex) return load(ex_src, cfg) ? cmd_exponents(cfg, std::cout, std::cerr) : kExitConfig;
  if (*cu) return load(cu_src, cfg) ? cmd_curve(cfg, cu_out, std::cout, std::cerr) : kExitConfig;
  if (*si) return load(si_src, cfg) ? cmd_simulate(cfg, si_out, std::cout, std::cerr) : kExitConfig;
  if (*ve) return cmd_verify(level, only, std::cout, std::cerr);
  return kExitConfig;
}
