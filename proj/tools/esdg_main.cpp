#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "esdg/config.hpp"
#include "esdg/error.hpp"
#include "esdg/runner.hpp"

namespace {

// remaining tokens are free-form "--key value" overrides for any config key
std::vector<std::pair<std::string, std::string>> collect_overrides(
    const std::vector<std::string>& extras) {
  std::vector<std::pair<std::string, std::string>> kv;
  for (size_t i = 0; i < extras.size(); ++i) {
    std::string key = extras[i];
    if (key.rfind("--", 0) != 0)
      throw esdg::ConfigError("expected --key value, got '" + key + "'");
    key = key.substr(2);
    if (i + 1 >= extras.size())
      throw esdg::ConfigError("missing value for override '--" + key + "'");
    kv.emplace_back(key, extras[++i]);
  }
  return kv;
}

int load_and_run(const std::string& config_path,
                 const std::vector<std::string>& extras, bool ladder) {
  try {
    esdg::RunConfig cfg = esdg::parse_config_file(config_path);
    esdg::apply_overrides(cfg, collect_overrides(extras));
    return ladder ? esdg::run_ladder(cfg) : esdg::run_case(cfg);
  } catch (const esdg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return esdg::kExitConfigError;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy-stable DG Euler solver with buoyancy"};
  app.require_subcommand(1);

  std::string run_config, ladder_config;
  auto* run = app.add_subcommand(
      "run", "run a case from a config file (with --key value overrides)");
  run->add_option("config", run_config, "config file")->required();
  run->allow_extras();

  auto* ladder = app.add_subcommand(
      "ladder", "benchmark the volume-kernel optimization ladder");
  ladder->add_option("config", ladder_config, "config file")->required();
  ladder->allow_extras();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return load_and_run(run_config, run->remaining(), false);
  return load_and_run(ladder_config, ladder->remaining(), true);
}
