#include <cstdint>
#include <string>

#include "CLI11.hpp"

#include "chronoscv/run_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"chronoscv: measurement-defined spacetime states of continuous-variable modes"};

  chronoscv::runcfg::RunOptions opts;
  std::uint64_t seed = 0;
  bool seed_set = false;

  app.add_option("--config", opts.config_path, "path to a JSON run config")->required();
  app.add_option("--out", opts.out_dir, "output directory for artifacts")
      ->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
  app.add_flag("--deterministic", opts.deterministic,
               "record deterministic-reduction mode in metadata (reductions are "
               "always thread-count independent)");

  CLI11_PARSE(app, argc, argv);

  seed_set = seed_opt->count() > 0;
  if (seed_set) opts.seed_override = seed;

  return chronoscv::runcfg::run(opts);
}
