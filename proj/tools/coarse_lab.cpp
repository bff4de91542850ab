#include <iostream>
#include <utility>

#include <CLI11.hpp>

#include "coarse/cli.hpp"

int main(int argc, char** argv) {
  coarse::cli::RunConfig cfg;
  CLI::App app{"Finite coarse-geometry lab: box spaces, spectral gaps, separation certificates, warped cones"};
  app.require_subcommand(1, 1);

  std::optional<double> R;
  std::optional<double> c;
  std::optional<double> c_max;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--space", cfg.space, "metric space or block space JSON")->check(CLI::ExistingFile);
    sub->add_option("--graph", cfg.graphs, "edge-list file(s); several form a coarse disjoint union")
        ->check(CLI::ExistingFile)
        ->delimiter(',');
    sub->add_option("--filtration", cfg.filtration, "filtration JSON (box space input)")->check(CLI::ExistingFile);
    sub->add_option("--net", cfg.net, "warped-cone net spec JSON")->check(CLI::ExistingFile);
    sub->add_option("--R", R, "separation scale");
    sub->add_option("--schedule", cfg.schedule, "scales: R1,R2,... or r1:R1,r2:R2,...");
    sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "seed for randomized validation")->capture_default_str();
    sub->add_option("--exclusion-rule", cfg.exclusion_rule, "injectivity | none | prefix:k | table:R=k,...");
    sub->add_option("--p", cfg.p, "target exponent: 2 (Hilbert) or 1 (L1)")->capture_default_str();
    sub->add_option("--c", c, "spectral-gap threshold for window scans");
    sub->add_option("--c-max", c_max, "largest accepted certificate constant");
    sub->add_option("--max-elements", cfg.max_elements, "group enumeration cap")->capture_default_str();
    sub->add_option("--samples", cfg.samples, "random Lipschitz maps for validation")->capture_default_str();
  };
  const std::pair<const char*, const char*> commands[] = {
      {"build", "assemble a block space (and quotient groups for a filtration)"},
      {"spectrum", "Laplacian gap of a graph, or of every block"},
      {"embed", "separation problem with its dual certificate (--p 1 or 2)"},
      {"certify", "spectral-gap certificate, or a scheduled search with --c-max"},
      {"scan", "lower-control profile over the window catalogue"},
      {"warp", "intrinsic and warped metrics of a cone net"},
  };
  for (const auto& [name, about] : commands) common(app.add_subcommand(name, about));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : coarse::cli::kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.R = R;
  cfg.c = c;
  cfg.c_max = c_max;
  return coarse::cli::run(cfg, std::cerr);
}
