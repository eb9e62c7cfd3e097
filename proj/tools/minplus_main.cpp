#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "minplus/traffic.hpp"
#include "minplus/workbench.hpp"

using namespace minplus;

int main(int argc, char** argv) {
  CLI::App app{"minplus workbench: tropical algebra, Petri nets and traffic diagrams"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string density_spec;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "sections on the priority road");
    sub->add_option("--m", cfg.m, "sections on the other road");
    sub->add_option("--density", density_spec,
                    "single density or lo:hi:points grid");
    sub->add_option("--density-grid", density_spec,
                    "grid spec lo:hi:points (alias of --density)");
    sub->add_option("--burn-in", cfg.burn_in, "burn-in steps K0");
    sub->add_option("--horizon", cfg.horizon, "horizon K");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--placement", cfg.placement, "even|random");
    sub->add_option("--tolerance", cfg.tolerance, "verification tolerance");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_flag("--svg", cfg.svg, "also emit an SVG plot");
  };

  std::string matrix_file, net_file;
  auto* eigen = app.add_subcommand("eigen", "minplus eigenvalue of a matrix file");
  eigen->add_option("matrix", matrix_file, "matrix text file")->required();

  auto* diagram = app.add_subcommand("diagram", "fundamental diagram sweep");
  add_common(diagram);

  auto* verify = app.add_subcommand("verify", "check the closed-form eigenpairs");
  add_common(verify);

  auto* simulate = app.add_subcommand("simulate", "run a Petri net from a JSON file");
  simulate->add_option("net", net_file, "net JSON file")->required();
  add_common(simulate);

  auto* tent = app.add_subcommand("tent", "the chaotic worked example");
  tent->add_option("--mode", cfg.mode, "exact|mc")->default_val("mc");
  add_common(tent);

  auto* compose = app.add_subcommand("compose", "combine two systems");
  compose->add_option("--op", cfg.mode, "series|parallel|feedback")->required();
  compose->add_option("systems", cfg.inputs, "system files")->expected(1, 2);
  add_common(compose);

  CLI11_PARSE(app, argc, argv);

  if (!density_spec.empty()) {
    const auto c1 = density_spec.find(':');
    if (c1 == std::string::npos) {
      cfg.density_grid = {std::stod(density_spec)};
    } else {
      const auto c2 = density_spec.find(':', c1 + 1);
      if (c2 == std::string::npos) {
        std::cerr << "density grid must be lo:hi:points\n";
        return kParseError;
      }
      cfg.density_grid = uniform_grid(
          std::stod(density_spec.substr(0, c1)),
          std::stod(density_spec.substr(c1 + 1, c2 - c1 - 1)),
          std::stoul(density_spec.substr(c2 + 1)));
    }
  }

  if (eigen->parsed()) {
    cfg.subcommand = "eigen";
    return cmd_eigen(matrix_file, std::cout);
  }
  if (diagram->parsed()) {
    cfg.subcommand = "diagram";
    return cmd_diagram(cfg, std::cout);
  }
  if (verify->parsed()) {
    cfg.subcommand = "verify";
    return cmd_verify(cfg, std::cout);
  }
  if (simulate->parsed()) {
    cfg.subcommand = "simulate";
    cfg.model = net_file;
    return cmd_simulate(cfg, std::cout);
  }
  if (tent->parsed()) {
    cfg.subcommand = "tent";
    return cmd_tent(cfg, std::cout);
  }
  if (compose->parsed()) {
    cfg.subcommand = "compose";
    return cmd_compose(cfg, std::cout);
  }
  return kOk;
}
