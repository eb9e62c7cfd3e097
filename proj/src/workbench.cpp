#include "minplus/workbench.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "minplus/io.hpp"
#include "minplus/spectral.hpp"
#include "minplus/system.hpp"
#include "minplus/tent.hpp"
#include "minplus/traffic.hpp"

namespace minplus {

namespace fs = std::filesystem;

std::string RunConfig::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["model"] = model;
  j["n"] = n;
  j["m"] = m;
  j["density_grid"] = density_grid;
  j["burn_in"] = burn_in;
  j["horizon"] = horizon;
  j["seed"] = seed;
  j["tolerance"] = tolerance;
  j["placement"] = placement;
  j["out_dir"] = out_dir;
  j["svg"] = svg;
  j["mode"] = mode;
  j["inputs"] = inputs;
  j["version"] = kVersion;
  return j.dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  RunConfig c;
  c.subcommand = j.value("subcommand", "");
  c.model = j.value("model", "");
  c.n = j.value("n", std::size_t(2));
  c.m = j.value("m", std::size_t(10));
  c.density_grid = j.value("density_grid", std::vector<double>{});
  c.burn_in = j.value("burn_in", std::size_t(0));
  c.horizon = j.value("horizon", std::size_t(0));
  c.seed = j.value("seed", std::uint64_t(1));
  c.tolerance = j.value("tolerance", 1e-9);
  c.placement = j.value("placement", "even");
  c.out_dir = j.value("out_dir", "");
  c.svg = j.value("svg", false);
  c.mode = j.value("mode", "");
  c.inputs = j.value("inputs", std::vector<std::string>{});
  return c;
}

void RunArtifact::write_file(const std::string& name,
                             const std::string& content) {
  std::ofstream out(fs::path(dir) / name, std::ios::binary);
  out << content;
  files.push_back(name);
}

void RunArtifact::log(const std::string& line) {
  std::ofstream out(fs::path(dir) / "run.log", std::ios::app);
  out << line << '\n';
}

RunArtifact open_run(const RunConfig& cfg) {
  RunArtifact art;
  if (!cfg.out_dir.empty()) {
    art.dir = cfg.out_dir;
  } else {
    const char* root = std::getenv("MINPLUS_OUT_ROOT");
    art.dir = (fs::path(root ? root : ".") /
               ("run-" + cfg.subcommand + "-" + std::to_string(cfg.seed)))
                  .string();
  }
  fs::create_directories(art.dir);
  art.write_file("config.json", cfg.to_json());
  art.log("version " + std::string(kVersion));
  return art;
}

namespace {

Placement parse_placement(const std::string& s) {
  if (s == "even") return Placement::even;
  if (s == "random") return Placement::random;
  throw ParseError("placement must be 'even' or 'random'");
}

std::vector<double> grid_or_default(const RunConfig& cfg) {
  if (!cfg.density_grid.empty()) return cfg.density_grid;
  return uniform_grid(0.0, 1.0, 101);
}

}  // namespace

int cmd_eigen(const std::string& matrix_file, std::ostream& out) {
  MinPlusMatrix a;
  try {
    a = parse_minplus_matrix_file(matrix_file);
  } catch (const ParseError& e) {
    out << "parse error: " << e.what() << '\n';
    return kParseError;
  }
  try {
    const CycleStats cs = min_mean_cycle(a);
    out << "lambda " << format_double(cs.mean_weight) << '\n';
    out << "cycle";
    for (std::size_t v : cs.nodes) out << ' ' << v + 1;
    out << " (weight " << format_double(cs.total_weight) << ", length "
        << cs.length << ")\n";
    const MinPlusVector x = eigenvector_linear(a, cs.mean_weight);
    out << "eigenvector";
    for (const auto& e : x) out << ' ' << e.str();
    out << '\n';
    return kOk;
  } catch (const NotStronglyConnected& e) {
    out << "structure error: " << e.what() << '\n';
    return kStructureError;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return kStructureError;
  }
}

int cmd_diagram(const RunConfig& cfg, std::ostream& out) {
  RunArtifact art = open_run(cfg);
  SweepParams params;
  params.burn_in = cfg.burn_in;
  params.horizon = cfg.horizon;
  params.seed = cfg.seed;
  params.placement = parse_placement(cfg.placement);
  const auto grid = grid_or_default(cfg);
  const auto points = diagram_sweep(cfg.n, cfg.m, grid, params);
  art.write_file("diagram.csv", diagram_csv(points));
  if (cfg.svg) art.write_file("diagram.svg", diagram_svg(points));
  std::size_t failures = 0;
  for (const auto& p : points)
    if (!p.sim_ok) {
      ++failures;
      art.log("point d=" + format_double(p.d) + " failed: " + p.error);
    }
  art.log("sweep n=" + std::to_string(cfg.n) + " m=" + std::to_string(cfg.m) +
          " points=" + std::to_string(points.size()) +
          " failures=" + std::to_string(failures));
  out << "wrote " << art.dir << "/diagram.csv (" << points.size()
      << " rows, " << failures << " failures)\n";
  return failures * 10 > points.size() ? kVerificationFailed : kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto grid = grid_or_default(cfg);
  const Placement placement = parse_placement(cfg.placement);
  bool all_pass = true;
  out << "d,phase,lambda,formula,residual,verdict\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = grid[i];
    JunctionConfig jc;
    try {
      jc = marking_from_density(cfg.n, cfg.m, d, placement, cfg.seed + i);
    } catch (const std::exception& e) {
      out << format_double(d) << ",-,-,-,-,SKIP (" << e.what() << ")\n";
      continue;
    }
    const LambdaExact ex = junction_lambda_exact(jc);
    bool any_pass = false;
    for (const auto& c : ex.candidates) {
      out << format_double(d) << ',' << phase_name(c.phase) << ','
          << format_double(c.lambda) << ',' << c.formula << ','
          << format_double(c.residual) << ',' << (c.pass ? "PASS" : "FAIL")
          << '\n';
      any_pass = any_pass || c.pass;
    }
    if (!any_pass) {
      all_pass = false;
      out << format_double(d) << ",-,-,-,-,NO CANDIDATE PASSED\n";
    }
  }
  return all_pass ? kOk : kVerificationFailed;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  PetriNet net;
  try {
    net = parse_net_json_file(cfg.model);
  } catch (const ParseError& e) {
    out << "parse error: " << e.what() << '\n';
    return kParseError;
  }
  const Diagnostics diag = validate_deterministic(net);
  if (!diag.ok) {
    for (const auto& msg : diag.messages) out << msg << '\n';
    return kNondeterministic;
  }
  RunArtifact art = open_run(cfg);
  const std::size_t K = cfg.horizon ? cfg.horizon : 100;
  std::ostringstream csv;
  csv << "k";
  for (std::size_t q = 0; q < net.transition_count(); ++q)
    csv << ',' << net.transition(q);
  csv << ",flow\n";
  NetState s = initial_state(net);
  double prev_total = 0.0;
  for (std::size_t k = 0; k <= K; ++k) {
    double total = 0.0;
    for (double v : s.transitions) total += v;
    csv << k;
    for (double v : s.transitions) csv << ',' << format_double(v);
    const double flow =
        k == 0 ? 0.0 : (total - prev_total) / double(net.transition_count());
    csv << ',' << format_double(flow) << '\n';
    prev_total = total;
    if (k < K) s = step(net, s);
  }
  art.write_file("trajectory.csv", csv.str());
  out << "wrote " << art.dir << "/trajectory.csv (" << K << " steps)\n";
  return kOk;
}

int cmd_tent(const RunConfig& cfg, std::ostream& out) {
  const HomogeneousMap f = tent_system();
  const ReducedEigenProblem reduced = reduce_eigenproblem(f);
  const FixedPointResult fps = fixed_point_solve(reduced);
  out << "fixed points:";
  for (const auto& fp : fps.points) {
    out << ' ' << format_double(fp.y[0]);
    out << (fp.stability == Stability::repelling ? " (unstable)" : "");
  }
  out << '\n';
  const TentOrbit orbit = tent_exact_orbit(2, 5);
  out << "orbit from 2/5: period " << orbit.cycle.size() << ", growth rate "
      << orbit.growth.num << '/' << orbit.growth.den << " = "
      << format_double(orbit.growth.value()) << '\n';
  if (cfg.mode == "exact") return kOk;
  const std::size_t steps = cfg.horizon ? cfg.horizon : 100000;
  const TentMonteCarlo mc = tent_monte_carlo(steps, cfg.seed);
  out << "monte carlo chi (" << steps << " steps, seed " << cfg.seed
      << "): " << format_double(mc.chi) << '\n';
  if (!cfg.out_dir.empty()) {
    RunArtifact art = open_run(cfg);
    std::ostringstream csv;
    csv << "k,y,sorted\n";
    std::vector<double> sorted = mc.samples;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    for (std::size_t k = 0; k < mc.samples.size(); ++k)
      csv << k << ',' << format_double(mc.samples[k]) << ','
          << format_double(sorted[k]) << '\n';
    art.write_file("tent.csv", csv.str());
    out << "wrote " << art.dir << "/tent.csv\n";
  }
  return kOk;
}

int cmd_compose(const RunConfig& cfg, std::ostream& out) {
  try {
    SystemDyn result;
    if (cfg.mode == "feedback") {
      if (cfg.inputs.size() != 1)
        throw ParseError("feedback takes one system file");
      result = feedback(parse_system_file(cfg.inputs[0]));
    } else if (cfg.mode == "series" || cfg.mode == "parallel") {
      if (cfg.inputs.size() != 2)
        throw ParseError(cfg.mode + " takes two system files");
      const SystemDyn s1 = parse_system_file(cfg.inputs[0]);
      const SystemDyn s2 = parse_system_file(cfg.inputs[1]);
      result = cfg.mode == "series" ? series(s1, s2) : parallel(s1, s2);
    } else {
      throw ParseError("operator must be series, parallel or feedback");
    }
    std::ostringstream text;
    write_system(text, result);
    if (!cfg.out_dir.empty()) {
      RunArtifact art = open_run(cfg);
      art.write_file("composite.sys", text.str());
      out << "wrote " << art.dir << "/composite.sys\n";
    } else {
      out << text.str();
    }
    return kOk;
  } catch (const ParseError& e) {
    out << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return kStructureError;
  }
}

}  // namespace minplus
