// hnet: harmonic nets from weighted graphs into metric spaces.
//
// Subcommands: relax, geodesic, refine, check. Exit codes: 0 success /
// converged, 1 error, 2 iteration cap, 3 check above tolerance.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hnet/io.hpp"
#include "hnet/net.hpp"
#include "hnet/tangent.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCap = 2;
constexpr int kExitCheckFailed = 3;

struct RunConfig {
  std::string input;
  std::string output;
  std::string trace;
  double tol = 1e-8;
  int max_sweeps = 100000;
  int refinements = 0;
  int segments = 8;
  std::string space;
  std::string from;
  std::string to;
  std::optional<std::uint64_t> seed;
  bool parallel = false;
};

// Resolve the spec's init clause; --seed overrides the seed of a
// "random" initialization.
hnet::NetMap prepared_map(const hnet::NetSpec& spec, const RunConfig& cfg) {
  hnet::NetSpec resolved = spec;
  if (cfg.seed && std::holds_alternative<hnet::RandomInit>(resolved.init))
    resolved.init = hnet::RandomInit{*cfg.seed};
  return hnet::instantiate(resolved);
}

hnet::NetMap refined_times(hnet::NetMap f, int times) {
  for (int k = 0; k < times; ++k) {
    auto [rg, record] = hnet::refine(f.graph());
    f = hnet::refine_map(f, std::make_shared<const hnet::WeightedGraph>(std::move(rg)), record);
  }
  return f;
}

int cmd_relax(const RunConfig& cfg) {
  const auto spec = hnet::load_net_spec(cfg.input);
  hnet::NetMap f = prepared_map(spec, cfg);
  f = refined_times(std::move(f), cfg.refinements);

  if (!f.graph().has_partition()) {
    auto bp = hnet::make_bipartite(f.graph());
    auto graph = std::make_shared<const hnet::WeightedGraph>(std::move(bp.graph));
    if (bp.record)
      f = hnet::refine_map(f, graph, *bp.record);
    else
      f = f.with_graph(graph);
  }

  const hnet::RelaxOptions opt{.tolerance = cfg.tol, .max_sweeps = cfg.max_sweeps,
                               .parallel = cfg.parallel};
  const auto report = hnet::relax(f, opt);

  if (!cfg.output.empty()) hnet::save_report(report, spec.space_descriptor, cfg.output);
  if (!cfg.trace.empty()) hnet::write_trace_csv(report, cfg.trace);

  std::cout << "relax: " << hnet::to_string(report.termination) << " after " << report.sweeps
            << " sweeps\n"
            << "final energy   = " << hnet::format_double(report.energy_trace.back()) << "\n"
            << "final residual = " << hnet::format_double(report.final_residual) << "\n";
  return report.termination == hnet::Termination::Converged ? kExitOk : kExitCap;
}

int cmd_geodesic(const RunConfig& cfg) {
  const auto space = hnet::parse_space_descriptor(cfg.space, std::filesystem::current_path());
  const auto a = hnet::parse_point_text(space, cfg.from);
  const auto b = hnet::parse_point_text(space, cfg.to);

  const hnet::GeodesicOptions opt{.segments = cfg.segments,
                                  .refinements = cfg.refinements,
                                  .tolerance = cfg.tol,
                                  .max_sweeps = cfg.max_sweeps,
                                  .parallel = cfg.parallel};
  const hnet::NetMap f = hnet::trace_geodesic(space, a, b, opt);

  double length = 0.0;
  for (int i = 0; i + 1 < f.graph().vertex_count(); ++i)
    length += space.distance(f.image(i), f.image(i + 1));

  if (!cfg.output.empty()) {
    hnet::write_polyline_csv(f, cfg.output);
    hnet::RelaxationReport summary{.energy_trace = {hnet::energy(f)},
                                   .residual_trace = {},
                                   .sweeps = 0,
                                   .termination = hnet::Termination::Converged,
                                   .final_residual = hnet::harmonicity_residual(f),
                                   .final_map = f};
    hnet::save_report(summary, cfg.space, std::filesystem::path(cfg.output).string() +
                                              ".report.json");
  }
  std::cout << "geodesic: " << f.graph().vertex_count() << " points\n"
            << "total length = " << hnet::format_double(length) << "\n";
  return kExitOk;
}

int cmd_refine(const RunConfig& cfg) {
  const auto spec = hnet::load_net_spec(cfg.input);
  if (!std::holds_alternative<std::vector<hnet::Point>>(spec.init))
    throw hnet::io_error("refine needs a spec with a full init image list");
  hnet::NetMap f = hnet::instantiate(spec);

  const double before = hnet::energy(f);
  const int rounds = std::max(1, cfg.refinements);
  std::optional<hnet::RefinementRecord> last_record;
  for (int k = 0; k < rounds; ++k) {
    auto [rg, record] = hnet::refine(f.graph());
    f = hnet::refine_map(f, std::make_shared<const hnet::WeightedGraph>(std::move(rg)), record);
    last_record = std::move(record);
  }
  const double after = hnet::energy(f);

  if (!cfg.output.empty())
    hnet::save_net_spec(hnet::net_spec_from_map(f, spec.space_descriptor, last_record),
                        cfg.output);
  std::cout << "refine: " << rounds << " round" << (rounds == 1 ? "" : "s") << "\n"
            << "energy before = " << hnet::format_double(before) << "\n"
            << "energy after  = " << hnet::format_double(after) << "\n";
  return kExitOk;
}

int cmd_check(const RunConfig& cfg) {
  const hnet::NetMap f = hnet::load_map_for_check(cfg.input);
  const hnet::Space& space = f.space();
  const bool smooth = space.smooth();

  double worst = 0.0;
  int offenders = 0;
  std::cout << "vertex  pinned  harmonicity";
  if (smooth)
    std::cout << "   criticality   variational\n";
  else
    std::cout << "   variational\n";

  for (int i = 0; i < f.graph().vertex_count(); ++i) {
    if (f.graph().degree(i) == 0) continue;
    const double h = f.pinned(i) ? 0.0 : [&] {
      std::vector<hnet::Point> pts;
      std::vector<double> ws;
      for (const auto& [j, w] : f.graph().neighbors(i)) {
        pts.push_back(f.image(j));
        ws.push_back(w);
      }
      hnet::MeanOptions m;
      m.hint = f.image(i);
      return space.distance(f.image(i), space.weighted_center_of_gravity(pts, ws, m));
    }();

    std::cout << i << "\t" << (f.pinned(i) ? "yes" : "no") << "\t"
              << hnet::format_double(h);
    double v = 0.0;
    if (smooth) {
      // Sup over unit directions of the Satz-style sum: the norm of the
      // weighted log barycenter.
      const double crit = hnet::criticality_residual(f, i);
      double w_i = 0.0;
      for (const auto& [j, w] : f.graph().neighbors(i)) w_i += w * w;
      v = crit * w_i;
      std::cout << "\t" << hnet::format_double(crit) << "\t" << hnet::format_double(v);
      if (!f.pinned(i)) worst = std::max({worst, h, crit});
    } else {
      const auto dirs = hnet::incident_directions(space, f.image(i));
      v = hnet::variational_inequality_check(f, i, dirs);
      std::cout << "\t" << hnet::format_double(v);
      if (!f.pinned(i)) worst = std::max({worst, h, v});
    }
    if (!f.pinned(i) && (h >= cfg.tol || (smooth ? false : v >= cfg.tol))) ++offenders;
    std::cout << "\n";
  }
  std::cout << "vertices above tolerance: " << offenders << "\n"
            << "worst residual = " << hnet::format_double(worst) << " (tol "
            << hnet::format_double(cfg.tol) << ")\n";
  return worst < cfg.tol ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"harmonic nets: relaxation, refinement, geodesic tracing, criticality checks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input)
      sub->add_option("--input", cfg.input, "net specification or report file")->required();
    sub->add_option("--output", cfg.output, "output file");
    sub->add_option("--trace", cfg.trace, "trace CSV (sweep,energy,residual)");
    sub->add_option("--tol", cfg.tol, "convergence tolerance");
    sub->add_option("--max-sweeps", cfg.max_sweeps, "relaxation sweep cap");
    sub->add_option("--refinements", cfg.refinements, "refinement rounds");
    sub->add_option("--seed", cfg.seed, "seed override for random initialization");
    sub->add_flag("--parallel", cfg.parallel, "update each class concurrently");
  };

  CLI::App* relax = app.add_subcommand("relax", "relax a net spec to a harmonic map");
  add_common(relax, true);

  CLI::App* geodesic = app.add_subcommand("geodesic", "trace a geodesic as a midpoint string");
  add_common(geodesic, false);
  geodesic->add_option("--space", cfg.space, "space descriptor")->required();
  geodesic->add_option("--from", cfg.from, "start point (comma-separated)")->required();
  geodesic->add_option("--to", cfg.to, "end point (comma-separated)")->required();
  geodesic->add_option("--segments", cfg.segments, "path segments");

  CLI::App* refine = app.add_subcommand("refine", "subdivide a net spec's graph and map");
  add_common(refine, true);

  CLI::App* check = app.add_subcommand("check", "harmonicity / criticality residual report");
  cfg.tol = 1e-8;
  add_common(check, true);

  CLI11_PARSE(app, argc, argv);

  // check defaults to the looser criticality tolerance unless overridden
  if (check->parsed() && check->get_option("--tol")->count() == 0) cfg.tol = 1e-6;

  try {
    if (relax->parsed()) return cmd_relax(cfg);
    if (geodesic->parsed()) return cmd_geodesic(cfg);
    if (refine->parsed()) return cmd_refine(cfg);
    if (check->parsed()) return cmd_check(cfg);
  } catch (const hnet::convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const hnet::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
