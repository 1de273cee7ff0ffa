#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hnet/net.hpp"

namespace hnet {

/// Parses "euclidean:n", "sphere:n", "hyperbolic:n", "circle",
/// "tree:<path>". Tree paths are resolved relative to base_dir.
Space parse_space_descriptor(const std::string& descriptor,
                             const std::filesystem::path& base_dir = {});

/// Tree file: {"vertices": count, "edges": [[u, v, length], ...]}.
Space load_tree_space(const std::filesystem::path& file);

struct RandomInit {
  std::uint64_t seed = 0;
};
struct InterpolatePinsInit {};
using InitSpec = std::variant<std::vector<Point>, InterpolatePinsInit, RandomInit>;

/// Parsed net specification file.
struct NetSpec {
  std::string space_descriptor;
  Space space;
  std::shared_ptr<const WeightedGraph> graph;
  std::map<int, Point> pins;
  InitSpec init;
  /// Provenance written by refine runs.
  std::optional<RefinementRecord> refinement;
};

NetSpec load_net_spec(const std::filesystem::path& file);
void save_net_spec(const NetSpec& spec, const std::filesystem::path& file);

/// Resolves the init clause ("interpolate-pins" walks geodesics between
/// the two pins by hop-count ratio; "random:<seed>" draws xorshift64*
/// samples) into a concrete map.
NetMap instantiate(const NetSpec& spec);

NetSpec net_spec_from_map(const NetMap& f, std::string space_descriptor,
                          std::optional<RefinementRecord> refinement = std::nullopt);

/// Report files carry the relaxation outcome plus enough provenance
/// (space/graph/pins) to re-load the final map for checking.
void save_report(const RelaxationReport& report, const std::string& space_descriptor,
                 const std::filesystem::path& file);

/// Loads the final map of a report file, or instantiates a net spec,
/// depending on the file's shape.
NetMap load_map_for_check(const std::filesystem::path& file);

/// Trace CSV: header then one "sweep,energy,residual" row per full sweep
/// (energy after the sweep, max displacement within it).
void write_trace_csv(const RelaxationReport& report, const std::filesystem::path& file);

/// One point per line, coordinates comma-separated (tree: edge,offset).
void write_polyline_csv(const NetMap& f, const std::filesystem::path& file);

/// Serializes through a temp file in the target directory plus rename.
void atomic_write(const std::filesystem::path& file, const std::string& content);

/// Round-trip exact floating point formatting (17 significant digits).
std::string format_double(double value);

Point parse_point_text(const Space& space, const std::string& text);

}  // namespace hnet
