#include "hnet/io.hpp"

#include <charconv>
#include <cstdio>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace hnet {

using nlohmann::json;

namespace {

json load_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw io_error("cannot open " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw io_error(file.string() + ": " + e.what());
  }
  return j;
}

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw io_error(where + ": missing required key \"" + key + "\"");
  return *it;
}

std::vector<double> as_doubles(const json& j, const std::string& where) {
  if (!j.is_array()) throw io_error(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw io_error(where + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

json point_to_json(const Space& s, const Point& p) {
  if (s.kind() == SpaceKind::Tree) {
    const TreePoint t = s.canonical(p).tree();
    return json::array({t.edge, t.offset});
  }
  return json(p.coords());
}

Point point_from_json(const Space& s, const json& j, const std::string& where) {
  const auto values = as_doubles(j, where);
  Point p;
  if (s.kind() == SpaceKind::Tree) {
    if (values.size() != 2) throw io_error(where + ": tree points are [edge, offset] pairs");
    p = Point::on_edge(static_cast<int>(values[0]), values[1]);
  } else if (s.kind() == SpaceKind::Circle) {
    if (values.size() != 1) throw io_error(where + ": circle points are single angles");
    p = Point::from_angle(values[0]);
  } else {
    p = Point::from_coords(values);
  }
  try {
    s.validate_point(p);
  } catch (const invalid_point_error& e) {
    throw io_error(where + ": " + e.what());
  }
  return p;
}

json graph_to_json(const WeightedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back(json::array({e.u, e.v, e.weight}));
  json j{{"vertices", g.vertex_count()}, {"edges", std::move(edges)}};
  if (g.has_partition()) j["partition"] = g.partition();
  return j;
}

std::shared_ptr<const WeightedGraph> graph_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw io_error(where + ": graph must be an object");
  const int n = require(j, "vertices", where).get<int>();
  std::vector<WeightedGraph::Edge> edges;
  for (const auto& e : require(j, "edges", where)) {
    const auto values = as_doubles(e, where + ".edges");
    if (values.size() != 3) throw io_error(where + ": edges are [i, j, w] triples");
    edges.push_back({static_cast<int>(values[0]), static_cast<int>(values[1]), values[2]});
  }
  std::optional<std::vector<int>> partition;
  if (j.contains("partition")) partition = j["partition"].get<std::vector<int>>();
  try {
    return std::make_shared<const WeightedGraph>(n, std::move(edges), std::move(partition));
  } catch (const graph_error& e) {
    throw io_error(where + ": " + e.what());
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Space load_tree_space(const std::filesystem::path& file) {
  const json j = load_json(file);
  const int n = require(j, "vertices", file.string()).get<int>();
  std::vector<TreeStructure::Edge> edges;
  for (const auto& e : require(j, "edges", file.string())) {
    const auto values = as_doubles(e, file.string() + ".edges");
    if (values.size() != 3) throw io_error(file.string() + ": edges are [u, v, length] triples");
    edges.push_back({static_cast<int>(values[0]), static_cast<int>(values[1]), values[2]});
  }
  try {
    TreeStructure tree(n, std::move(edges));
    tree.source_path = file.string();
    return Space::tree(std::move(tree));
  } catch (const graph_error& e) {
    throw io_error(file.string() + ": " + e.what());
  }
}

Space parse_space_descriptor(const std::string& descriptor,
                             const std::filesystem::path& base_dir) {
  const auto colon = descriptor.find(':');
  const std::string head = descriptor.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  auto dim = [&]() -> int {
    int d = 0;
    const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), d);
    if (ec != std::errc{} || ptr != tail.data() + tail.size() || d < 1)
      throw io_error("space descriptor \"" + descriptor + "\": bad dimension \"" + tail + "\"");
    return d;
  };
  if (head == "euclidean") return Space::euclidean(dim());
  if (head == "sphere") return Space::sphere(dim());
  if (head == "hyperbolic") return Space::hyperbolic(dim());
  if (head == "circle") {
    if (!tail.empty()) throw io_error("space descriptor \"circle\" takes no parameter");
    return Space::circle();
  }
  if (head == "tree") {
    if (tail.empty()) throw io_error("tree descriptor needs a file path");
    std::filesystem::path p(tail);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return load_tree_space(p);
  }
  throw io_error("unknown space descriptor \"" + descriptor + "\"");
}

NetSpec load_net_spec(const std::filesystem::path& file) {
  const json j = load_json(file);
  const std::string where = file.string();
  NetSpec spec{.space_descriptor = require(j, "space", where).get<std::string>(),
               .space = Space::euclidean(1),
               .graph = nullptr,
               .pins = {},
               .init = InterpolatePinsInit{},
               .refinement = std::nullopt};
  spec.space = parse_space_descriptor(spec.space_descriptor, file.parent_path());
  spec.graph = graph_from_json(require(j, "graph", where), where + ".graph");

  if (j.contains("pins")) {
    const json& pins = j["pins"];
    if (!pins.is_object()) throw io_error(where + ": pins must map vertex indices to points");
    for (const auto& [key, value] : pins.items()) {
      int vertex = 0;
      const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), vertex);
      if (ec != std::errc{} || ptr != key.data() + key.size())
        throw io_error(where + ": pin key \"" + key + "\" is not a vertex index");
      if (vertex < 0 || vertex >= spec.graph->vertex_count())
        throw io_error(where + ": pinned vertex " + key + " out of range");
      spec.pins.emplace(vertex, point_from_json(spec.space, value, where + ".pins." + key));
    }
  }

  const json& init = require(j, "init", where);
  if (init.is_string()) {
    const std::string s = init.get<std::string>();
    if (s == "interpolate-pins") {
      spec.init = InterpolatePinsInit{};
    } else if (s.rfind("random", 0) == 0) {
      RandomInit r;
      if (s.size() > 6) {
        if (s[6] != ':') throw io_error(where + ": bad init clause \"" + s + "\"");
        const auto seed_text = s.substr(7);
        std::uint64_t seed = 0;
        const auto [ptr, ec] =
            std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
        if (ec != std::errc{} || ptr != seed_text.data() + seed_text.size())
          throw io_error(where + ": bad random seed \"" + seed_text + "\"");
        r.seed = seed;
      }
      spec.init = r;
    } else {
      throw io_error(where + ": init must be an array, \"interpolate-pins\", or \"random:<seed>\"");
    }
  } else if (init.is_array()) {
    std::vector<Point> images;
    images.reserve(init.size());
    for (std::size_t i = 0; i < init.size(); ++i)
      images.push_back(
          point_from_json(spec.space, init[i], where + ".init[" + std::to_string(i) + "]"));
    if (static_cast<int>(images.size()) != spec.graph->vertex_count())
      throw io_error(where + ": init must list one point per vertex");
    spec.init = std::move(images);
  } else {
    throw io_error(where + ": init must be an array, \"interpolate-pins\", or \"random:<seed>\"");
  }

  if (j.contains("refinement")) {
    const json& r = j["refinement"];
    RefinementRecord record;
    record.parent_vertex_count = require(r, "parent_vertices", where + ".refinement").get<int>();
    const json& pe = require(r, "parent_edge_of", where + ".refinement");
    record.parent_edge_of.resize(pe.size());
    for (const auto& [key, value] : pe.items()) {
      const int vertex = std::stoi(key);
      const std::size_t slot = static_cast<std::size_t>(vertex - record.parent_vertex_count);
      if (slot >= record.parent_edge_of.size())
        throw io_error(where + ": refinement record vertex " + key + " out of range");
      const auto pair = as_doubles(value, where + ".refinement");
      if (pair.size() != 2) throw io_error(where + ": parent edges are [i, j] pairs");
      record.parent_edge_of[slot] = {static_cast<int>(pair[0]), static_cast<int>(pair[1])};
    }
    spec.refinement = std::move(record);
  }
  return spec;
}

namespace {

json net_spec_to_json(const NetSpec& spec) {
  json j{{"space", spec.space_descriptor}, {"graph", graph_to_json(*spec.graph)}};
  json pins = json::object();
  for (const auto& [vertex, point] : spec.pins)
    pins[std::to_string(vertex)] = point_to_json(spec.space, point);
  j["pins"] = std::move(pins);
  if (std::holds_alternative<InterpolatePinsInit>(spec.init)) {
    j["init"] = "interpolate-pins";
  } else if (const auto* r = std::get_if<RandomInit>(&spec.init)) {
    j["init"] = "random:" + std::to_string(r->seed);
  } else {
    json init = json::array();
    for (const Point& p : std::get<std::vector<Point>>(spec.init))
      init.push_back(point_to_json(spec.space, p));
    j["init"] = std::move(init);
  }
  if (spec.refinement) {
    json pe = json::object();
    for (std::size_t k = 0; k < spec.refinement->parent_edge_of.size(); ++k) {
      const auto& [u, v] = spec.refinement->parent_edge_of[k];
      pe[std::to_string(spec.refinement->parent_vertex_count + static_cast<int>(k))] =
          json::array({u, v});
    }
    j["refinement"] = json{{"parent_vertices", spec.refinement->parent_vertex_count},
                           {"parent_edge_of", std::move(pe)}};
  }
  return j;
}

}  // namespace

void save_net_spec(const NetSpec& spec, const std::filesystem::path& file) {
  atomic_write(file, net_spec_to_json(spec).dump(2) + "\n");
}

NetMap instantiate(const NetSpec& spec) {
  std::vector<int> pins;
  pins.reserve(spec.pins.size());
  for (const auto& [vertex, point] : spec.pins) pins.push_back(vertex);

  std::vector<Point> images;
  if (const auto* given = std::get_if<std::vector<Point>>(&spec.init)) {
    images = *given;
    for (const auto& [vertex, point] : spec.pins) images[vertex] = point;
    return NetMap(spec.graph, spec.space, std::move(images), std::move(pins));
  }

  if (const auto* random = std::get_if<RandomInit>(&spec.init)) {
    Xorshift64Star rng(random->seed);
    images.reserve(spec.graph->vertex_count());
    for (int i = 0; i < spec.graph->vertex_count(); ++i)
      images.push_back(spec.space.random_point(rng));
    for (const auto& [vertex, point] : spec.pins) images[vertex] = point;
    return NetMap(spec.graph, spec.space, std::move(images), std::move(pins));
  }

  // interpolate-pins: walk the geodesic between the two pins, placing
  // each vertex by its hop-count ratio between them.
  if (spec.pins.size() != 2)
    throw domain_error("interpolate-pins initialization needs exactly two pins, got " +
                       std::to_string(spec.pins.size()));
  const auto first = spec.pins.begin();
  const auto second = std::next(first);
  auto hops_from = [&](int source) {
    std::vector<int> hops(spec.graph->vertex_count(), -1);
    hops[source] = 0;
    std::deque<int> queue{source};
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      for (const auto& [b, w] : spec.graph->neighbors(a))
        if (hops[b] == -1) {
          hops[b] = hops[a] + 1;
          queue.push_back(b);
        }
    }
    return hops;
  };
  const auto da = hops_from(first->first);
  const auto db = hops_from(second->first);
  images.reserve(spec.graph->vertex_count());
  for (int i = 0; i < spec.graph->vertex_count(); ++i) {
    if (da[i] < 0 || db[i] < 0)
      throw domain_error("interpolate-pins: vertex " + std::to_string(i) +
                         " is not connected to both pins");
    const double t = da[i] + db[i] == 0 ? 0.0
                                        : static_cast<double>(da[i]) / (da[i] + db[i]);
    images.push_back(spec.space.interpolate(first->second, second->second, t));
  }
  for (const auto& [vertex, point] : spec.pins) images[vertex] = point;
  return NetMap(spec.graph, spec.space, std::move(images), std::move(pins));
}

NetSpec net_spec_from_map(const NetMap& f, std::string space_descriptor,
                          std::optional<RefinementRecord> refinement) {
  NetSpec spec{.space_descriptor = std::move(space_descriptor),
               .space = f.space(),
               .graph = f.graph_ptr(),
               .pins = {},
               .init = f.images(),
               .refinement = std::move(refinement)};
  for (int i : f.pins()) spec.pins.emplace(i, f.image(i));
  return spec;
}

void save_report(const RelaxationReport& report, const std::string& space_descriptor,
                 const std::filesystem::path& file) {
  const NetMap& f = report.final_map;
  json final_images = json::array();
  for (const Point& p : f.images()) final_images.push_back(point_to_json(f.space(), p));
  json pins = json::object();
  for (int i : f.pins()) pins[std::to_string(i)] = point_to_json(f.space(), f.image(i));
  json j{{"energy_trace", report.energy_trace},
         {"residual", report.final_residual},
         {"sweeps", report.sweeps},
         {"terminated", to_string(report.termination)},
         {"final", std::move(final_images)},
         {"space", space_descriptor},
         {"graph", graph_to_json(f.graph())},
         {"pins", std::move(pins)}};
  atomic_write(file, j.dump(2) + "\n");
}

NetMap load_map_for_check(const std::filesystem::path& file) {
  const json j = load_json(file);
  const std::string where = file.string();
  if (j.contains("final")) {
    // Report file: re-assemble the final map from embedded provenance.
    const Space space =
        parse_space_descriptor(require(j, "space", where).get<std::string>(), file.parent_path());
    const auto graph = graph_from_json(require(j, "graph", where), where + ".graph");
    const json& final_images = j["final"];
    if (static_cast<int>(final_images.size()) != graph->vertex_count())
      throw io_error(where + ": final image list does not match the graph");
    std::vector<Point> images;
    images.reserve(final_images.size());
    for (std::size_t i = 0; i < final_images.size(); ++i)
      images.push_back(
          point_from_json(space, final_images[i], where + ".final[" + std::to_string(i) + "]"));
    std::vector<int> pins;
    if (j.contains("pins"))
      for (const auto& [key, value] : j["pins"].items()) pins.push_back(std::stoi(key));
    return NetMap(graph, space, std::move(images), std::move(pins));
  }
  return instantiate(load_net_spec(file));
}

void write_trace_csv(const RelaxationReport& report, const std::filesystem::path& file) {
  std::ostringstream out;
  out << "sweep,energy,residual\n";
  for (int sweep = 1; sweep <= report.sweeps; ++sweep) {
    const std::size_t half = static_cast<std::size_t>(2 * sweep);
    if (half >= report.energy_trace.size() || half > report.residual_trace.size()) break;
    const double e = report.energy_trace[half];
    const double r = std::max(report.residual_trace[half - 2], report.residual_trace[half - 1]);
    out << sweep << ',' << format_double(e) << ',' << format_double(r) << '\n';
  }
  atomic_write(file, out.str());
}

void write_polyline_csv(const NetMap& f, const std::filesystem::path& file) {
  std::ostringstream out;
  for (const Point& p : f.images()) {
    if (f.space().kind() == SpaceKind::Tree) {
      const TreePoint t = f.space().canonical(p).tree();
      out << t.edge << ',' << format_double(t.offset) << '\n';
    } else {
      const auto& c = p.coords();
      for (std::size_t i = 0; i < c.size(); ++i)
        out << (i ? "," : "") << format_double(c[i]);
      out << '\n';
    }
  }
  atomic_write(file, out.str());
}

void atomic_write(const std::filesystem::path& file, const std::string& content) {
  const auto dir = file.has_parent_path() ? file.parent_path() : std::filesystem::path(".");
  std::filesystem::path tmp = dir / (file.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw io_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw io_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw io_error("cannot move " + tmp.string() + " to " + file.string() + ": " +
                         ec.message());
}

Point parse_point_text(const Space& space, const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    const std::string token =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    double v = 0.0;
    const auto begin = token.data();
    const auto end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
      throw io_error("bad point component \"" + token + "\" in \"" + text + "\"");
    values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  Point p;
  if (space.kind() == SpaceKind::Tree) {
    if (values.size() != 2)
      throw io_error("tree points are written edge,offset; got \"" + text + "\"");
    p = Point::on_edge(static_cast<int>(values[0]), values[1]);
  } else if (space.kind() == SpaceKind::Circle) {
    if (values.size() != 1) throw io_error("circle points are single angles; got \"" + text + "\"");
    p = Point::from_angle(values[0]);
  } else {
    p = Point::from_coords(values);
  }
  try {
    space.validate_point(p);
  } catch (const invalid_point_error& e) {
    throw io_error(std::string("point \"") + text + "\": " + e.what());
  }
  return p;
}

}  // namespace hnet
