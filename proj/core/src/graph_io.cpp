#include <charconv>
#include <fstream>
#include <sstream>

#include "ramlab/builders.hpp"
#include "ramlab/error.hpp"

namespace ramlab::build {

namespace {

// Parses exactly two nonnegative integers separated by single spaces.
bool parse_pair(std::string_view line, std::size_t& a, std::size_t& b) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  auto space = line.find(' ');
  if (space == std::string_view::npos) return false;
  auto first = line.substr(0, space);
  auto second = line.substr(space + 1);
  auto parse = [](std::string_view s, std::size_t& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
  };
  return parse(first, a) && parse(second, b);
}

}  // namespace

std::string to_edge_list(const RegularGraph& graph) {
  std::string out = std::to_string(graph.n()) + " " + std::to_string(graph.d()) + "\n";
  for (auto [u, v] : graph.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

RegularGraph parse_edge_list(const std::string& text, Provenance provenance) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 1;
  std::size_t n = 0, d = 0;
  if (!std::getline(in, line) || !parse_pair(line, n, d)) {
    throw ParseError(1, "expected header \"n d\"");
  }
  if (n == 0) throw ParseError(1, "vertex count must be positive");
  std::vector<Edge> edges;
  edges.reserve(n * d / 2);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::size_t u = 0, v = 0;
    if (!parse_pair(line, u, v)) throw ParseError(line_no, "expected \"u v\"");
    if (u >= n || v >= n) throw ParseError(line_no, "vertex outside [0, n)");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (edges.size() * 2 != n * d) {
    throw Error(Errc::InvariantViolation, "edge count " + std::to_string(edges.size()) +
                                              " does not match n*d/2");
  }
  RegularGraph g = RegularGraph::from_edges(n, edges, std::move(provenance));
  if (static_cast<std::size_t>(g.d()) != d) {
    throw Error(Errc::InvariantViolation, "header degree disagrees with edge list");
  }
  return g;
}

std::filesystem::path provenance_path(const std::filesystem::path& graph_path) {
  auto p = graph_path;
  p += ".json";
  return p;
}

void save_graph(const RegularGraph& graph, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << to_edge_list(graph);
  std::ofstream side(provenance_path(path), std::ios::binary);
  if (!side) throw Error(Errc::IoError, "cannot write " + provenance_path(path).string());
  side << graph.provenance().to_json().dump(2) << '\n';
  if (!out || !side) throw Error(Errc::IoError, "write failed for " + path.string());
}

RegularGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();

  Provenance prov;
  prov.family = "file";
  prov.params["path"] = path.filename().string();
  if (std::ifstream side(provenance_path(path)); side) {
    try {
      prov = Provenance::from_json(nlohmann::ordered_json::parse(side));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::ParseError, "bad provenance sidecar: " + std::string(e.what()));
    }
  }
  RegularGraph g = parse_edge_list(buf.str(), prov);
  const auto& params = g.provenance().params;
  if (params.contains("bipartite") && params["bipartite"].is_boolean() &&
      params["bipartite"].get<bool>() != g.bipartite()) {
    throw Error(Errc::InvariantViolation, "recomputed bipartiteness disagrees with provenance");
  }
  return g;
}

}  // namespace ramlab::build
