#include "coxpart/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace coxpart {

namespace {

using Edges = std::vector<CoxeterGraph::Edge>;

std::vector<std::string> numbered(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back(std::to_string(i));
  return v;
}

void add(Edges& e, int a, int b, std::uint32_t m = 3) { e.push_back({std::to_string(a), std::to_string(b), Label(m)}); }

CoxeterGraph path_graph(int n, const std::vector<std::pair<int, std::uint32_t>>& heavy = {}) {
  Edges e;
  for (int i = 1; i < n; ++i) add(e, i, i + 1);
  for (auto [pos, m] : heavy) e[static_cast<std::size_t>(pos - 1)].m = Label(m);
  return CoxeterGraph(numbered(n), e);
}

int parse_rank(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return -1;
  return v;
}

}  // namespace

std::optional<CoxeterGraph> named_graph(std::string_view name) {
  if (name == "A3~" || name == "At3" || name == "affine-A3") {
    Edges e;
    add(e, 1, 2);
    add(e, 2, 3);
    add(e, 3, 4);
    add(e, 4, 1);
    return CoxeterGraph(numbered(4), e);
  }
  if (name.starts_with("I2(") && name.ends_with(")")) {
    auto inner = name.substr(3, name.size() - 4);
    Label m = Label::parse(inner);
    if (m.is_finite() && m.value() < 2) return std::nullopt;
    if (m.is_finite() && m.value() == 2) return CoxeterGraph(numbered(2), {});
    return CoxeterGraph(numbered(2), {{"1", "2", m}});
  }
  if (name.size() < 2) return std::nullopt;
  int n = parse_rank(name.substr(1));
  if (n < 1 || n > kMaxVertices) return std::nullopt;
  switch (name[0]) {
    case 'A':
      return path_graph(n);
    case 'B':
      if (n < 2) return std::nullopt;
      return path_graph(n, {{n - 1, 4}});
    case 'D': {
      if (n < 4) return std::nullopt;
      Edges e;
      for (int i = 1; i < n - 2; ++i) add(e, i, i + 1);
      add(e, n - 2, n - 1);
      add(e, n - 2, n);
      return CoxeterGraph(numbered(n), e);
    }
    case 'E': {
      if (n < 6 || n > 8) return std::nullopt;
      Edges e;
      add(e, 1, 3);
      add(e, 2, 4);
      for (int i = 3; i < n; ++i) add(e, i, i + 1);
      return CoxeterGraph(numbered(n), e);
    }
    case 'F':
      if (n != 4) return std::nullopt;
      return path_graph(4, {{2, 4}});
    case 'H':
      if (n != 3 && n != 4) return std::nullopt;
      return path_graph(n, {{1, 5}});
    default:
      return std::nullopt;
  }
}

std::vector<std::string> named_graph_examples() {
  return {"A1", "A5", "B3", "D4", "E6", "E7", "E8", "F4", "H3", "H4", "I2(7)", "I2(inf)", "A3~"};
}

CoxeterGraph parse_graph_text(std::string_view text) {
  std::vector<std::string> vertices;
  Edges edges;
  std::vector<int> edge_lines;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& what) {
      return InvalidInput("line " + std::to_string(lineno) + ": " + what);
    };
    if (tok[0] == "vertex") {
      if (tok.size() != 2) throw fail("expected 'vertex <id>'");
      if (std::find(vertices.begin(), vertices.end(), tok[1]) != vertices.end())
        throw fail("duplicate vertex '" + tok[1] + "'");
      vertices.push_back(tok[1]);
    } else if (tok[0] == "edge") {
      if (tok.size() != 4) throw fail("expected 'edge <id> <id> <m|inf>'");
      Label m;
      try {
        m = Label::parse(tok[3]);
      } catch (const InvalidInput& e) {
        throw fail(e.what());
      }
      if (tok[1] == tok[2]) throw fail("edge from '" + tok[1] + "' to itself");
      if (m == Label(1)) throw fail("label 1 between distinct vertices");
      for (const auto& e : edges)
        if ((e.a == tok[1] && e.b == tok[2]) || (e.a == tok[2] && e.b == tok[1]))
          throw fail("duplicate edge '" + tok[1] + "' '" + tok[2] + "'");
      edge_lines.push_back(lineno);
      edges.push_back({tok[1], tok[2], m});
    } else {
      throw fail("unknown directive '" + tok[0] + "'");
    }
  }
  for (std::size_t k = 0; k < edges.size(); ++k)
    for (const auto& id : {edges[k].a, edges[k].b})
      if (std::find(vertices.begin(), vertices.end(), id) == vertices.end())
        throw InvalidInput("line " + std::to_string(edge_lines[k]) + ": unknown vertex '" + id + "'");
  try {
    return CoxeterGraph(vertices, edges);
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("graph: ") + e.what());
  }
}

std::string graph_to_text(const CoxeterGraph& g) {
  std::string out;
  for (const auto& v : g.vertices()) out += "vertex " + v + "\n";
  for (const auto& e : g.edges()) out += "edge " + e.a + " " + e.b + " " + e.m.to_string() + "\n";
  return out;
}

CoxeterGraph parse_graph_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("graph JSON: ") + e.what());
  }
  try {
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    Edges edges;
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) {
        const auto& m = e.at("m");
        Label l = m.is_string() ? Label::parse(m.get<std::string>()) : Label(m.get<std::uint32_t>());
        edges.push_back({e.at("i").get<std::string>(), e.at("j").get<std::string>(), l});
      }
    }
    return CoxeterGraph(vertices, edges);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("graph JSON: ") + e.what());
  }
}

std::string graph_to_json(const CoxeterGraph& g) {
  nlohmann::json j;
  j["vertices"] = g.vertices();
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    nlohmann::json m = e.m.is_infinite() ? nlohmann::json("inf") : nlohmann::json(e.m.value());
    j["edges"].push_back({{"i", e.a}, {"j", e.b}, {"m", m}});
  }
  return j.dump();
}

CoxeterGraph parse_graph(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_graph_json(text);
  return parse_graph_text(text);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

CoxeterGraph load_graph(const std::string& spec) {
  if (auto g = named_graph(spec)) return *g;
  return parse_graph(read_file(spec));
}

}  // namespace coxpart
