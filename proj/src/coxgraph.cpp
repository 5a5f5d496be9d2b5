#include "coxpart/coxgraph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>

namespace coxpart {

Label Label::parse(std::string_view text) {
  if (text == "inf" || text == "∞" || text == "infinity") return infinity();
  std::uint32_t m = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), m);
  if (ec != std::errc() || ptr != text.data() + text.size() || m == 0)
    throw InvalidInput("bad Coxeter label '" + std::string(text) + "'");
  return Label(m);
}

CoxeterGraph::CoxeterGraph(std::vector<std::string> vertices, const std::vector<Edge>& edges) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw InvalidInput("duplicate vertex identifier");
  if (vertices.size() > static_cast<std::size_t>(kMaxVertices))
    throw InvalidInput("graph has more than " + std::to_string(kMaxVertices) + " vertices");
  for (const auto& v : vertices)
    if (v.empty()) throw InvalidInput("empty vertex identifier");
  names_ = std::move(vertices);
  const int n = rank();
  labels_.assign(static_cast<std::size_t>(n * n), Label(2));
  for (int i = 0; i < n; ++i) labels_[static_cast<std::size_t>(i * n + i)] = Label(1);

  std::vector<bool> seen(labels_.size(), false);
  for (const auto& e : edges) {
    int a = index_of(e.a);
    int b = index_of(e.b);
    if (a == b) throw InvalidInput("loop edge at vertex '" + e.a + "'");
    if (e.m.is_finite() && e.m.value() == 1)
      throw InvalidInput("label 1 between distinct vertices '" + e.a + "' and '" + e.b + "'");
    auto ab = static_cast<std::size_t>(a * n + b);
    auto ba = static_cast<std::size_t>(b * n + a);
    if (seen[ab] && !(labels_[ab] == e.m))
      throw InvalidInput("conflicting labels for pair '" + e.a + "', '" + e.b + "'");
    seen[ab] = seen[ba] = true;
    labels_[ab] = labels_[ba] = e.m;
  }
}

std::optional<int> CoxeterGraph::find(std::string_view id) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), id);
  if (it == names_.end() || *it != id) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

int CoxeterGraph::index_of(std::string_view id) const {
  auto i = find(id);
  if (!i) throw InvalidInput("unknown vertex '" + std::string(id) + "'");
  return *i;
}

VertexSet CoxeterGraph::subset(std::span<const std::string> ids) const {
  VertexSet s;
  for (const auto& id : ids) s.insert(index_of(id));
  return s;
}

std::vector<std::string> CoxeterGraph::names_of(VertexSet s) const {
  std::vector<std::string> out;
  s.for_each([&](int i) { out.push_back(name(i)); });
  return out;
}

VertexSet CoxeterGraph::neighbours(int i) const {
  VertexSet s;
  for (int j = 0; j < rank(); ++j)
    if (j != i && label(i, j).is_edge()) s.insert(j);
  return s;
}

std::vector<CoxeterGraph::Edge> CoxeterGraph::edges() const {
  std::vector<Edge> out;
  for (int i = 0; i < rank(); ++i)
    for (int j = i + 1; j < rank(); ++j)
      if (!(label(i, j) == Label(2))) out.push_back({name(i), name(j), label(i, j)});
  return out;
}

bool CoxeterGraph::has_infinite_label() const {
  return std::any_of(labels_.begin(), labels_.end(), [](Label l) { return l.is_infinite(); });
}

CoxeterGraph restrict(const CoxeterGraph& g, VertexSet J) {
  if (!J.subset_of(g.all())) throw InvalidInput("restrict: subset contains unknown vertices");
  std::vector<CoxeterGraph::Edge> edges;
  auto idx = J.indices();
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      Label l = g.label(idx[a], idx[b]);
      if (!(l == Label(2))) edges.push_back({g.name(idx[a]), g.name(idx[b]), l});
    }
  return CoxeterGraph(g.names_of(J), edges);
}

std::vector<VertexSet> components(const CoxeterGraph& g) { return components(g, g.all()); }

std::vector<VertexSet> components(const CoxeterGraph& g, VertexSet J) {
  std::vector<VertexSet> out;
  VertexSet left = J;
  while (!left.empty()) {
    VertexSet comp = VertexSet::singleton(left.first());
    VertexSet frontier = comp;
    while (!frontier.empty()) {
      VertexSet next;
      frontier.for_each([&](int v) { next |= g.neighbours(v) & J; });
      frontier = next - comp;
      comp |= next;
    }
    out.push_back(comp);
    left = left - comp;
  }
  return out;
}

bool commute_blocks(const CoxeterGraph& g, VertexSet J, VertexSet K) {
  bool ok = true;
  J.for_each([&](int j) {
    K.for_each([&](int k) {
      if (j != k && !(g.label(j, k) == Label(2))) ok = false;
    });
  });
  return ok;
}

bool is_direct_product(const CoxeterGraph& g, VertexSet J, VertexSet K) {
  if (J.intersects(K) || (J | K) != g.all()) throw InvalidInput("is_direct_product: blocks do not partition the vertex set");
  return commute_blocks(g, J, K);
}

// ---------------------------------------------------------------------------
// Spherical recognition

std::string SphericalType::name() const {
  switch (family) {
    case Family::A: return "A" + std::to_string(rank);
    case Family::B: return "B" + std::to_string(rank);
    case Family::D: return "D" + std::to_string(rank);
    case Family::E: return "E" + std::to_string(rank);
    case Family::F: return "F4";
    case Family::H: return "H" + std::to_string(rank);
    case Family::I: return "I2(" + std::to_string(m) + ")";
  }
  return "?";
}

namespace {

using Family = SphericalType::Family;

SphericalType dihedral(std::uint32_t m) {
  if (m == 3) return {Family::A, 2, 0};
  if (m == 4) return {Family::B, 2, 0};
  return {Family::I, 2, static_cast<int>(m)};
}

// Classifies a connected graph given on the vertex set comp of g.
std::optional<SphericalType> classify_component(const CoxeterGraph& g, VertexSet comp) {
  const int k = comp.size();
  auto idx = comp.indices();
  if (k == 1) return SphericalType{Family::A, 1, 0};
  if (k == 2) {
    Label l = g.label(idx[0], idx[1]);
    if (l.is_infinite()) return std::nullopt;
    return dihedral(l.value());
  }
  int edge_count = 0;
  std::map<int, int> degree;
  for (int a : idx) {
    degree[a] = (g.neighbours(a) & comp).size();
    for (int b : idx)
      if (a < b && g.label(a, b).is_edge()) {
        if (g.label(a, b).is_infinite() || g.label(a, b).value() > 5) return std::nullopt;
        ++edge_count;
      }
  }
  if (edge_count != k - 1) return std::nullopt;  // connected, so a tree iff k-1 edges

  std::vector<int> branch;
  std::vector<int> ends;
  for (auto [v, d] : degree) {
    if (d > 3) return std::nullopt;
    if (d == 3) branch.push_back(v);
    if (d == 1) ends.push_back(v);
  }
  if (branch.size() > 1) return std::nullopt;

  if (branch.size() == 1) {
    for (int a : idx)
      for (int b : idx)
        if (a < b && g.label(a, b).is_edge() && g.label(a, b).value() != 3) return std::nullopt;
    int c = branch[0];
    std::vector<int> arms;
    (g.neighbours(c) & comp).for_each([&](int start) {
      int len = 1, prev = c, cur = start;
      for (;;) {
        VertexSet nb = g.neighbours(cur) & comp;
        nb.erase(prev);
        if (nb.empty()) break;
        prev = cur;
        cur = nb.first();
        ++len;
      }
      arms.push_back(len);
    });
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return SphericalType{Family::D, k, 0};
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return SphericalType{Family::E, k, 0};
    return std::nullopt;
  }

  // A path: walk it from one end and record the labels in order.
  std::vector<std::uint32_t> path_labels;
  int prev = -1, cur = ends[0];
  for (int step = 0; step < k - 1; ++step) {
    VertexSet nb = g.neighbours(cur) & comp;
    if (prev >= 0) nb.erase(prev);
    int nxt = nb.first();
    path_labels.push_back(g.label(cur, nxt).value());
    prev = cur;
    cur = nxt;
  }
  std::vector<std::size_t> heavy;
  for (std::size_t e = 0; e < path_labels.size(); ++e)
    if (path_labels[e] >= 4) heavy.push_back(e);
  if (heavy.empty()) return SphericalType{Family::A, k, 0};
  if (heavy.size() > 1) return std::nullopt;
  std::size_t e = heavy[0];
  bool at_end = e == 0 || e + 1 == path_labels.size();
  if (path_labels[e] == 4) {
    if (at_end) return SphericalType{Family::B, k, 0};
    if (k == 4) return SphericalType{Family::F, 4, 0};
    return std::nullopt;
  }
  if (path_labels[e] == 5 && at_end && (k == 3 || k == 4)) return SphericalType{Family::H, k, 0};
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<SphericalType>> classify_spherical(const CoxeterGraph& g) {
  std::vector<SphericalType> out;
  for (VertexSet c : components(g)) {
    auto t = classify_component(g, c);
    if (!t) return std::nullopt;
    out.push_back(*t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_spherical(const CoxeterGraph& g) {
  for (VertexSet c : components(g))
    if (!classify_component(g, c)) return false;
  return true;
}

bool is_spherical(const CoxeterGraph& g, VertexSet J) {
  for (VertexSet c : components(g, J))
    if (!classify_component(g, c)) return false;
  return true;
}

std::string type_name(const std::vector<SphericalType>& types) {
  if (types.empty()) return "empty";
  std::string out;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i) out += "x";
    out += types[i].name();
  }
  return out;
}

SphericalType parse_spherical_type(std::string_view text) {
  auto bad = [&] { return InvalidInput("unknown spherical type '" + std::string(text) + "'"); };
  if (text.size() < 2) throw bad();
  auto number = [&](std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw bad();
    return v;
  };
  if (text.starts_with("I2(") && text.ends_with(")")) {
    int m = number(text.substr(3, text.size() - 4));
    if (m < 3) throw bad();
    return dihedral(static_cast<std::uint32_t>(m));
  }
  int r = number(text.substr(1));
  switch (text[0]) {
    case 'A': if (r >= 1) return {Family::A, r, 0}; break;
    case 'B': case 'C': if (r >= 2) return {Family::B, r, 0}; break;
    case 'D': if (r >= 4) return {Family::D, r, 0}; break;
    case 'E': if (r >= 6 && r <= 8) return {Family::E, r, 0}; break;
    case 'F': if (r == 4) return {Family::F, 4, 0}; break;
    case 'G': if (r == 2) return {Family::I, 2, 6}; break;
    case 'H': if (r == 3 || r == 4) return {Family::H, r, 0}; break;
    default: break;
  }
  throw bad();
}

int coxeter_number(const SphericalType& t) {
  switch (t.family) {
    case Family::A: return t.rank + 1;
    case Family::B: return 2 * t.rank;
    case Family::D: return 2 * t.rank - 2;
    case Family::E: return t.rank == 6 ? 12 : t.rank == 7 ? 18 : 30;
    case Family::F: return 12;
    case Family::H: return t.rank == 3 ? 10 : 30;
    case Family::I: return t.m;
  }
  return 0;
}

int coxeter_number(const std::vector<SphericalType>& t) {
  if (t.size() != 1) throw InvalidInput("Coxeter number of a reducible type");
  return coxeter_number(t[0]);
}

std::array<VertexSet, 2> bipartite_partition(const CoxeterGraph& g) {
  if (g.rank() < 2) throw InvalidInput("bipartite partition needs at least two vertices");
  if (components(g).size() != 1) throw InvalidInput("bipartite partition needs a connected graph");
  std::vector<int> colour(static_cast<std::size_t>(g.rank()), -1);
  colour[0] = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    bool clash = false;
    g.neighbours(v).for_each([&](int w) {
      auto& c = colour[static_cast<std::size_t>(w)];
      if (c < 0) {
        c = 1 - colour[static_cast<std::size_t>(v)];
        stack.push_back(w);
      } else if (c == colour[static_cast<std::size_t>(v)]) {
        clash = true;
      }
    });
    if (clash) throw InvalidInput("edge graph is not bipartite");
  }
  std::array<VertexSet, 2> out;
  for (int v = 0; v < g.rank(); ++v) out[static_cast<std::size_t>(colour[static_cast<std::size_t>(v)])].insert(v);
  return out;
}

// ---------------------------------------------------------------------------
// Automorphisms and isomorphisms by backtracking

namespace {

// Invariant used to prune: colour plus the sorted multiset of incident labels.
std::vector<std::pair<int, std::vector<std::uint32_t>>> vertex_signatures(const CoxeterGraph& g,
                                                                         std::span<const int> colours) {
  std::vector<std::pair<int, std::vector<std::uint32_t>>> sig;
  for (int i = 0; i < g.rank(); ++i) {
    std::vector<std::uint32_t> ls;
    for (int j = 0; j < g.rank(); ++j)
      if (j != i) {
        Label l = g.label(i, j);
        ls.push_back(l.is_infinite() ? 0 : l.value());
      }
    std::sort(ls.begin(), ls.end());
    int c = colours.empty() ? 0 : colours[static_cast<std::size_t>(i)];
    sig.emplace_back(c, std::move(ls));
  }
  return sig;
}

class Matcher {
 public:
  Matcher(const CoxeterGraph& g1, const CoxeterGraph& g2, std::span<const int> c1, std::span<const int> c2)
      : g1_(g1), g2_(g2), sig1_(vertex_signatures(g1, c1)), sig2_(vertex_signatures(g2, c2)) {
    const int n = g1.rank();
    map_.assign(static_cast<std::size_t>(n), -1);
    used_.assign(static_cast<std::size_t>(n), false);
    // Visit vertices in BFS order so that each new vertex is constrained by earlier ones.
    std::vector<bool> placed(static_cast<std::size_t>(n), false);
    for (int s = 0; s < n; ++s) {
      if (placed[static_cast<std::size_t>(s)]) continue;
      std::size_t head = order_.size();
      order_.push_back(s);
      placed[static_cast<std::size_t>(s)] = true;
      while (head < order_.size()) {
        int v = order_[head++];
        g1.neighbours(v).for_each([&](int w) {
          if (!placed[static_cast<std::size_t>(w)]) {
            placed[static_cast<std::size_t>(w)] = true;
            order_.push_back(w);
          }
        });
      }
    }
  }

  // Calls visit(map) for every isomorphism; stops when visit returns false.
  template <typename Visit>
  void run(Visit&& visit) {
    if (g1_.rank() != g2_.rank()) return;
    stop_ = false;
    search(0, visit);
  }

 private:
  template <typename Visit>
  void search(std::size_t depth, Visit& visit) {
    if (stop_) return;
    if (depth == order_.size()) {
      if (!visit(map_)) stop_ = true;
      return;
    }
    int v = order_[depth];
    for (int w = 0; w < g2_.rank() && !stop_; ++w) {
      if (used_[static_cast<std::size_t>(w)] || sig1_[static_cast<std::size_t>(v)] != sig2_[static_cast<std::size_t>(w)])
        continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        int u = order_[d];
        ok = g1_.label(v, u) == g2_.label(w, map_[static_cast<std::size_t>(u)]);
      }
      if (!ok) continue;
      map_[static_cast<std::size_t>(v)] = w;
      used_[static_cast<std::size_t>(w)] = true;
      search(depth + 1, visit);
      used_[static_cast<std::size_t>(w)] = false;
      map_[static_cast<std::size_t>(v)] = -1;
    }
  }

  const CoxeterGraph& g1_;
  const CoxeterGraph& g2_;
  std::vector<std::pair<int, std::vector<std::uint32_t>>> sig1_, sig2_;
  std::vector<int> order_;
  std::vector<int> map_;
  std::vector<bool> used_;
  bool stop_ = false;
};

VertexPermutation compose(const VertexPermutation& f, const VertexPermutation& g) {
  VertexPermutation h(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) h[i] = f[static_cast<std::size_t>(g[i])];
  return h;
}

}  // namespace

AutomorphismGroup automorphisms(const CoxeterGraph& g, std::span<const int> colours) {
  if (g.rank() > kMaxAutomorphismVertices)
    throw InvalidInput("automorphism search limited to " + std::to_string(kMaxAutomorphismVertices) + " vertices");
  if (!colours.empty() && colours.size() != static_cast<std::size_t>(g.rank()))
    throw InvalidInput("colouring size does not match the graph");
  AutomorphismGroup out;
  Matcher m(g, g, colours, colours);
  m.run([&](const std::vector<int>& f) {
    out.elements.push_back(f);
    if (out.elements.size() > kMaxAutomorphismGroupOrder)
      throw InvalidInput("automorphism group exceeds " + std::to_string(kMaxAutomorphismGroupOrder) + " elements");
    return true;
  });
  std::sort(out.elements.begin(), out.elements.end());

  // Greedy generating set: add any element not yet in the generated subgroup.
  std::set<VertexPermutation> generated;
  VertexPermutation id(static_cast<std::size_t>(g.rank()));
  std::iota(id.begin(), id.end(), 0);
  generated.insert(id);
  for (const auto& f : out.elements) {
    if (generated.count(f)) continue;
    out.generators.push_back(f);
    std::vector<VertexPermutation> queue(generated.begin(), generated.end());
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (const auto& s : out.generators) {
        auto p = compose(queue[h], s);
        if (generated.insert(p).second) queue.push_back(std::move(p));
      }
  }
  return out;
}

bool is_automorphism(const CoxeterGraph& g, const VertexPermutation& f) {
  const int n = g.rank();
  if (f.size() != static_cast<std::size_t>(n)) return false;
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (int v : f) {
    if (v < 0 || v >= n || hit[static_cast<std::size_t>(v)]) return false;
    hit[static_cast<std::size_t>(v)] = true;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(g.label(i, j) == g.label(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]))) return false;
  return true;
}

std::optional<VertexPermutation> find_isomorphism(const CoxeterGraph& g1, const CoxeterGraph& g2,
                                                  std::span<const int> colours1, std::span<const int> colours2) {
  if (g1.rank() != g2.rank()) return std::nullopt;
  if (colours1.empty() != colours2.empty()) throw InvalidInput("colourings must be given for both graphs");
  std::optional<VertexPermutation> found;
  Matcher m(g1, g2, colours1, colours2);
  m.run([&](const std::vector<int>& f) {
    found = f;
    return false;
  });
  return found;
}

std::vector<VertexSet> orbits(int rank, std::span<const VertexPermutation> gens) {
  std::vector<int> parent(static_cast<std::size_t>(rank));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& f : gens) {
    if (f.size() != static_cast<std::size_t>(rank)) throw InvalidInput("permutation size does not match the graph");
    for (int i = 0; i < rank; ++i) {
      int a = root(i), b = root(f[static_cast<std::size_t>(i)]);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::map<int, VertexSet> by_root;
  for (int i = 0; i < rank; ++i) by_root[root(i)].insert(i);
  std::vector<VertexSet> out;
  for (auto& [r, s] : by_root) out.push_back(s);
  std::sort(out.begin(), out.end(), [](VertexSet a, VertexSet b) { return a.first() < b.first(); });
  return out;
}

}  // namespace coxpart
