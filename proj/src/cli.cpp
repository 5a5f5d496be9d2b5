#include "coxpart/cli.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coxpart/graph_io.hpp"
#include "coxpart/morphisms.hpp"

namespace coxpart::cli {

using json = nlohmann::json;

namespace {

constexpr int kViolationsShown = 20;

json graph_json(const CoxeterGraph& g) { return json::parse(graph_to_json(g)); }
CoxeterGraph graph_of(const json& j) { return parse_graph_json(j.dump()); }

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Admissible: return kPass;
    case Outcome::NotAdmissible: return kFail;
    case Outcome::Unknown: return kUnknown;
  }
  return kUnknown;
}

json spherical_name(const CoxeterGraph& g) {
  auto t = classify_spherical(g);
  return t ? json(type_name(*t)) : json(nullptr);
}

json type_json(const PartitionType& t) {
  json entries = json::array();
  for (const auto& row : t.entries) {
    json r = json::array();
    for (const auto& e : row) r.push_back(e.to_string());
    entries.push_back(r);
  }
  json j{{"names", t.names}, {"entries", entries}, {"graph", nullptr}, {"spherical_type", nullptr}};
  if (t.resolved()) {
    CoxeterGraph g = t.graph();
    j["graph"] = graph_to_text(g);
    j["spherical_type"] = spherical_name(g);
  }
  return j;
}

json witness_json(const BlockPartition& p, const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return {{"first", p.name(w->first)}, {"second", p.name(w->second)}, {"n", w->n}, {"replayed", replay_witness(p, *w)}};
}

json certificate_json(const Certificate& c) {
  return {{"kind", to_string(c.kind)}, {"detail", c.detail}, {"generators", c.generators}};
}

json verdict_json(const BlockPartition& p, const AdmissibilityVerdict& v) {
  json pairs = json::array();
  for (const auto& pv : v.pairs)
    pairs.push_back({{"blocks", {p.name(pv.a), p.name(pv.b)}},
                     {"outcome", to_string(pv.outcome)},
                     {"order", pv.order.to_string()},
                     {"reason", pv.reason},
                     {"certificate", to_string(pv.certificate.kind)},
                     {"witness", witness_json(p, pv.witness)}});
  return {{"outcome", to_string(v.outcome)}, {"bound", v.bound},         {"type", type_json(v.type)},
          {"witness", witness_json(p, v.witness)}, {"certificate", certificate_json(v.certificate)},
          {"pairs", pairs}};
}

json lcm_json(const BlockPartition& p) {
  LcmVerdict l = is_lcm_partition(p);
  json pairs = json::array();
  for (const auto& c : l.pairs)
    pairs.push_back({{"blocks", {p.name(c.a), p.name(c.b)}},
                     {"condition", to_string(c.condition)},
                     {"n", c.n ? json(*c.n) : json("inf")},
                     {"reason", c.reason}});
  return {{"is_lcm", l.is_lcm}, {"pairs", pairs}};
}

std::vector<std::string> split_names(const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream in(t);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<VertexPermutation> generators_of(const CoxeterGraph& g, const json& gens) {
  if (gens.is_null()) return automorphisms(g).generators;
  std::vector<VertexPermutation> out;
  for (const auto& gen : gens) {
    auto images = gen.get<std::vector<std::string>>();
    if (static_cast<int>(images.size()) != g.rank())
      throw InvalidInput("generator must list one image per vertex, in vertex order");
    VertexPermutation f;
    for (const auto& id : images) f.push_back(g.index_of(id));
    if (!is_automorphism(g, f)) throw InvalidInput("generator is not a graph automorphism");
    out.push_back(f);
  }
  return out;
}

json names_of_perms(const CoxeterGraph& g, const std::vector<VertexPermutation>& gens) {
  json out = json::array();
  for (const auto& f : gens) {
    json row = json::array();
    for (int v : f) row.push_back(g.name(v));
    out.push_back(row);
  }
  return out;
}

std::pair<json, int> cmd_check_partition(const json& in) {
  const CoxeterGraph g = graph_of(in.at("graph"));
  const int bound = in.at("bound");
  if (!in.at("outer").is_null()) {
    BlockPartition outer = parse_partition(g, in.at("outer").get<std::string>());
    AdmissibilityVerdict ov = check_admissible(outer, bound);
    if (ov.outcome != Outcome::Admissible || !ov.type.resolved())
      throw InvalidInput("outer partition is not admissible with a resolved type");
    BlockPartition inner = parse_partition(ov.type.graph(), in.at("partition").get<std::string>());
    LiftResult lr = certify_by_lift(outer, inner, bound);
    json r{{"outer", verdict_json(outer, lr.outer)},
           {"verdict", verdict_json(inner, lr.inner)},
           {"lifted", {{"partition", partition_to_text(lr.lifted)}, {"verdict", verdict_json(lr.lifted, lr.lifted_verdict)}}},
           {"lcm_partition", lcm_json(inner)}};
    return {r, exit_for(lr.inner.outcome)};
  }
  BlockPartition p = parse_partition(g, in.at("partition").get<std::string>());
  AdmissibilityVerdict v = check_admissible(p, bound);
  json r{{"verdict", verdict_json(p, v)}, {"lcm_partition", lcm_json(p)}};
  return {r, exit_for(v.outcome)};
}

std::pair<json, int> cmd_type(const json& in) {
  const CoxeterGraph g = graph_of(in.at("graph"));
  BlockPartition p = parse_partition(g, in.at("partition").get<std::string>());
  PartitionType t = partition_type(p, in.at("bound"));
  return {{{"type", type_json(t)}}, t.resolved() ? kPass : kUnknown};
}

std::pair<json, int> cmd_classify(const json& in) {
  const CoxeterGraph g = graph_of(in.at("graph"));
  ClassificationReport rep = classify_2partitions(g, in.at("bound"));
  json cands = json::array();
  for (const auto& c : rep.candidates) {
    json order = c.verdict.outcome == Outcome::Unknown && c.stage != Candidate::Stage::Unknown ? json(nullptr)
                                                                                                 : json(c.verdict.order.to_string());
    if (c.stage == Candidate::Stage::CommutingVertex || c.stage == Candidate::Stage::LengthFilter) order = nullptr;
    cands.push_back({{"alpha", g.names_of(c.alpha)},
                     {"beta", g.names_of(c.beta)},
                     {"class_size", c.class_size},
                     {"bipartite", c.bipartite},
                     {"stage", to_string(c.stage)},
                     {"n", c.length_n ? json(*c.length_n) : json(nullptr)},
                     {"order", order},
                     {"witness", c.stage == Candidate::Stage::DirectCheck && c.verdict.witness
                                     ? json(c.verdict.witness->n)
                                     : json(nullptr)},
                     {"reason", c.reason}});
  }
  json counts;
  for (auto s : {Candidate::Stage::Admissible, Candidate::Stage::CommutingVertex, Candidate::Stage::LengthFilter,
                 Candidate::Stage::DirectCheck, Candidate::Stage::Unknown})
    counts[to_string(s)] = rep.count(s);
  json r{{"type", rep.type},
         {"longest_length", rep.longest_length},
         {"total_partitions", rep.total_partitions},
         {"classes", rep.classes},
         {"counts", counts},
         {"candidates", cands}};
  return {r, rep.count(Candidate::Stage::Unknown) > 0 ? kUnknown : kPass};
}

std::string burst_text(const BurstResult& b) {
  return "# input " + graph_json(b.input).dump() + "\n# n " + std::to_string(b.n) + "\n" + graph_to_text(b.output) +
         partition_to_text(b.partition);
}

std::pair<json, int> cmd_burst(const json& in) {
  const CoxeterGraph g = graph_of(in.at("graph"));
  const int n = in.at("n").is_null() ? burst_base(g) : in.at("n").get<int>();
  BurstResult b = burst(g, n);
  json r{{"n", n},
         {"base", burst_base(g)},
         {"output", graph_json(b.output)},
         {"output_type", spherical_name(b.output)},
         {"partition", partition_to_text(b.partition)},
         {"text", burst_text(b)}};
  return {r, kPass};
}

BurstResult parse_burst_text(const std::string& raw) {
  std::string text = raw;
  if (!text.empty() && text.find_first_not_of(" \t\r\n") != std::string::npos &&
      text[text.find_first_not_of(" \t\r\n")] == '{') {
    json j;
    try {
      j = json::parse(text);
      text = j.at("result").at("text").get<std::string>();
    } catch (const json::exception& e) {
      throw InvalidInput(std::string("burst report: ") + e.what());
    }
  }
  std::istringstream lines(text);
  std::string line, graph_text, part_text;
  std::optional<CoxeterGraph> input;
  int n = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("# input ", 0) == 0) {
      input = parse_graph_json(line.substr(8));
    } else if (line.rfind("# n ", 0) == 0) {
      n = std::stoi(line.substr(4));
    } else if (line.rfind("block", 0) == 0) {
      part_text += line + "\n";
      graph_text += "\n";
    } else {
      graph_text += line + "\n";
    }
  }
  if (!input) throw InvalidInput("burst text lacks the '# input' line");
  BurstResult b;
  b.input = *input;
  b.n = n;
  b.output = parse_graph_text(graph_text);
  BlockPartition p = parse_partition(b.output, part_text);
  std::vector<VertexSet> blocks;
  for (const auto& name : b.input.vertices()) blocks.push_back(p.block(p.index_of(name)));
  if (p.size() != b.input.rank()) throw InvalidInput("burst blocks do not match the input vertices");
  b.partition = BlockPartition(b.output, blocks, b.input.vertices());
  return b;
}

std::pair<json, int> cmd_verify_burst(const json& in) {
  BurstResult b = parse_burst_text(in.at("text").get<std::string>());
  AdmissibilityVerdict v = verify_burst(b, in.at("bound"));
  const bool matches = v.type.resolved() && find_isomorphism(v.type.graph(), b.input).has_value();
  json r{{"verdict", verdict_json(b.partition, v)},
         {"input_type", spherical_name(b.input)},
         {"output_type", spherical_name(b.output)},
         {"type_matches_input", matches}};
  int code = exit_for(v.outcome);
  if (code == kPass && !matches) code = kFail;
  return {r, code};
}

PosBraid braid_of(const std::shared_ptr<const CoxeterSystem>& sys, const json& word) {
  return PosBraid::from_names(sys, word.get<std::vector<std::string>>());
}

json braid_json(const PosBraid& x) {
  return {{"text", x.to_string()}, {"length", x.length()}, {"factors", x.factor_names()}};
}

std::pair<json, int> cmd_normal_form(const json& in) {
  auto sys = CoxeterSystem::get(graph_of(in.at("graph")));
  PosBraid x = braid_of(sys, in.at("word"));
  json right = json::array();
  for (const auto& s : right_normal_form(x)) right.push_back(s.reduced_word_names());
  json r{{"left_normal_form", braid_json(x)}, {"right_normal_form", right}};
  return {r, kPass};
}

Side side_of(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw InvalidInput("side must be 'left' or 'right'");
}

std::pair<json, int> cmd_lcm(const json& in) {
  auto sys = CoxeterSystem::get(graph_of(in.at("graph")));
  PosBraid x = braid_of(sys, in.at("x")), y = braid_of(sys, in.at("y"));
  auto l = lcm(x, y, side_of(in.at("side")));
  json r{{"x", braid_json(x)}, {"y", braid_json(y)}, {"found", l.has_value()}, {"lcm", l ? braid_json(*l) : json(nullptr)}};
  return {r, l ? kPass : kUnknown};
}

std::pair<json, int> cmd_gcd(const json& in) {
  auto sys = CoxeterSystem::get(graph_of(in.at("graph")));
  PosBraid x = braid_of(sys, in.at("x")), y = braid_of(sys, in.at("y"));
  json r{{"x", braid_json(x)}, {"y", braid_json(y)}, {"gcd", braid_json(gcd(x, y, side_of(in.at("side"))))}};
  return {r, kPass};
}

json morphism_json(const AdmissibleMorphism& m) {
  json blocks = json::array();
  for (int k = 0; k < m.partition.size(); ++k)
    blocks.push_back({{"name", m.partition.name(k)}, {"vertices", m.target_graph().names_of(m.partition.block(k))}});
  json images = json::array();
  for (const auto& s : m.images) images.push_back(s.reduced_word_names());
  return {{"source_type", graph_to_text(m.source_graph())},
          {"carrier", m.target_graph().names_of(m.carrier())},
          {"blocks", blocks},
          {"images", images}};
}

json report_json(const VerificationReport& rep) {
  json out = json::array();
  for (const auto& c : rep.checks) {
    json shown = json::array();
    for (std::size_t k = 0; k < c.violations.size() && k < kViolationsShown; ++k) shown.push_back(c.violations[k]);
    out.push_back({{"name", c.name},
                   {"cases", c.cases},
                   {"violation_count", c.violations.size()},
                   {"violations", shown},
                   {"passed", c.passed()}});
  }
  return out;
}

std::pair<json, int> cmd_morphism_verify(const json& in) {
  const CoxeterGraph g = graph_of(in.at("graph"));
  BlockPartition p = parse_partition(g, in.at("partition").get<std::string>());
  AdmissibilityVerdict v = check_admissible(p, in.at("bound"));
  json r{{"verdict", verdict_json(p, v)}};
  if (v.outcome != Outcome::Admissible) return {r, exit_for(v.outcome)};
  if (!v.type.resolved()) return {r, kUnknown};
  AdmissibleMorphism m = build_morphism(p, v);
  const auto seed = in.at("seed").get<std::uint64_t>();
  const int len = in.at("length");
  VerificationReport lcm_rep = verify_respects_lcm(m, {in.at("samples").get<int>(), len, seed});
  VerificationReport nf_rep = verify_respects_normal_forms(m, {in.at("nf_samples").get<int>(), len, seed});
  json checks = report_json(lcm_rep);
  for (auto& c : report_json(nf_rep)) checks.push_back(c);
  const int violations = lcm_rep.violation_count() + nf_rep.violation_count();
  r["morphism"] = morphism_json(m);
  r["checks"] = checks;
  r["violations"] = violations;
  return {r, violations == 0 ? kPass : kFail};
}

std::vector<int> parse_folding_map(const CoxeterGraph& gp, const CoxeterGraph& g, const std::string& text) {
  std::vector<int> f(static_cast<std::size_t>(gp.rank()), -1);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    auto fail = [&](const std::string& what) { return InvalidInput("line " + std::to_string(lineno) + ": " + what); };
    if (!(ls >> b) || (ls >> extra)) throw fail("expected '<source-vertex> <target-vertex>'");
    auto va = gp.find(a);
    auto vb = g.find(b);
    if (!va) throw fail("unknown source vertex '" + a + "'");
    if (!vb) throw fail("unknown target vertex '" + b + "'");
    if (f[static_cast<std::size_t>(*va)] != -1) throw fail("vertex '" + a + "' mapped twice");
    f[static_cast<std::size_t>(*va)] = *vb;
  }
  for (int v = 0; v < gp.rank(); ++v)
    if (f[static_cast<std::size_t>(v)] == -1) throw InvalidInput("map: vertex '" + gp.name(v) + "' is not mapped");
  return f;
}

std::pair<json, int> cmd_folding(const json& in) {
  const CoxeterGraph gp = graph_of(in.at("source")), g = graph_of(in.at("target"));
  std::vector<int> f = parse_folding_map(gp, g, in.at("map").get<std::string>());
  FoldingReport rep = check_folding(f, gp, g, in.at("bound"));
  json fibers = json::array();
  for (int i = 0; i < g.rank(); ++i) {
    VertexSet fb;
    for (int v = 0; v < gp.rank(); ++v)
      if (f[static_cast<std::size_t>(v)] == i) fb.insert(v);
    fibers.push_back({{"vertex", g.name(i)}, {"members", gp.names_of(fb)}, {"ok", static_cast<bool>(rep.fiber_ok[static_cast<std::size_t>(i)])}});
  }
  json pairs = json::array();
  for (const auto& p : rep.pairs)
    pairs.push_back({{"pair", {g.name(p.i), g.name(p.j)}},
                     {"case", to_string(p.tag)},
                     {"copies", p.copies},
                     {"reason", p.reason}});
  json r{{"fibers", fibers},
         {"pairs", pairs},
         {"tagged", rep.tagged},
         {"is_folding", rep.is_folding},
         {"cross_check", to_string(rep.cross_check)},
         {"cross_type_matches", rep.cross_type_matches},
         {"agrees", rep.agrees}};
  if (!rep.agrees) return {r, kUnknown};
  return {r, rep.is_folding ? kPass : kFail};
}

std::pair<json, int> cmd_fixed_points(const json& in) {
  const CoxeterGraph g = graph_of(in.at("graph"));
  auto gens = generators_of(g, in.at("generators"));
  FixedSubmonoidReport rep = fixed_submonoid_check(g, gens, in.at("length"));
  json r{{"generators", names_of_perms(g, gens)},
         {"orbits", partition_to_text(rep.orbits)},
         {"orbit_type", rep.orbit_type},
         {"orbit_type_graph", graph_to_text(rep.orbit_type_graph)},
         {"monoid_counts", rep.monoid_counts},
         {"fixed_counts", rep.fixed_counts},
         {"submonoid_counts", rep.submonoid_counts},
         {"mismatches", rep.mismatches},
         {"equal", rep.equal()}};
  return {r, rep.equal() ? kPass : kFail};
}

std::pair<json, int> cmd_orbits(const json& in) {
  const CoxeterGraph g = graph_of(in.at("graph"));
  auto gens = generators_of(g, in.at("generators"));
  BlockPartition p = orbit_partition(g, gens);
  AdmissibilityVerdict v = check_admissible(p, in.at("bound"));
  json r{{"generators", names_of_perms(g, gens)}, {"partition", partition_to_text(p)}, {"verdict", verdict_json(p, v)}};
  return {r, exit_for(v.outcome)};
}

std::string verdict_text(const json& v) {
  std::ostringstream o;
  o << "outcome: " << v["outcome"].get<std::string>() << "\n";
  const json& t = v["type"];
  if (!t["graph"].is_null())
    o << "type: " << (t["spherical_type"].is_null() ? std::string("non-spherical") : t["spherical_type"].get<std::string>())
      << "\n";
  for (const auto& p : v["pairs"]) {
    o << "  " << p["blocks"][0].get<std::string>() << " | " << p["blocks"][1].get<std::string>() << ": "
      << p["outcome"].get<std::string>() << ", order " << p["order"].get<std::string>();
    if (p["certificate"] != "none") o << ", certificate " << p["certificate"].get<std::string>();
    o << " (" << p["reason"].get<std::string>() << ")\n";
  }
  if (!v["witness"].is_null())
    o << "witness: the alternating word of length " << v["witness"]["n"] << " starting with "
      << v["witness"]["first"].get<std::string>() << " is not compatible\n";
  return o.str();
}

std::string render_text(const json& rep) {
  const std::string cmd = rep["command"];
  const json& r = rep["result"];
  std::ostringstream o;
  if (cmd == "check-partition") {
    if (r.contains("outer")) {
      o << "outer partition\n" << verdict_text(r["outer"]);
      o << "lifted partition\n" << r["lifted"]["partition"].get<std::string>() << verdict_text(r["lifted"]["verdict"]);
      o << "partition\n";
    }
    o << verdict_text(r["verdict"]);
    o << "lcm-partition: " << (r["lcm_partition"]["is_lcm"].get<bool>() ? "yes" : "no") << "\n";
  } else if (cmd == "type") {
    const json& t = r["type"];
    for (std::size_t a = 0; a < t["names"].size(); ++a)
      for (std::size_t b = a + 1; b < t["names"].size(); ++b)
        o << t["names"][a].get<std::string>() << " " << t["names"][b].get<std::string>() << " "
          << t["entries"][a][b].get<std::string>() << "\n";
    if (!t["graph"].is_null())
      o << "type: " << (t["spherical_type"].is_null() ? std::string("non-spherical") : t["spherical_type"].get<std::string>())
        << "\n";
  } else if (cmd == "classify") {
    o << r["type"].get<std::string>() << ": l(r_I) = " << r["longest_length"] << ", " << r["total_partitions"]
      << " 2-partitions in " << r["classes"] << " classes\n";
    for (const auto& c : r["candidates"]) {
      if (c["stage"] == "commuting-vertex") continue;
      std::string alpha, beta;
      for (const auto& v : c["alpha"]) alpha += (alpha.empty() ? "" : ",") + v.get<std::string>();
      for (const auto& v : c["beta"]) beta += (beta.empty() ? "" : ",") + v.get<std::string>();
      o << "  {" << alpha << "} | {" << beta << "}" << (c["bipartite"].get<bool>() ? " bipartite" : "") << ": "
        << c["stage"].get<std::string>();
      if (!c["order"].is_null()) o << ", order " << c["order"].get<std::string>();
      o << " (" << c["reason"].get<std::string>() << ")\n";
    }
    for (auto it = r["counts"].begin(); it != r["counts"].end(); ++it) o << it.key() << ": " << it.value() << "\n";
  } else if (cmd == "burst") {
    o << r["text"].get<std::string>();
  } else if (cmd == "verify-burst") {
    o << verdict_text(r["verdict"]);
    o << "output graph: " << (r["output_type"].is_null() ? std::string("non-spherical") : r["output_type"].get<std::string>())
      << "\ntype matches input: " << (r["type_matches_input"].get<bool>() ? "yes" : "no") << "\n";
  } else if (cmd == "normal-form") {
    o << "left normal form: " << r["left_normal_form"]["text"].get<std::string>() << "\nright normal form: ";
    if (r["right_normal_form"].empty()) o << "1";
    for (const auto& f : r["right_normal_form"]) {
      std::string s;
      for (const auto& v : f) s += (s.empty() ? "" : " ") + v.get<std::string>();
      o << "[" << s << "]";
    }
    o << "\nlength: " << r["left_normal_form"]["length"] << "\n";
  } else if (cmd == "lcm") {
    o << (r["found"].get<bool>() ? r["lcm"]["text"].get<std::string>() : std::string("no common multiple found")) << "\n";
  } else if (cmd == "gcd") {
    o << r["gcd"]["text"].get<std::string>() << "\n";
  } else if (cmd == "morphism-verify") {
    o << verdict_text(r["verdict"]);
    if (r.contains("checks")) {
      for (const auto& c : r["checks"]) {
        o << "  " << c["name"].get<std::string>() << ": " << c["cases"] << " cases, " << c["violation_count"]
          << " violations\n";
        for (const auto& v : c["violations"]) o << "    " << v.get<std::string>() << "\n";
      }
      o << "violations: " << r["violations"] << "\n";
    }
  } else if (cmd == "folding") {
    for (const auto& f : r["fibers"])
      if (!f["ok"].get<bool>()) o << "fibre over " << f["vertex"].get<std::string>() << " is empty or not spherical\n";
    for (const auto& p : r["pairs"])
      o << "  " << p["pair"][0].get<std::string>() << " " << p["pair"][1].get<std::string>() << ": case "
        << p["case"].get<std::string>() << " (" << p["reason"].get<std::string>() << ")\n";
    o << "folding: " << (r["is_folding"].get<bool>() ? "yes" : "no") << "\ncross check: "
      << r["cross_check"].get<std::string>() << (r["agrees"].get<bool>() ? ", agrees" : ", DISAGREES") << "\n";
  } else if (cmd == "fixed-points") {
    o << "orbits:\n" << r["orbits"].get<std::string>() << "orbit type: " << r["orbit_type"].get<std::string>() << "\n";
    o << "length monoid fixed submonoid\n";
    for (std::size_t k = 0; k < r["fixed_counts"].size(); ++k)
      o << k << " " << r["monoid_counts"][k] << " " << r["fixed_counts"][k] << " " << r["submonoid_counts"][k] << "\n";
    o << "equal: " << (r["equal"].get<bool>() ? "yes" : "no") << "\n";
  } else if (cmd == "orbits") {
    o << r["partition"].get<std::string>() << verdict_text(r["verdict"]);
  }
  return o.str();
}

std::string read_text_arg(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return read_file(arg);
  if (arg.find("block") != std::string::npos) {
    std::string t = arg;
    for (char& c : t)
      if (c == ';') c = '\n';
    return t;
  }
  throw InvalidInput("cannot read '" + arg + "'");
}

}  // namespace

json execute(const std::string& command, const json& inputs) {
  std::pair<json, int> r;
  try {
    if (command == "check-partition") r = cmd_check_partition(inputs);
    else if (command == "type") r = cmd_type(inputs);
    else if (command == "classify") r = cmd_classify(inputs);
    else if (command == "burst") r = cmd_burst(inputs);
    else if (command == "verify-burst") r = cmd_verify_burst(inputs);
    else if (command == "normal-form") r = cmd_normal_form(inputs);
    else if (command == "lcm") r = cmd_lcm(inputs);
    else if (command == "gcd") r = cmd_gcd(inputs);
    else if (command == "morphism-verify") r = cmd_morphism_verify(inputs);
    else if (command == "folding") r = cmd_folding(inputs);
    else if (command == "fixed-points") r = cmd_fixed_points(inputs);
    else if (command == "orbits") r = cmd_orbits(inputs);
    else throw InvalidInput("unknown command '" + command + "'");
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed inputs: ") + e.what());
  }
  return {{"schema", 1}, {"command", command}, {"inputs", inputs}, {"result", r.first}, {"exit", r.second}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Admissible partitions of Coxeter graphs and Artin-Tits monoid morphisms", "coxpart"};
  app.fallthrough();
  app.require_subcommand(1);
  bool as_json = false;
  int bound = kDefaultBound;
  std::uint64_t seed = 0;
  app.add_flag("--json", as_json, "Print the JSON report");
  app.add_option("--bound", bound, "Exploration bound for infinite-order pairs")->capture_default_str();
  app.add_option("--seed", seed, "Seed for randomized samples")->capture_default_str();

  std::string graph, partition, lift_outer, source, target, map, word_x, word_y, file;
  std::optional<int> burst_n;
  int samples = 200, nf_samples = 100, length = 6;
  std::vector<std::string> word, gens;

  auto* check = app.add_subcommand("check-partition", "Decide admissibility of a partition");
  check->add_option("graph", graph, "Graph name or file")->required();
  check->add_option("partition", partition, "Partition file or inline 'block a = 1,2; block b = 3'")->required();
  check->add_option("--lift", lift_outer, "Admissible partition of the graph; the partition then lives on its type");

  auto* type = app.add_subcommand("type", "Type matrix of a spherical partition");
  type->add_option("graph", graph)->required();
  type->add_option("partition", partition)->required();

  auto* classify = app.add_subcommand("classify", "Admissible 2-partitions of an irreducible spherical graph");
  classify->add_option("graph", graph)->required();

  auto* burst_cmd = app.add_subcommand("burst", "N-burst of a graph, printed with its block partition");
  burst_cmd->add_option("graph", graph)->required();
  burst_cmd->add_option("--n", burst_n, "N (defaults to the smallest allowed value)");

  auto* vburst = app.add_subcommand("verify-burst", "Verify a burst produced by the burst command");
  vburst->add_option("file", file, "Burst output (reads standard input when omitted)");

  auto* nf = app.add_subcommand("normal-form", "Left and right normal forms of a positive word");
  nf->add_option("graph", graph)->required();
  nf->add_option("word", word, "Generators, separated by spaces or commas");

  std::string lcm_side = "right", gcd_side = "left";
  auto add_pair = [&](CLI::App* c, std::string& s) {
    c->add_option("graph", graph)->required();
    c->add_option("--x", word_x, "First word")->required();
    c->add_option("--y", word_y, "Second word")->required();
    c->add_option("--side", s, "left or right")->capture_default_str();
  };
  auto* lcm_cmd = app.add_subcommand("lcm", "Least common multiple in the positive monoid");
  add_pair(lcm_cmd, lcm_side);
  auto* gcd_cmd = app.add_subcommand("gcd", "Greatest common divisor in the positive monoid");
  add_pair(gcd_cmd, gcd_side);

  auto* mv = app.add_subcommand("morphism-verify", "Property suites for the morphism of an admissible partition");
  mv->add_option("graph", graph)->required();
  mv->add_option("partition", partition)->required();
  mv->add_option("--samples", samples, "Random pairs for the lcm suite")->capture_default_str();
  mv->add_option("--nf-samples", nf_samples, "Random elements for the normal-form suite")->capture_default_str();
  mv->add_option("--length", length, "Maximal length of random words")->capture_default_str();

  auto* fold = app.add_subcommand("folding", "Check a vertex map against the folding cases");
  fold->add_option("source", source, "Graph being folded")->required();
  fold->add_option("target", target, "Target graph")->required();
  fold->add_option("map", map, "File of '<source-vertex> <target-vertex>' lines")->required();

  auto* fixed = app.add_subcommand("fixed-points", "Fixed submonoid of a group of graph automorphisms");
  fixed->add_option("graph", graph)->required();
  fixed->add_option("--gen", gens, "Generator as the images of the vertices in order (default: all automorphisms)");
  fixed->add_option("--length", length, "Length bound")->capture_default_str();

  auto* orb = app.add_subcommand("orbits", "Spherical orbit partition of a group of graph automorphisms");
  orb->add_option("graph", graph)->required();
  orb->add_option("--gen", gens, "Generator as the images of the vertices in order (default: all automorphisms)");

  auto* rerun = app.add_subcommand("rerun", "Re-run a JSON report from its embedded inputs and compare");
  rerun->add_option("report", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    if (cmd == "rerun") {
      json old = json::parse(read_file(file));
      if (old.value("schema", 0) != 1) throw InvalidInput("report has no schema 1 field");
      json fresh = execute(old.at("command").get<std::string>(), old.at("inputs"));
      const bool same = fresh.dump() == old.dump();
      if (as_json)
        out << json{{"schema", 1}, {"command", "rerun"}, {"of", old.at("command")}, {"identical", same}}.dump(2) << "\n";
      else
        out << (same ? "identical" : "differs") << "\n";
      return same ? kPass : kFail;
    }
    json inputs{{"bound", bound}};
    auto gens_json = [&](const CoxeterGraph& g) {
      if (gens.empty()) return json(nullptr);
      json a = json::array();
      for (const auto& s : gens) {
        auto names = split_names(s);
        if (static_cast<int>(names.size()) != g.rank())
          throw InvalidInput("--gen needs one image per vertex (" + std::to_string(g.rank()) + ")");
        a.push_back(names);
      }
      return a;
    };
    if (cmd == "folding") {
      inputs["source"] = graph_json(load_graph(source));
      inputs["target"] = graph_json(load_graph(target));
      inputs["map"] = read_file(map);
    } else if (cmd == "verify-burst") {
      std::string text;
      if (file.empty()) {
        std::ostringstream s;
        s << in.rdbuf();
        text = s.str();
      } else {
        text = read_file(file);
      }
      inputs["text"] = text;
    } else {
      CoxeterGraph g = load_graph(graph);
      inputs["graph"] = graph_json(g);
      if (cmd == "check-partition") {
        inputs["partition"] = read_text_arg(partition);
        inputs["outer"] = lift_outer.empty() ? json(nullptr) : json(read_text_arg(lift_outer));
      } else if (cmd == "type") {
        inputs["partition"] = read_text_arg(partition);
      } else if (cmd == "burst") {
        inputs["n"] = burst_n ? json(*burst_n) : json(nullptr);
      } else if (cmd == "normal-form") {
        std::vector<std::string> w;
        for (const auto& s : word)
          for (auto& t : split_names(s)) w.push_back(t);
        inputs["word"] = w;
      } else if (cmd == "lcm" || cmd == "gcd") {
        inputs["x"] = split_names(word_x);
        inputs["y"] = split_names(word_y);
        inputs["side"] = cmd == "lcm" ? lcm_side : gcd_side;
      } else if (cmd == "morphism-verify") {
        inputs["partition"] = read_text_arg(partition);
        inputs["seed"] = seed;
        inputs["samples"] = samples;
        inputs["nf_samples"] = nf_samples;
        inputs["length"] = length;
      } else if (cmd == "fixed-points") {
        inputs["generators"] = gens_json(g);
        inputs["length"] = length;
      } else if (cmd == "orbits") {
        inputs["generators"] = gens_json(g);
      }
    }
    json report = execute(cmd, inputs);
    if (as_json) out << report.dump(2) << "\n";
    else out << render_text(report);
    return report["exit"].get<int>();
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kFail;
  }
}

Result run(const std::vector<std::string>& args, std::string_view stdin_text) {
  std::vector<const char*> argv{"coxpart"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  std::istringstream in{std::string(stdin_text)};
  Result r;
  r.exit_code = run(static_cast<int>(argv.size()), argv.data(), out, err, in);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace coxpart::cli
