#include "polytree/export.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "polytree/errors.hpp"

namespace polytree {

using json = nlohmann::ordered_json;

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseError("malformed fraction '" + text + "'", 0);
  }
}

namespace {

json height_json(double h) { return std::isfinite(h) ? json(h) : json(nullptr); }
double height_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json atom_json(const Atom& a) {
  json j = a.location.infinite ? json{{"location", "inf"}} : complex_json(a.location.value);
  j["mass"] = format_rational(a.mass);
  return j;
}

json boundary_json(const BoundaryPoint& bp) {
  json p = json::array();
  for (auto it = bp.p.rbegin(); it != bp.p.rend(); ++it) p.push_back(complex_json(*it));
  return json{{"text", format_boundary(bp)}, {"P", p}, {"k", bp.k}, {"b", complex_json(bp.b)}, {"D", bp.D}};
}

json verdict_json(const StabilityVerdict& v) {
  json w = json::array();
  for (const auto& x : v.witnesses)
    w.push_back({{"condition", x.condition},
                 {"root", complex_json(x.root)},
                 {"value", x.value},
                 {"stable", x.holds_stable},
                 {"semistable", x.holds_semistable}});
  json zeros = json::array();
  for (const auto& z : v.zeros) zeros.push_back({{"root", complex_json(z.center)}, {"multiplicity", z.multiplicity}});
  json j{{"verdict", to_string(v.tag)}, {"degree_p", v.degree_p}, {"zeros", zeros}, {"witnesses", w}};
  if (v.ambiguous) j["alternative_verdict"] = to_string(v.alternative_tag);
  return j;
}

}  // namespace

std::string tree_to_json(const Tree& tree, const TreeMeasure& measure) {
  json vs = json::array();
  for (const auto& v : tree.vertices)
    vs.push_back({{"id", v.id},
                  {"height", v.height},
                  {"valence", v.valence()},
                  {"parent_edge", v.parent_edge},
                  {"child_edges", v.child_edges},
                  {"depth", v.depth},
                  {"expanded", v.expanded}});
  json es = json::array();
  for (const auto& e : tree.edges)
    es.push_back({{"id", e.id},
                  {"top", e.top},
                  {"bottom", e.bottom},
                  {"top_height", height_json(e.top_height)},
                  {"bottom_height", e.bottom_height},
                  {"degree", e.degree},
                  {"generation", e.generation},
                  {"image", e.image},
                  {"trunk", e.trunk},
                  {"level", e.level},
                  {"mass", format_rational(measure[e.id])}});
  const json j{{"d", tree.d},      {"M", tree.M},         {"scale", tree.scale},
               {"normalized", tree.normalized}, {"depth", tree.depth}, {"base", tree.base},
               {"top_edge", tree.top_edge}, {"vertices", vs}, {"edges", es}};
  return j.dump(2) + "\n";
}

std::pair<Tree, TreeMeasure> tree_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("tree JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  try {
    Tree t;
    TreeMeasure m;
    t.d = j.at("d").get<int>();
    t.M = j.at("M").get<double>();
    t.scale = j.at("scale").get<double>();
    t.normalized = j.at("normalized").get<bool>();
    t.depth = j.at("depth").get<int>();
    t.base = j.at("base").get<int>();
    t.top_edge = j.at("top_edge").get<int>();
    for (const auto& v : j.at("vertices")) {
      TreeVertex x;
      x.id = v.at("id").get<int>();
      x.height = v.at("height").get<double>();
      x.parent_edge = v.at("parent_edge").get<int>();
      x.child_edges = v.at("child_edges").get<std::vector<int>>();
      x.depth = v.at("depth").get<int>();
      x.expanded = v.at("expanded").get<bool>();
      t.vertices.push_back(std::move(x));
    }
    for (const auto& e : j.at("edges")) {
      TreeEdge x;
      x.id = e.at("id").get<int>();
      x.top = e.at("top").get<int>();
      x.bottom = e.at("bottom").get<int>();
      x.top_height = height_from(e.at("top_height"));
      x.bottom_height = e.at("bottom_height").get<double>();
      x.degree = e.at("degree").get<int>();
      x.generation = e.at("generation").get<int>();
      x.image = e.at("image").get<int>();
      x.trunk = e.at("trunk").get<bool>();
      x.level = e.at("level").get<int>();
      x.mass = parse_rational(e.at("mass").get<std::string>());
      m.mass.push_back(x.mass);
      t.edges.push_back(std::move(x));
    }
    return {t, m};
  } catch (const json::exception& e) {
    throw ParseError(std::string("tree JSON: ") + e.what(), 0);
  }
}

std::string tree_to_dot(const Tree& tree, const TreeMeasure& measure) {
  std::ostringstream os;
  os << std::setprecision(6);
  os << "digraph tree {\n";
  os << "  node [shape=circle];\n";
  os << "  inf [label=\"inf\", shape=plaintext];\n";
  for (const auto& v : tree.vertices) os << "  v" << v.id << " [label=\"" << v.height << "\"];\n";
  for (const auto& e : tree.edges) {
    const std::string top = e.top < 0 ? "inf" : "v" + std::to_string(e.top);
    const std::string bottom = e.bottom < 0 ? "c" + std::to_string(e.id) : "v" + std::to_string(e.bottom);
    if (e.bottom < 0) os << "  " << bottom << " [label=\"\", shape=point];\n";
    os << "  " << top << " -> " << bottom << " [label=\"" << e.degree << " / " << format_rational(measure[e.id])
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string measure_to_json(const LimitMeasure& lm) {
  json atoms = json::array();
  for (const auto& a : lm.atoms) atoms.push_back(atom_json(a));
  json evidence = json::array();
  for (const auto& s : lm.regime.evidence)
    evidence.push_back({{"j", s.j},
                        {"M", s.M},
                        {"basepoint_height", s.basepoint_height},
                        {"normalized_height", s.normalized_height},
                        {"distance", s.distance}});
  const json j{{"case", to_string(lm.regime.regime)},
               {"N", lm.generation},
               {"d", lm.d},
               {"atoms", atoms},
               {"reason", lm.regime.reason},
               {"evidence", evidence}};
  return j.dump(2) + "\n";
}

std::string kbound_to_json(const KBoundReport& r) {
  const json j{{"N", r.N},
               {"k", r.k},
               {"mass", format_rational(r.mass)},
               {"bound", format_rational(r.bound)},
               {"pass", r.pass},
               {"equality", r.equality}};
  return j.dump(2) + "\n";
}

std::string stability_to_json(const StabilityVerdict& v) { return verdict_json(v).dump(2) + "\n"; }

std::string report_to_json(const TheoremTwoReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps)
    steps.push_back(
        {{"step", s.step}, {"name", s.name}, {"pass", s.pass}, {"margin", s.margin}, {"detail", s.detail}});
  json iterates = json::array();
  for (const auto& c : r.iterates)
    iterates.push_back({{"m", c.m},
                        {"g", boundary_json(c.g)},
                        {"deviation", c.deviation},
                        {"stability", verdict_json(c.verdict)},
                        {"mass_bounds", c.inequalities}});
  json atoms = json::array();
  for (const auto& a : r.atoms) atoms.push_back(atom_json(a));
  json j{{"d", r.d},
         {"N", r.N},
         {"case", to_string(r.regime)},
         {"normalized_heights", r.normalized_heights},
         {"basepoint_height", r.basepoint_height},
         {"height_threshold", r.height_threshold},
         {"atoms", atoms},
         {"generation", r.generation},
         {"iterates", iterates},
         {"steps", steps},
         {"pass", r.pass}};
  if (r.unstable_witness) j["unstable_witness"] = boundary_json(*r.unstable_witness);
  return j.dump(2) + "\n";
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "param,M,basepoint_height,regime,n_atoms\n";
  for (const auto& r : rows)
    os << r.param << "," << r.M << "," << r.basepoint_height << "," << r.regime << "," << r.n_atoms << "\n";
  return os.str();
}

}  // namespace polytree
