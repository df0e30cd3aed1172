#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polytree/build_tree.hpp"
#include "polytree/degeneration.hpp"
#include "polytree/errors.hpp"
#include "polytree/export.hpp"
#include "polytree/finite_determination.hpp"
#include "polytree/pointed.hpp"
#include "polytree/stability.hpp"

namespace polytree::cli {

namespace {

struct RawFlags {
  std::string poly, family, schedule, lambda, point, rescale = "none";
  std::string stability_format = "text";
  int family_depth = 2;
};

void add_family_flags(CLI::App* sub, RawFlags& raw) {
  sub->add_option("--family", raw.family, "coefficient expressions in t, highest degree first")->required();
  sub->add_option("--schedule", raw.schedule, "t=<expr in j>, j=<first>..<last>")->required();
  sub->add_option("--lambda", raw.lambda, "rescaling lambda(t): members become lambda f(z/lambda)");
}

void add_out(CLI::App* sub, CommandRequest& req) { sub->add_option("--out", req.out, "output file (default stdout)"); }

void write(const CommandRequest& req, std::ostream& out, const std::string& text) {
  if (req.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(req.out, std::ios::binary);
  if (!f) throw Error("cli", "cannot open " + req.out + " for writing");
  f << text;
}

int cmd_tree(const CommandRequest& req, std::ostream& out) {
  auto [tree, measure] = build_tree(*req.poly, req.depth);
  if (req.normalize) std::tie(tree, measure) = normalize(tree, measure);
  write(req, out, req.format == "dot" ? tree_to_dot(tree, measure) : tree_to_json(tree, measure));
  return kExitOk;
}

int cmd_measure(const CommandRequest& req, std::ostream& out) {
  LimitOptions opts;
  opts.depth = req.depth;
  write(req, out, measure_to_json(limit_measure(*req.family, opts)));
  return kExitOk;
}

int cmd_zeros(const CommandRequest& req, std::ostream& out) {
  auto [tree, measure] = build_tree(*req.poly, std::max(req.depth, req.n));
  std::ostringstream os;
  bool ok = true;
  os << "edge,level,generation,mass,expected,count,ambiguous\n";
  for (const auto& e : tree.edges) {
    if (!e.trunk && e.generation > req.n) continue;
    if (e.trunk && e.id != tree.top_edge) continue;
    const ZeroCount z = count_zeros_in_component(*req.poly, req.n, tree, measure, e.id);
    os << e.id << "," << e.level << "," << e.generation << "," << format_rational(e.trunk ? Rational(0) : measure[e.id]) << ","
       << format_rational(z.expected) << "," << z.count << "," << (z.ambiguous ? "yes" : "no") << "\n";
    if (!z.ambiguous && Rational(z.count) != z.expected) ok = false;
  }
  write(req, out, os.str());
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_limit_iterate(const CommandRequest& req, std::ostream& out) {
  LimitOptions opts;
  opts.depth = req.depth;
  try {
    const LimitIterate li = limit_iterate(*req.family, req.n, opts);
    write(req, out, format_boundary(li.point) + "\n");
    return kExitOk;
  } catch (const ExtrapolationMismatch& e) {
    write(req, out, std::string("mismatch: ") + e.what() + "\n");
    return kExitCheckFailed;
  }
}

int cmd_kbound(const CommandRequest& req, std::ostream& out) {
  LimitOptions opts;
  opts.depth = req.depth;
  const KBoundReport r = verify_kbound(*req.family, req.n, opts);
  write(req, out, kbound_to_json(r));
  return r.pass ? kExitOk : kExitCheckFailed;
}

int cmd_stability(const CommandRequest& req, std::ostream& out) {
  const StabilityVerdict v = stability(*req.point);
  write(req, out, req.format == "json" ? stability_to_json(v) : to_string(v.tag) + "\n");
  return kExitOk;
}

int cmd_thm2(const CommandRequest& req, std::ostream& out) {
  LimitOptions opts;
  opts.depth = req.depth;
  const TheoremTwoReport r = verify_finite_determination(
      *req.family, req.extra, req.auto_rescale ? Representative::Auto : Representative::AsGiven, opts);
  write(req, out, report_to_json(r));
  return r.pass ? kExitOk : kExitCheckFailed;
}

SweepRow sweep_row(const FamilyMember& m) {
  SweepRow row;
  row.param = format_complex(m.t);
  const MemberSummary s = summarize_member(m);
  row.M = s.M;
  row.basepoint_height = s.basepoint_height;
  if (!(s.M > 1e-10)) {
    row.regime = "connected";
    return row;
  }
  // Single-member reading of the regime thresholds; trends need the family.
  if (s.normalized_height < 0.05) row.regime = to_string(Regime::JuliaBasepoint);
  else if (s.distance > 10.0) row.regime = to_string(Regime::EscapingBasepoint);
  else row.regime = to_string(Regime::InteriorBasepoint);
  try {
    PointedTree pt = pointed_member_tree(m.f, 2);
    const TreePoint p = snap_to_vertex(pt.tree, pt.point, LimitOptions{}.snap);
    if (p.kind == TreePoint::Kind::Vertex) expand_vertex(pt.tree, p.id);
    const auto atoms = cluster_atoms(components_at(pt.tree, measure_of(pt.tree), p), 0.02, 0.05);
    row.n_atoms = static_cast<int>(atoms.size());
  } catch (const Error&) {
    row.n_atoms = 1;  // basepoint below the resolved tree: all mass escapes
  }
  return row;
}

int cmd_sweep(const CommandRequest& req, std::ostream& out) {
  const auto members = sample_members(*req.family);
  std::vector<std::future<SweepRow>> jobs;
  for (const auto& m : members) jobs.push_back(std::async(std::launch::async, sweep_row, m));
  std::vector<SweepRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  write(req, out, sweep_to_csv(rows));
  return kExitOk;
}

}  // namespace

CommandRequest parse_args(const std::vector<std::string>& args) {
  CommandRequest req;
  RawFlags raw;
  CLI::App app{"Dynamical trees and degenerations of polynomial maps", "polytree"};
  app.require_subcommand(1, 1);

  auto* tree = app.add_subcommand("tree", "build the dynamical tree of a polynomial");
  tree->add_option("--poly", raw.poly, "coefficients, highest degree first")->required();
  tree->add_option("--depth", req.depth, "levels below the base vertex")->check(CLI::Range(0, 16));
  tree->add_flag("--normalize", req.normalize, "divide heights by M");
  tree->add_option("--format", req.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  add_out(tree, req);

  auto* measure = app.add_subcommand("measure-limit", "limit of the measures of maximal entropy");
  add_family_flags(measure, raw);
  measure->add_option("--depth", raw.family_depth, "truncation depth for the stabilization check")->check(CLI::Range(1, 8));
  add_out(measure, req);

  auto* zeros = app.add_subcommand("zeros", "zeros of f^n in each tree component");
  zeros->add_option("--poly", raw.poly, "coefficients, highest degree first")->required();
  zeros->add_option("--n", req.n, "iterate order")->required()->check(CLI::Range(1, 10));
  zeros->add_option("--depth", req.depth, "tree depth (at least n)")->check(CLI::Range(0, 12));
  add_out(zeros, req);

  auto* iterate = app.add_subcommand("limit-iterate", "projective limit of the m-th iterates");
  add_family_flags(iterate, raw);
  iterate->add_option("--m", req.n, "iterate order")->required()->check(CLI::Range(1, 10));
  iterate->add_option("--depth", raw.family_depth, "truncation depth")->check(CLI::Range(1, 8));
  add_out(iterate, req);

  auto* kbound = app.add_subcommand("kbound", "compare the w-power of the limit of f^N with the escaping mass");
  add_family_flags(kbound, raw);
  kbound->add_option("--N", req.n, "iterate order")->required()->check(CLI::Range(1, 8));
  add_out(kbound, req);

  auto* stab = app.add_subcommand("stability", "GIT stability of a boundary point");
  stab->add_option("--point", raw.point, "P=<coeffs>;k=<int>;b=<complex>;D=<int>")->required();
  stab->add_option("--format", raw.stability_format, "text or json")->check(CLI::IsMember({"text", "json"}));
  add_out(stab, req);

  auto* nd = app.add_subcommand("nd", "the bound N(d)");
  nd->add_option("--degree", req.degree, "degree d")->required()->check(CLI::Range(2, 1 << 20));

  auto* thm2 = app.add_subcommand("verify-thm2", "finite determination of the limit iterates");
  add_family_flags(thm2, raw);
  thm2->add_option("--extra", req.extra, "check m = N .. N + extra")->check(CLI::Range(0, 4));
  thm2->add_option("--rescale", raw.rescale, "none or auto")->check(CLI::IsMember({"none", "auto"}));
  thm2->add_option("--depth", raw.family_depth, "truncation depth")->check(CLI::Range(1, 8));
  add_out(thm2, req);

  auto* sweep = app.add_subcommand("sweep", "CSV of M, basepoint height and atoms over a family");
  add_family_flags(sweep, raw);
  add_out(sweep, req);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    req.command = "help";
    req.help_text = app.help();
    return req;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (auto* sub : app.get_subcommands()) req.command = sub->get_name();
  if (req.command != "tree" && req.command != "zeros") req.depth = raw.family_depth;
  if (req.command == "stability") req.format = raw.stability_format;
  if (!raw.poly.empty()) req.poly = parse_polynomial(raw.poly);
  if (!raw.family.empty()) req.family = parse_family(raw.family, raw.schedule, raw.lambda);
  if (!raw.point.empty()) req.point = parse_boundary(raw.point);
  req.auto_rescale = raw.rescale == "auto";
  return req;
}

int run(const CommandRequest& req, std::ostream& out, std::ostream& /*err*/) {
  if (req.command == "help") {
    out << req.help_text;
    return kExitOk;
  }
  if (req.command == "tree") return cmd_tree(req, out);
  if (req.command == "measure-limit") return cmd_measure(req, out);
  if (req.command == "zeros") return cmd_zeros(req, out);
  if (req.command == "limit-iterate") return cmd_limit_iterate(req, out);
  if (req.command == "kbound") return cmd_kbound(req, out);
  if (req.command == "stability") return cmd_stability(req, out);
  if (req.command == "nd") {
    write(req, out, std::to_string(nd_bound(req.degree)) + "\n");
    return kExitOk;
  }
  if (req.command == "verify-thm2") return cmd_thm2(req, out);
  if (req.command == "sweep") return cmd_sweep(req, out);
  throw UsageError("unknown subcommand '" + req.command + "'");
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(args), out, err);
  } catch (const Error& e) {
    err << "error [" << e.module() << "]: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace polytree::cli
