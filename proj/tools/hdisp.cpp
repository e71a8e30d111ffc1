// hdisp: command-line front end.
//
//   hdisp <command> <action> [--spec FILE] [--seed N] [--budget N] [--out FILE] [--json]
//
// Exit status: 0 success, 1 verification failure, 2 input error, 3 budget exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "hdisp/io.hpp"

using namespace hdisp;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Opts {
  std::string action;
  std::string spec, other, element, ring, x, y, display, ext, group = "GL", mu, out;
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;
  std::size_t m = 0;
  bool json_out = false;
  bool selfdual = false;
};

struct Report {
  json j;
  bool ok = true;

  Report(const std::string& command, const std::string& anchor, const Opts& o) {
    j["command"] = command;
    j["anchor"] = anchor;
    j["version"] = kVersion;
    j["seed"] = o.seed;
    j["budget"] = o.budget;
    j["verification"] = json::array();
    j["result"] = json::object();
  }
  void verify(const std::string& name, bool pass, const std::string& detail = "") {
    j["verification"].push_back({{"check", name}, {"ok", pass}, {"detail", detail}});
    ok = ok && pass;
  }
  json& result() { return j["result"]; }
};

std::uint64_t budget_or(const Opts& o, std::uint64_t dflt) { return o.budget ? o.budget : dflt; }

json need(const std::string& file, const char* flag) {
  if (file.empty()) fail(ErrorKind::Schema, std::string("missing ") + flag);
  return load_json_file(file);
}

std::vector<int> parse_mu(const std::string& s) {
  if (s.empty()) fail(ErrorKind::Schema, "missing --mu");
  std::vector<int> mu;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      mu.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      fail(ErrorKind::Schema, "--mu: bad weight \"" + tok + "\"");
    }
  }
  return mu;
}

void axiom_report(Report& r, const AxiomReport& a, const std::string& prefix) {
  for (const auto& x : a.results) r.verify(prefix + x.name, x.ok, x.ok ? "" : x.witness);
}

json orbit_json(const OrbitReport& rep) {
  json j;
  j["label"] = rep.label;
  j["total"] = rep.total;
  j["group_order"] = rep.group_order;
  j["orbit_count"] = rep.reps.size();
  j["size_multiset"] = rep.size_multiset();
  json reps = json::array();
  for (std::size_t i = 0; i < rep.reps.size(); ++i)
    reps.push_back({{"phi", wmat_to_json(rep.reps[i])}, {"size", rep.sizes[i]}});
  j["representatives"] = reps;
  return j;
}

// ---------------------------------------------------------------------------

Report cmd_ring(const Opts& o) {
  Ring r = ring_from_json(need(o.spec, "--spec"), "$");
  Report rep("ring " + o.action, "base_rings", o);
  json& res = rep.result();
  res["ring"] = ring_to_json(r);
  res["size"] = r->size();
  res["dim"] = r->dim();
  res["nilpotency"] = r->nilpotency();
  json basis = json::array();
  for (std::size_t i = 0; i < r->dim(); ++i) basis.push_back(r->monomial_name(static_cast<int>(i)));
  res["basis"] = basis;
  if (o.action == "enumerate") {
    json elems = json::array();
    for (const auto& a : enumerate_ring(r, budget_or(o, 100000))) elems.push_back(elem_to_json(a));
    res["elements"] = elems;
  } else if (o.action == "check") {
    auto all = enumerate_ring(r, budget_or(o, 2000));
    bool ok = true;
    for (const auto& a : all)
      for (const auto& b : all) {
        ok = ok && a + b == b + a && a * b == b * a;
        for (const auto& c : all) ok = ok && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c;
      }
    rep.verify("ring axioms on all triples", ok);
  }
  return rep;
}

Report cmd_witt(const Opts& o) {
  Ring r = ring_from_json(need(o.ring, "--ring"), "$");
  if (o.m == 0) fail(ErrorKind::Schema, "missing --m");
  Report rep("witt " + o.action, "witt_calculus", o);
  auto arg = [&](const std::string& s, const char* flag) {
    if (s.empty()) fail(ErrorKind::Schema, std::string("missing ") + flag);
    return parse_json_arg(s);
  };
  json& res = rep.result();
  if (o.action == "teich") {
    res["value"] = witt_to_json(teichmuller(elem_from_json(r, arg(o.x, "--x"), "--x"), o.m));
    return rep;
  }
  const WittVec x = witt_from_json(r, o.m, arg(o.x, "--x"), "--x");
  if (o.action == "add" || o.action == "mul") {
    const WittVec y = witt_from_json(r, o.m, arg(o.y, "--y"), "--y");
    res["value"] = witt_to_json(o.action == "add" ? witt_add(x, y) : witt_mul(x, y));
  } else if (o.action == "frob") {
    res["value"] = witt_to_json(witt_frobenius_fixed(x));
  } else if (o.action == "v") {
    res["value"] = witt_to_json(truncate(verschiebung(x), o.m));
  }
  return rep;
}

Report cmd_frame(const Opts& o) {
  FramePtr f = frame_from_json(need(o.spec, "--spec"), "$");
  Report rep("frame " + o.action, "frames", o);
  json& res = rep.result();
  res["frame"] = frame_to_json(*f);
  res["S0_size"] = f->s_size();
  res["P_size"] = f->p_size();
  res["kind"] = frame_kind_name(f->kind);
  if (o.action == "check") {
    const auto a = frame_axiom_check(*f, budget_or(o, kDefaultAxiomBudget), o.seed);
    const auto z = zip_projection_check(*f, budget_or(o, kDefaultAxiomBudget), o.seed);
    res["exhaustive"] = a.exhaustive && z.exhaustive;
    axiom_report(rep, a, "");
    axiom_report(rep, z, "zip projection: ");
  }
  return rep;
}

Report cmd_display(const Opts& o) {
  Report rep("display " + o.action, "displays", o);
  json& res = rep.result();
  if (o.action == "classify") {
    FramePtr f = frame_from_json(need(o.spec, "--spec"), "$");
    const std::vector<int> mu = parse_mu(o.mu);
    OrbitReport orb = o.group == "O" ? classify_orth_orbits(f, mu, budget_or(o, kDefaultOrbitBudget))
                                     : classify_orbits(f, mu, o.group, budget_or(o, kDefaultOrbitBudget));
    std::uint64_t sum = 0;
    for (auto s : orb.sizes) sum += s;
    rep.verify("orbit sizes sum to the number of displays", sum == orb.total);
    res = orbit_json(orb);
    return rep;
  }
  const Display d = display_from_json(need(o.spec, "--spec"), "$");
  if (o.action == "act") {
    const GradedMatrix g = graded_from_json(d.frame, need(o.element, "--element"), "$");
    if (!in_display_group(g)) fail(ErrorKind::NotInGroup, "element is not in the display group");
    res["display"] = display_to_json(display_act(d, g));
  } else if (o.action == "iso") {
    const Display d2 = display_from_json(need(o.other, "--other"), "$");
    if (!d2.frame->same_as(*d.frame) || d2.mu != d.mu) fail(ErrorKind::DescriptorMismatch, "displays of different types");
    const auto G = enumerate_display_group(d.frame, d.mu, budget_or(o, kDefaultOrbitBudget));
    if (G.empty()) fail(ErrorKind::BudgetExceeded, "display group exceeds the budget");
    res["isomorphic"] = false;
    for (const auto& g : G)
      if (display_act(d, g) == d2) {
        res["isomorphic"] = true;
        res["witness"] = graded_to_json(g);
        rep.verify("witness maps the first display to the second", true);
        break;
      }
    res["group_order"] = G.size();
  } else if (o.action == "hodge") {
    res["hodge"] = hodge_to_json(hodge_filtration(d));
    res["effective"] = display_is_effective(d);
  } else if (o.action == "tensor") {
    const Display d2 = display_from_json(need(o.other, "--other"), "$");
    res["display"] = display_to_json(display_tensor(d, d2));
  } else if (o.action == "dual") {
    const Display dd = display_dual(d);
    rep.verify("dual of dual is the display", display_dual(dd) == d);
    res["display"] = display_to_json(dd);
  }
  return rep;
}

Report cmd_zip(const Opts& o) {
  Report rep("zip " + o.action, "displays/fzip", o);
  json& res = rep.result();
  if (o.action == "from") {
    const json j = need(o.spec, "--spec");
    const FZip z = fzip_from_json(j.contains("fzip") ? j["fzip"] : j, "$");
    FramePtr f = build_zip_frame(z.R);
    const Display d = from_fzip(z, f);
    res["display"] = display_to_json(d);
    return rep;
  }
  const Display d = display_from_json(need(o.spec, "--spec"), "$");
  const FZip z = to_fzip(d);
  res["fzip"] = fzip_to_json(z);
  if (o.action == "roundtrip") {
    const Display back = from_fzip(z, d.frame);
    rep.verify("from_fzip(to_fzip(D)) = D", back == d);
    const FZip z2 = to_fzip(back);
    rep.verify("to_fzip(from_fzip(Z)) = Z", fzip_to_json(z2) == fzip_to_json(z));
  }
  return rep;
}

Report cmd_ortho(const Opts& o) {
  Report rep("ortho " + o.action, "display_groups/orthogonal", o);
  json& res = rep.result();
  if (o.action == "check") {
    const Display d = display_from_json(need(o.spec, "--spec"), "$");
    const OrthCheck c = verify_orth(d.phi);
    rep.verify("U^t J U = J", c.ok, c.witness);
    res["orthogonal"] = c.ok;
  } else if (o.action == "normalize") {
    const json j = need(o.spec, "--spec");
    if (!j.contains("frame") || !j.contains("mu") || !j.contains("gram"))
      fail(ErrorKind::Schema, "$: expected {\"frame\", \"mu\", \"gram\"}");
    FramePtr f = frame_from_json(j["frame"], "$.frame");
    std::vector<int> mu = j["mu"].get<std::vector<int>>();
    json g = j["gram"];
    std::vector<int> neg;
    for (int v : mu) neg.push_back(-v);
    const GradedMatrix B = graded_from_json(f, {{"row", neg}, {"col", mu}, {"entries", g}}, "$.gram");
    const GramNormalization n = normalize_gram(B);
    rep.verify("A^t B A = J", gram_transform(B, n.A) == gram_J(f, mu));
    rep.verify("A in the display group", in_display_group(n.A));
    res["A"] = graded_to_json(n.A);
    res["iterations"] = n.iterations;
  } else if (o.action == "classify") {
    FramePtr f = frame_from_json(need(o.spec, "--spec"), "$");
    OrbitReport orb = classify_orth_orbits(f, parse_mu(o.mu), budget_or(o, kDefaultOrbitBudget));
    res = orbit_json(orb);
  }
  return rep;
}

Report cmd_k3(const Opts& o) {
  Report rep("k3 " + o.action, "display_groups/k3_form", o);
  const Display d = display_from_json(need(o.spec, "--spec"), "$");
  const int shift = o.action == "pack" ? -1 : 1;
  const Display t = display_twist(d, shift);
  const std::vector<int>& stored = o.action == "pack" ? t.mu : d.mu;
  if (!is_orth_type(stored) || stored.front() != 1 || stored.back() != -1)
    fail(ErrorKind::UnsupportedType, "K3 displays have type (1,0,...,0,-1) in stored form");
  rep.verify("U^t J U = J", verify_orth(d.phi).ok);
  rep.result()["display"] = display_to_json(t);
  return rep;
}

Report cmd_deform(const Opts& o) {
  Report rep("deform " + o.action, "deformation", o);
  json& res = rep.result();
  const Display d = display_from_json(need(o.display, "--display"), "$");
  const Ext ext = ext_from_json(need(o.ext, "--ext"), "$");
  const std::size_t m = o.m ? o.m : d.frame->m;
  const GroupKind kind = o.group == "O" ? GroupKind::O : GroupKind::GL;
  if (o.action == "k3") {
    const K3Deformation k = k3_deform(d, ext, m);
    res["count"] = k.displays.size();
    res["J_size"] = ext->J_size();
    json list = json::array();
    for (std::size_t i = 0; i < k.displays.size(); ++i) {
      list.push_back({{"lift", hodge_lift_to_json(k.lifts[i])}, {"display", display_to_json(k.displays[i])}});
      rep.verify("deformation " + std::to_string(i) + " orthogonal", verify_orth(k.displays[i].phi).ok);
      rep.verify("deformation " + std::to_string(i) + " reduces to the input", reduce_mat(ext, k.displays[i].phi) == d.phi);
    }
    std::set<std::uint64_t> distinct;
    for (const auto& x : k.displays) distinct.insert(wmat_index(x.phi));
    rep.verify("matrices pairwise distinct", distinct.size() == k.displays.size());
    res["deformations"] = list;
    res["base"] = display_to_json(k.base);
    return rep;
  }
  const Thickening th = build_thickening(ext, m);
  Display base = d;
  if (d.frame->same_as(*th.target)) {
    base = lift_display(th, d, kind);
    rep.verify("lift reduces to the input", reduce_display(th, base) == d);
    if (kind == GroupKind::O) rep.verify("lift orthogonal", verify_orth(base.phi).ok);
  } else if (!d.frame->same_as(*th.source)) {
    fail(ErrorKind::DescriptorMismatch, "display must live over W_m(A) or the relative frame");
  }
  if (o.action == "lift") {
    res["lift"] = display_to_json(base);
    return rep;
  }
  // hodge
  const HodgeThickening h = build_hodge_thickening(ext, m);
  base.frame = h.S;
  const auto lifts = enumerate_hodge_lifts(hodge_filtration(base), ext, o.selfdual, budget_or(o, 10'000'000ULL));
  res["count"] = lifts.size();
  json list = json::array();
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    const AppliedLift a = apply_hodge_lift(h, base, lifts[i]);
    rep.verify("lift " + std::to_string(i) + " isomorphic over the relative frame", display_act(base, a.z).phi == a.display.phi);
    list.push_back({{"lift", hodge_lift_to_json(lifts[i])}, {"display", display_to_json(a.display)}});
  }
  res["lifts"] = list;
  return rep;
}

Report cmd_selftest(const Opts& o) {
  Report rep("selftest", "suite", o);
  const Ring f3 = ArtinRing::field_ring(FiniteField(3, 1, {}));
  const Ring f3e = ArtinRing::make(FiniteField(3, 1, {}), {"e"}, {"e^2"});
  const Ext ext = std::make_shared<const SquareZeroExtension>(SquareZeroExtension::make(f3e, {"e"}));
  const auto& cache = WittPolyCache::get(3);
  bool ghost = true;
  for (int n = 0; n <= 3; ++n)
    for (auto fam : {WittFamily::Sum, WittFamily::Product, WittFamily::Negation, WittFamily::Frobenius})
      ghost = ghost && cache.verify_ghost(fam, n);
  rep.verify("ghost identities, p = 3, n <= 3", ghost);
  for (const FramePtr& f : {build_truncated_witt_frame(f3, 2), build_zip_frame(f3), build_relative_frame(ext, 2)})
    rep.verify(std::string("frame axioms: ") + frame_kind_name(f->kind), frame_axiom_check(*f, kDefaultAxiomBudget, o.seed).ok());
  const auto orb = classify_orbits(build_zip_frame(f3), {1, 0});
  rep.verify("GL_2 orbits of type (1,0) over the F_3 zip frame", orb.reps.size() == 6, std::to_string(orb.reps.size()));
  auto wa = build_truncated_witt_frame(f3, 2);
  WMat U = wmat_zero(f3, 2, 4, 4);
  for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 2}, {1, 0}, {2, 3}, {3, 1}}) U.at(i, j) = witt_one(f3, 2);
  const auto k = k3_deform(Display{wa, {1, 0, 0, -1}, U}, ext, 2);
  rep.verify("K3 deformations over F_3[e]", k.displays.size() == 9, std::to_string(k.displays.size()));
  return rep;
}

void emit(const Report& r, const Opts& o) {
  const std::string text = r.j.dump(2) + "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) fail(ErrorKind::Schema, o.out + ": cannot write");
    f << text;
  }
  if (o.json_out) {
    std::cout << text;
    return;
  }
  if (r.j["result"].contains("elements")) {
    for (const auto& e : r.j["result"]["elements"]) std::cout << e.dump() << "\n";
    return;
  }
  std::cout << r.j["command"].get<std::string>() << ": " << (r.ok ? "ok" : "FAILED") << "\n";
  for (const auto& v : r.j["verification"])
    std::cout << "  [" << (v["ok"].get<bool>() ? "ok" : "FAIL") << "] " << v["check"].get<std::string>()
              << (v["detail"].get<std::string>().empty() ? "" : "  " + v["detail"].get<std::string>()) << "\n";
  for (auto it = r.j["result"].begin(); it != r.j["result"].end(); ++it)
    if (it.value().is_primitive()) std::cout << "  " << it.key() << " = " << it.value().dump() << "\n";
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::BudgetExceeded:
    case ErrorKind::EnumerationTooLarge:
      return 3;
    case ErrorKind::Internal:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with higher frames and displays over finite local rings"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Opts o;

  auto common = [&](CLI::App* s) {
    s->add_option("--spec", o.spec, "input JSON file");
    s->add_option("--seed", o.seed, "seed for sampled checks");
    s->add_option("--budget", o.budget, "enumeration cap");
    s->add_option("--out", o.out, "write the JSON report here");
    s->add_flag("--json", o.json_out, "print the JSON report");
  };
  auto action = [&](CLI::App* s, std::vector<std::string> acts) {
    s->add_option("action", o.action)->required()->check(CLI::IsMember(acts));
  };

  std::map<std::string, std::function<Report(const Opts&)>> run;
  auto* ring = app.add_subcommand("ring", "ring descriptors");
  action(ring, {"info", "enumerate", "check"});
  run["ring"] = cmd_ring;
  auto* witt = app.add_subcommand("witt", "Witt vector arithmetic");
  action(witt, {"add", "mul", "frob", "v", "teich"});
  witt->add_option("--ring", o.ring, "ring descriptor file")->required();
  witt->add_option("--m", o.m, "length")->required();
  witt->add_option("--x", o.x, "first operand (JSON or @file)");
  witt->add_option("--y", o.y, "second operand (JSON or @file)");
  run["witt"] = cmd_witt;
  auto* frame = app.add_subcommand("frame", "frames");
  action(frame, {"build", "check"});
  run["frame"] = cmd_frame;
  auto* display = app.add_subcommand("display", "displays");
  action(display, {"act", "iso", "classify", "hodge", "tensor", "dual"});
  display->add_option("--other", o.other, "second display file");
  display->add_option("--element", o.element, "group element file");
  display->add_option("--mu", o.mu, "type, comma separated");
  display->add_option("--group", o.group, "GL or O")->check(CLI::IsMember({"GL", "O"}));
  run["display"] = cmd_display;
  auto* zip = app.add_subcommand("zip", "F-zips");
  action(zip, {"to", "from", "roundtrip"});
  run["zip"] = cmd_zip;
  auto* ortho = app.add_subcommand("ortho", "orthogonal displays");
  action(ortho, {"check", "normalize", "classify"});
  ortho->add_option("--mu", o.mu, "type, comma separated");
  run["ortho"] = cmd_ortho;
  auto* k3 = app.add_subcommand("k3", "K3 twist conversion");
  action(k3, {"pack", "unpack"});
  run["k3"] = cmd_k3;
  auto* deform = app.add_subcommand("deform", "deformations across B -> A");
  action(deform, {"lift", "hodge", "k3"});
  deform->add_option("--display", o.display, "display file")->required();
  deform->add_option("--ext", o.ext, "extension file")->required();
  deform->add_option("--m", o.m, "Witt length");
  deform->add_option("--group", o.group, "GL or O")->check(CLI::IsMember({"GL", "O"}));
  deform->add_flag("--selfdual", o.selfdual, "only self-dual Hodge lifts");
  run["deform"] = cmd_deform;
  auto* selftest = app.add_subcommand("selftest", "quick internal verification");
  run["selftest"] = cmd_selftest;
  for (auto* s : {ring, witt, frame, display, zip, ortho, k3, deform, selftest}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Report r = run.at(name)(o);
    emit(r, o);
    return r.ok ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const json::exception& e) {
    std::cerr << "error: schema: " << e.what() << "\n";
    return 2;
  }
}
