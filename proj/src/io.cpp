#include "hdisp/io.hpp"

#include <fstream>
#include <sstream>

namespace hdisp {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) { fail(ErrorKind::Schema, path + ": " + msg); }

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path, std::string("missing field \"") + key + "\"");
  return *it;
}

long long as_int(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      bad(path, "expected an integer, got \"" + s + "\"");
    }
    if (used != s.size()) bad(path, "expected an integer, got \"" + s + "\"");
    return v;
  }
  bad(path, "expected an integer");
}

std::vector<int> int_list(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(static_cast<int>(as_int(j[i], path + "[" + std::to_string(i) + "]")));
  return out;
}

std::vector<std::string> str_list(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) bad(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

template <class F>
auto guarded(const std::string& path, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    bad(path, e.what());
  }
}

}  // namespace

json load_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) fail(ErrorKind::Schema, file + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Schema, file + ": " + e.what());
  }
}

json parse_json_arg(const std::string& text) {
  if (!text.empty() && text[0] == '@') return load_json_file(text.substr(1));
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Schema, std::string("argument: ") + e.what());
  }
}

Ring ring_from_json(const json& j, const std::string& path) {
  const int p = static_cast<int>(as_int(field(j, "p", path), path + ".p"));
  const int f = j.contains("f") ? static_cast<int>(as_int(j["f"], path + ".f")) : 1;
  std::vector<int> modulus;
  if (j.contains("modulus")) modulus = int_list(j["modulus"], path + ".modulus");
  std::vector<std::string> vars, ideal;
  if (j.contains("vars")) vars = str_list(j["vars"], path + ".vars");
  if (j.contains("ideal")) ideal = str_list(j["ideal"], path + ".ideal");
  return guarded(path, [&] {
    if (f > 1 && modulus.empty()) modulus = FiniteField::default_modulus(p, f);
    FiniteField F(p, f, modulus);
    if (vars.empty()) {
      if (!ideal.empty()) bad(path, "ideal given without variables");
      return ArtinRing::field_ring(F);
    }
    return ArtinRing::make(F, vars, ideal);
  });
}

json ring_to_json(const Ring& r) {
  json j;
  j["p"] = r->p();
  j["f"] = r->field().f();
  j["modulus"] = r->field().modulus();
  j["vars"] = r->vars();
  json ideal = json::array();
  for (const auto& g : r->ideal_gens()) ideal.push_back(r->monomial_name(g));
  j["ideal"] = ideal;
  return j;
}

RingElem elem_from_json(const Ring& r, const json& j, const std::string& path) {
  const FiniteField& F = r->field();
  auto coef = [&](const json& c, const std::string& at) -> Coef {
    if (c.is_array()) {
      std::vector<int> d = int_list(c, at);
      if (static_cast<int>(d.size()) > F.f()) bad(at, "too many digits for F_q");
      for (auto& x : d) x = ((x % F.p()) + F.p()) % F.p();
      d.resize(F.f(), 0);
      return F.from_digits(d);
    }
    return F.from_int(as_int(c, at));
  };
  if (j.is_number_integer() || j.is_string()) return ring_from_coef(r, coef(j, path));
  if (!j.is_object()) bad(path, "expected a coefficient map");
  RingElem out = ring_zero(r);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string at = path + "[\"" + it.key() + "\"]";
    const Monomial mono = guarded(at, [&] { return r->parse_monomial(it.key()); });
    if (r->in_ideal(mono)) bad(at, "monomial lies in the ideal");
    const int idx = r->basis_index(mono);
    out.c[idx] = F.add(out.c[idx], coef(it.value(), at));
  }
  return out;
}

json elem_to_json(const RingElem& a) {
  const Ring& r = a.ring;
  const FiniteField& F = r->field();
  json j = json::object();
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    if (F.f() == 1)
      j[r->monomial_name(static_cast<int>(i))] = std::to_string(a.c[i]);
    else
      j[r->monomial_name(static_cast<int>(i))] = F.digits(a.c[i]);
  }
  return j;
}

WittVec witt_from_json(const Ring& r, std::size_t m, const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of ring elements");
  if (j.size() != m) bad(path, "expected " + std::to_string(m) + " Witt components, got " + std::to_string(j.size()));
  std::vector<RingElem> c;
  for (std::size_t i = 0; i < m; ++i) c.push_back(elem_from_json(r, j[i], path + "[" + std::to_string(i) + "]"));
  return witt_from_components(r, c);
}

json witt_to_json(const WittVec& x) {
  json j = json::array();
  for (const auto& c : x.c) j.push_back(elem_to_json(c));
  return j;
}

WMat wmat_from_json(const Ring& r, std::size_t m, const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) bad(path, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) bad(path + "[0]", "expected a row");
  const std::size_t cols = j[0].size();
  WMat a = wmat_zero(r, m, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != cols) bad(at, "ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) a.at(i, k) = witt_from_json(r, m, j[i][k], at + "[" + std::to_string(k) + "]");
  }
  return a;
}

json wmat_to_json(const WMat& a) {
  json j = json::array();
  for (std::size_t i = 0; i < a.rows; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < a.cols; ++k) row.push_back(witt_to_json(a.at(i, k)));
    j.push_back(row);
  }
  return j;
}

Ext ext_from_json(const json& j, const std::string& path) {
  Ring B = ring_from_json(field(j, "ring", path), path + ".ring");
  std::vector<std::string> J = str_list(field(j, "J", path), path + ".J");
  return guarded(path, [&] { return std::make_shared<const SquareZeroExtension>(SquareZeroExtension::make(B, J)); });
}

json ext_to_json(const Ext& e) {
  json j;
  j["ring"] = ring_to_json(e->B);
  json J = json::array();
  for (int i : e->J_basis) J.push_back(e->B->monomial_name(i));
  j["J"] = J;
  return j;
}

FramePtr frame_from_json(const json& j, const std::string& path) {
  const json& k = field(j, "kind", path);
  if (!k.is_string()) bad(path + ".kind", "expected a string");
  const std::string kind = k.get<std::string>();
  auto m_of = [&]() -> std::size_t {
    const long long m = as_int(field(j, "m", path), path + ".m");
    if (m < 1) bad(path + ".m", "m must be positive");
    return static_cast<std::size_t>(m);
  };
  if (kind == "witt") {
    Ring r = ring_from_json(field(j, "ring", path), path + ".ring");
    const std::size_t m = m_of();
    return guarded(path, [&] { return build_truncated_witt_frame(r, m); });
  }
  if (kind == "zip") {
    Ring r = ring_from_json(field(j, "ring", path), path + ".ring");
    return guarded(path, [&] { return build_zip_frame(r); });
  }
  if (kind == "relative") {
    Ext e = ext_from_json(field(j, "ext", path), path + ".ext");
    const std::size_t m = m_of();
    return guarded(path, [&] { return build_relative_frame(e, m); });
  }
  if (kind == "tautological") {
    Ring r = ring_from_json(field(j, "ring", path), path + ".ring");
    return guarded(path, [&] { return build_tautological_frame(r); });
  }
  bad(path + ".kind", "unknown frame kind \"" + kind + "\"");
}

json frame_to_json(const Frame& f) {
  json j;
  switch (f.kind) {
    case FrameKind::Witt:
      j["kind"] = "witt";
      j["ring"] = ring_to_json(f.ring);
      j["m"] = f.m;
      break;
    case FrameKind::Zip:
      j["kind"] = "zip";
      j["ring"] = ring_to_json(f.ring);
      break;
    case FrameKind::Relative:
      j["kind"] = "relative";
      j["ext"] = ext_to_json(f.ext);
      j["m"] = f.m;
      break;
    case FrameKind::Tautological:
      j["kind"] = "tautological";
      j["ring"] = ring_to_json(f.ring);
      break;
  }
  return j;
}

PElem pelem_from_json(const Frame& f, const json& j, const std::string& path) {
  PElem u = f.p_zero();
  if (!j.is_object()) bad(path, "expected a P element {\"a\": ..., \"x\": ...}");
  if (j.contains("a")) u.a = witt_from_json(f.ring, u.a.length(), j["a"], path + ".a");
  if (j.contains("x")) {
    if (f.kind != FrameKind::Relative) bad(path + ".x", "only relative frames have an x part");
    u.x = elem_from_json(f.ring, j["x"], path + ".x");
    if (!f.ext->in_J(u.x)) bad(path + ".x", "x must lie in J");
  }
  return u;
}

json pelem_to_json(const Frame& f, const PElem& u) {
  json j;
  j["a"] = witt_to_json(u.a);
  if (f.kind == FrameKind::Relative) j["x"] = elem_to_json(u.x);
  return j;
}

GradedMatrix graded_from_json(const FramePtr& f, const json& j, const std::string& path) {
  const std::vector<int> row = int_list(field(j, "row", path), path + ".row");
  const std::vector<int> col = int_list(field(j, "col", path), path + ".col");
  const json& e = field(j, "entries", path);
  if (!e.is_array() || e.size() != row.size()) bad(path + ".entries", "expected " + std::to_string(row.size()) + " rows");
  GradedMatrix a = gm_zero(f, row, col);
  for (std::size_t i = 0; i < row.size(); ++i) {
    const std::string ri = path + ".entries[" + std::to_string(i) + "]";
    if (!e[i].is_array() || e[i].size() != col.size()) bad(ri, "expected " + std::to_string(col.size()) + " entries");
    for (std::size_t k = 0; k < col.size(); ++k) {
      const std::string at = ri + "[" + std::to_string(k) + "]";
      const int d = a.degree(i, k);
      a.at(i, k) = d >= 1 ? g_pos(d, pelem_from_json(*f, e[i][k], at)) : g_scalar(d, witt_from_json(f->ring, f->m, e[i][k], at));
    }
  }
  return a;
}

json graded_to_json(const GradedMatrix& a) {
  json j;
  j["row"] = a.row;
  j["col"] = a.col;
  json e = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json r = json::array();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const GradedElem& x = a.at(i, k);
      r.push_back(x.deg >= 1 ? pelem_to_json(*a.frame, x.x) : witt_to_json(x.s));
    }
    e.push_back(r);
  }
  j["entries"] = e;
  return j;
}

Display display_from_json(const json& j, const std::string& path) {
  FramePtr f = frame_from_json(field(j, "frame", path), path + ".frame");
  std::vector<int> mu = int_list(field(j, "mu", path), path + ".mu");
  WMat phi = wmat_from_json(f->ring, f->m, field(j, "phi", path), path + ".phi");
  return guarded(path, [&] { return make_display(f, mu, phi); });
}

json display_to_json(const Display& d) {
  json j;
  j["frame"] = frame_to_json(*d.frame);
  j["mu"] = d.mu;
  j["phi"] = wmat_to_json(d.phi);
  return j;
}

json fzip_to_json(const FZip& z) {
  json j;
  j["ring"] = ring_to_json(z.R);
  j["n"] = z.n;
  j["c_weights"] = z.c_weights;
  j["d_weights"] = z.d_weights;
  j["C"] = wmat_to_json(z.C);
  j["D"] = wmat_to_json(z.D);
  json a = json::array();
  for (const auto& [w, m] : z.alpha) a.push_back({{"weight", w}, {"map", wmat_to_json(m)}});
  j["alpha"] = a;
  return j;
}

FZip fzip_from_json(const json& j, const std::string& path) {
  FZip z;
  z.R = ring_from_json(field(j, "ring", path), path + ".ring");
  z.n = static_cast<std::size_t>(as_int(field(j, "n", path), path + ".n"));
  z.c_weights = int_list(field(j, "c_weights", path), path + ".c_weights");
  z.d_weights = int_list(field(j, "d_weights", path), path + ".d_weights");
  z.C = wmat_from_json(z.R, 1, field(j, "C", path), path + ".C");
  z.D = wmat_from_json(z.R, 1, field(j, "D", path), path + ".D");
  const json& a = field(j, "alpha", path);
  if (!a.is_array()) bad(path + ".alpha", "expected an array");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string at = path + ".alpha[" + std::to_string(i) + "]";
    const int w = static_cast<int>(as_int(field(a[i], "weight", at), at + ".weight"));
    z.alpha.emplace_back(w, wmat_from_json(z.R, 1, field(a[i], "map", at), at + ".map"));
  }
  if (z.c_weights.size() != z.n || z.d_weights.size() != z.n) bad(path, "weight lists must have length n");
  if (!fzip_valid(z)) bad(path, "not a valid F-zip");
  return z;
}

json hodge_to_json(const HodgeFiltration& h) {
  json j;
  j["lo"] = h.lo;
  json levels = json::array();
  for (std::size_t k = 0; k < h.E.size(); ++k) {
    const int n = h.lo + static_cast<int>(k);
    levels.push_back({{"level", n}, {"rank", h.rank(n)}, {"basis", wmat_to_json(h.E[k])}});
  }
  j["levels"] = levels;
  return j;
}

json hodge_lift_to_json(const HodgeLift& l) {
  json j;
  j["mu"] = l.mu;
  json X = json::array();
  for (const auto& [lvl, m] : l.X) X.push_back({{"level", lvl}, {"X", wmat_to_json(m)}});
  j["graphs"] = X;
  j["selfdual"] = hodge_lift_selfdual(l);
  return j;
}

}  // namespace hdisp
