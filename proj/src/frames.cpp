#include "hdisp/frames.hpp"

#include <set>
#include <sstream>

namespace hdisp {

namespace {

bool x_zero(const PElem& u) { return !u.x.ring || u.x.is_zero(); }

std::uint64_t J_index(const SquareZeroExtension& ext, const RingElem& b) {
  const std::uint64_t q = static_cast<std::uint64_t>(ext.B->field().q());
  std::uint64_t idx = 0;
  for (int k : ext.J_basis) idx = idx * q + b.c[k];
  return idx;
}

WittVec map_comps(const WittVec& s, const Ring& target, const std::function<RingElem(const RingElem&)>& f) {
  WittVec out{target, {}};
  out.c.reserve(s.c.size());
  for (const auto& a : s.c) out.c.push_back(f(a));
  return out;
}

// Components shifted down one place with a zero appended.
WittVec shift_down(const WittVec& k) {
  WittVec out = k;
  for (std::size_t i = 0; i + 1 < k.c.size(); ++i) out.c[i] = k.c[i + 1];
  out.c.back() = ring_zero(k.ring);
  return out;
}

}  // namespace

bool operator==(const PElem& u, const PElem& v) {
  if (!(u.a == v.a)) return false;
  const bool zu = x_zero(u), zv = x_zero(v);
  if (zu || zv) return zu && zv;
  return u.x == v.x;
}

bool operator<(const PElem& u, const PElem& v) {
  if (u.a != v.a) return u.a < v.a;
  const bool zu = x_zero(u), zv = x_zero(v);
  if (zu || zv) return zu && !zv;
  return u.x < v.x;
}

std::string to_string(const PElem& u) {
  if (!u.x.ring) return to_string(u.a);
  return "(" + to_string(u.a) + "; " + to_string(u.x) + ")";
}

const char* frame_kind_name(FrameKind k) {
  switch (k) {
    case FrameKind::Witt:
      return "witt";
    case FrameKind::Zip:
      return "zip";
    case FrameKind::Relative:
      return "relative";
    case FrameKind::Tautological:
      return "tautological";
  }
  return "?";
}

PElem Frame::p_zero() const {
  PElem u{witt_zero(ring, m), {}};
  if (kind == FrameKind::Relative) u.x = ring_zero(ring);
  return u;
}

PElem Frame::p_add(const PElem& u, const PElem& v) const {
  PElem w{witt_add(u.a, v.a), {}};
  if (kind == FrameKind::Relative) w.x = ring_add(u.x, v.x);
  return w;
}

PElem Frame::p_neg(const PElem& u) const {
  PElem w{witt_neg(u.a), {}};
  if (kind == FrameKind::Relative) w.x = ring_neg(u.x);
  return w;
}

std::uint64_t Frame::p_size() const {
  switch (kind) {
    case FrameKind::Tautological:
      return 1;
    case FrameKind::Relative:
      return witt_size(ring, m) * ext->J_size();
    default:
      return witt_size(ring, m);
  }
}

PElem Frame::p_at(std::uint64_t idx) const {
  switch (kind) {
    case FrameKind::Tautological:
      return p_zero();
    case FrameKind::Relative: {
      const std::uint64_t js = ext->J_size();
      return PElem{witt_at(ring, m, idx / js), ext->enumerate_J()[idx % js]};
    }
    default:
      return PElem{witt_at(ring, m, idx), {}};
  }
}

std::uint64_t Frame::p_index(const PElem& u) const {
  switch (kind) {
    case FrameKind::Tautological:
      return 0;
    case FrameKind::Relative:
      return witt_index(u.a) * ext->J_size() + J_index(*ext, u.x);
    default:
      return witt_index(u.a);
  }
}

Enumeration<PElem> Frame::enumerate_P(std::uint64_t cap) const {
  const std::uint64_t n = p_size();
  if (n > cap) fail(ErrorKind::EnumerationTooLarge, "positive part has " + std::to_string(n) + " elements");
  const Frame self = *this;
  return Enumeration<PElem>(n, [self](std::uint64_t i) { return self.p_at(i); });
}

PElem Frame::random_P(std::mt19937_64& rng) const {
  if (kind == FrameKind::Tautological) return p_zero();
  PElem u{random_witt(ring, m, rng), {}};
  if (kind == FrameKind::Relative) {
    std::uniform_int_distribution<std::uint64_t> d(0, ext->J_size() - 1);
    u.x = ext->enumerate_J()[d(rng)];
  }
  return u;
}

WittVec Frame::t_pow(const PElem& u, int n) const {
  if (n < 1) fail(ErrorKind::Precondition, "t_pow needs n >= 1");
  PElem v = u;
  for (int k = 1; k < n; ++k) v = tP(v);
  return t1(v);
}

bool Frame::same_as(const Frame& o) const {
  return kind == o.kind && m == o.m && ring->same_as(*o.ring);
}

FramePtr build_truncated_witt_frame(const Ring& R, std::size_t m) {
  if (m < 1) fail(ErrorKind::Precondition, "Witt frame needs m >= 1");
  auto f = std::make_shared<Frame>();
  f->kind = FrameKind::Witt;
  f->p = R->p();
  f->m = m;
  f->ring = R;
  f->R = R;
  f->t1 = [m](const PElem& u) { return truncate(verschiebung(u.a), m); };
  f->tP = [](const PElem& u) { return PElem{witt_p_times(u.a), {}}; };
  f->nu = [](const PElem& u, const PElem& v) { return PElem{witt_mul(u.a, v.a), {}}; };
  f->act = [](const WittVec& w, const PElem& u) { return PElem{witt_mul(witt_frobenius_fixed(w), u.a), {}}; };
  f->sigma0 = [](const WittVec& w) { return witt_frobenius_fixed(w); };
  f->sigmadot = [](const PElem& u) { return u.a; };
  f->to_R = [](const WittVec& w) { return w.c[0]; };
  return f;
}

FramePtr build_zip_frame(const Ring& R) {
  auto f = std::make_shared<Frame>();
  f->kind = FrameKind::Zip;
  f->p = R->p();
  f->m = 1;
  f->ring = R;
  f->R = R;
  f->t1 = [R](const PElem&) { return witt_zero(R, 1); };
  f->tP = [R](const PElem&) { return PElem{witt_zero(R, 1), {}}; };
  f->nu = [](const PElem& u, const PElem& v) { return PElem{witt_mul(u.a, v.a), {}}; };
  f->act = [](const WittVec& w, const PElem& u) {
    return PElem{witt_from_components(u.a.ring, {ring_mul(frobenius(w.c[0]), u.a.c[0])}), {}};
  };
  f->sigma0 = [](const WittVec& w) { return witt_from_components(w.ring, {frobenius(w.c[0])}); };
  f->sigmadot = [](const PElem& u) { return u.a; };
  f->to_R = [](const WittVec& w) { return w.c[0]; };
  return f;
}

FramePtr build_relative_frame(const Ext& ext, std::size_t m) {
  const Ring B = ext->B;
  if (B->p() < 3) fail(ErrorKind::UnsupportedCharacteristic, "relative frames need p >= 3");
  if (m < 2) fail(ErrorKind::Precondition, "relative frames need m >= 2");
  auto f = std::make_shared<Frame>();
  f->kind = FrameKind::Relative;
  f->p = B->p();
  f->m = m;
  f->ring = B;
  f->R = ext->A;
  f->ext = ext;
  // v(a) + [x] = (x, a_0, ..., a_{m-2})
  f->t1 = [m](const PElem& u) {
    WittVec w = truncate(verschiebung(u.a), m);
    w.c[0] = u.x;
    return w;
  };
  f->tP = [](const PElem& u) { return PElem{witt_p_times(u.a), u.x}; };
  f->nu = [B](const PElem& u, const PElem& v) { return PElem{witt_mul(u.a, v.a), ring_zero(B)}; };
  f->act = [](const WittVec& w, const PElem& u) {
    return PElem{witt_mul(witt_frobenius_fixed(w), u.a), ring_mul(w.c[0], u.x)};
  };
  f->sigma0 = [](const WittVec& w) { return witt_frobenius_fixed(w); };
  f->sigmadot = [](const PElem& u) { return u.a; };
  f->to_R = [ext](const WittVec& w) { return ext->proj(w.c[0]); };
  return f;
}

FramePtr build_tautological_frame(const Ring& A) {
  auto f = std::make_shared<Frame>();
  f->kind = FrameKind::Tautological;
  f->p = A->p();
  f->m = 1;
  f->ring = A;
  f->R = A;
  f->t1 = [A](const PElem&) { return witt_zero(A, 1); };
  f->tP = [A](const PElem&) { return PElem{witt_zero(A, 1), {}}; };
  f->nu = [A](const PElem&, const PElem&) { return PElem{witt_zero(A, 1), {}}; };
  f->act = [A](const WittVec&, const PElem&) { return PElem{witt_zero(A, 1), {}}; };
  f->sigma0 = [](const WittVec& w) { return witt_from_components(w.ring, {frobenius(w.c[0])}); };
  f->sigmadot = [A](const PElem&) { return witt_zero(A, 1); };
  f->to_R = [](const WittVec& w) { return w.c[0]; };
  return f;
}

bool AxiomReport::ok() const {
  for (const auto& r : results)
    if (!r.ok) return false;
  return true;
}

const AxiomResult* AxiomReport::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

// Sample sets over S_0 and P, exhaustive when the budget allows.
struct Samples {
  std::vector<WittVec> S;
  std::vector<PElem> P;
  bool exhaustive = false;
};

Samples draw(const Frame& f, std::uint64_t budget, std::uint64_t seed) {
  Samples out;
  const std::uint64_t ns = f.s_size(), np = f.p_size();
  const bool fits = ns != ~0ULL && np != ~0ULL && ns <= budget && np <= budget && ns * np <= budget &&
                    np * np <= 4 * budget && ns * ns <= 4 * budget;
  if (fits) {
    out.exhaustive = true;
    for (auto s : f.enumerate_S0(budget)) out.S.push_back(s);
    for (auto u : f.enumerate_P(budget)) out.P.push_back(u);
    return out;
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 120; ++i) out.S.push_back(f.random_S0(rng));
  for (int i = 0; i < 120; ++i) out.P.push_back(f.random_P(rng));
  out.S.push_back(f.s_zero());
  out.S.push_back(f.s_one());
  out.P.push_back(f.p_zero());
  return out;
}

class Checker {
 public:
  AxiomReport report;

  void check(const std::string& name, bool ok, const std::function<std::string()>& witness) {
    AxiomResult* r = slot(name);
    ++r->checked;
    if (!ok && r->ok) {
      r->ok = false;
      r->witness = witness();
    }
  }
  void touch(const std::string& name) { slot(name); }

 private:
  AxiomResult* slot(const std::string& name) {
    for (auto& r : report.results)
      if (r.name == name) return &r;
    report.results.push_back(AxiomResult{name, 0, true, ""});
    return &report.results.back();
  }
};

bool is_p_multiple(const Frame& f, const WittVec& d, const std::set<std::uint64_t>& ppowers) {
  // p*y = (0, y_0^p, ..., y_{m-2}^p) over an F_p-algebra
  if (!d.c[0].is_zero()) return false;
  for (std::size_t i = 1; i < d.c.size(); ++i)
    if (!ppowers.count(elem_index(d.c[i]))) return false;
  (void)f;
  return true;
}

}  // namespace

AxiomReport frame_axiom_check(const Frame& f, std::uint64_t budget, std::uint64_t seed) {
  Samples smp = draw(f, budget, seed);
  Checker c;
  c.report.exhaustive = smp.exhaustive;
  const auto& S = smp.S;
  const auto& P = smp.P;
  const long long p = f.p;
  for (const char* n : {"t-linear", "t1-module", "t1-product", "sigma0-frobenius-lift", "sigma0-t1", "sigmadot-tP",
                        "sigmadot-nu", "sigmadot-act", "additive", "module", "nu-symmetric", "p-radical",
                        "R-quotient"})
    c.touch(n);

  std::set<std::uint64_t> ppowers;
  if (f.ring->size() <= budget)
    for (auto a : enumerate_ring(f.ring, budget)) ppowers.insert(elem_index(frobenius(a)));

  c.check("p-radical", f.residue(f.s_int(p)) == 0, [] { return std::string("p is a unit"); });

  // pairs in P x P
  for (std::size_t i = 0; i < P.size(); ++i) {
    const PElem& a = P[i];
    const WittVec t1a = f.t1(a);
    const WittVec sda = f.sigmadot(a);
    for (std::size_t j = 0; j < P.size(); ++j) {
      const PElem& x = P[j];
      const PElem ax = f.nu(a, x);
      const PElem tpax = f.tP(ax);
      auto wit = [&] { return "a=" + to_string(a) + " x=" + to_string(x); };
      c.check("t-linear", f.act(f.t1(x), a) == tpax, wit);
      c.check("t-linear", f.nu(a, f.tP(x)) == tpax, wit);
      c.check("t1-product", witt_mul(t1a, f.t1(x)) == f.t1(tpax), wit);
      c.check("sigmadot-nu", f.sigmadot(ax) == witt_mul(sda, f.sigmadot(x)), wit);
      c.check("nu-symmetric", ax == f.nu(x, a), wit);
      const PElem sum = f.p_add(a, x);
      c.check("additive",
              f.t1(sum) == witt_add(t1a, f.t1(x)) && f.tP(sum) == f.p_add(f.tP(a), f.tP(x)) &&
                  f.sigmadot(sum) == witt_add(sda, f.sigmadot(x)),
              wit);
      if (!smp.exhaustive || j % 7 == i % 7) {
        const PElem& y = P[(i * 13 + j * 5 + 1) % P.size()];
        c.check("additive", f.nu(sum, y) == f.p_add(f.nu(a, y), f.nu(x, y)), wit);
      }
    }
    c.check("sigma0-t1", f.sigma0(t1a) == witt_mul_int(sda, p), [&] { return "x=" + to_string(a); });
    c.check("sigmadot-tP", f.sigmadot(f.tP(a)) == witt_mul_int(sda, p), [&] { return "x=" + to_string(a); });
    c.check("R-quotient", f.to_R(t1a).is_zero(), [&] { return "x=" + to_string(a); });
  }

  // pairs in S0 x P
  for (std::size_t i = 0; i < S.size(); ++i) {
    const WittVec& s = S[i];
    const WittVec ss = f.sigma0(s);
    for (std::size_t j = 0; j < P.size(); ++j) {
      const PElem& x = P[j];
      const PElem sx = f.act(s, x);
      auto wit = [&] { return "s=" + to_string(s) + " x=" + to_string(x); };
      c.check("t1-module", f.t1(sx) == witt_mul(s, f.t1(x)), wit);
      c.check("sigmadot-act", f.sigmadot(sx) == witt_mul(ss, f.sigmadot(x)), wit);
      const PElem& y = P[(i * 11 + j * 3 + 2) % P.size()];
      c.check("module", f.act(s, f.p_add(x, y)) == f.p_add(sx, f.act(s, y)), wit);
      c.check("module", f.nu(sx, y) == f.act(s, f.nu(x, y)), wit);
      const WittVec& s2 = S[(i * 7 + j + 3) % S.size()];
      c.check("module", f.act(witt_mul(s, s2), x) == f.act(s, f.act(s2, x)), wit);
      c.check("module", f.act(witt_add(s, s2), x) == f.p_add(sx, f.act(s2, x)), wit);
    }
    c.check("module", f.act(f.s_one(), P[i % P.size()]) == P[i % P.size()], [&] { return to_string(P[i % P.size()]); });
  }

  // pairs in S0 x S0
  c.check("sigma0-frobenius-lift", f.sigma0(f.s_one()) == f.s_one(), [] { return std::string("sigma0(1) != 1"); });
  for (std::size_t i = 0; i < S.size(); ++i) {
    const WittVec& s = S[i];
    const WittVec ss = f.sigma0(s);
    if (!ppowers.empty())
      c.check("sigma0-frobenius-lift", is_p_multiple(f, witt_sub(ss, witt_pow(s, static_cast<unsigned long long>(p))),
                                                     ppowers),
              [&] { return "s=" + to_string(s); });
    for (std::size_t j = 0; j < S.size(); ++j) {
      if (!smp.exhaustive || (i * S.size() + j) % 3 == 0) {
        const WittVec& t = S[j];
        auto wit = [&] { return "s=" + to_string(s) + " s'=" + to_string(t); };
        c.check("sigma0-frobenius-lift",
                f.sigma0(witt_add(s, t)) == witt_add(ss, f.sigma0(t)) &&
                    f.sigma0(witt_mul(s, t)) == witt_mul(ss, f.sigma0(t)),
                wit);
        c.check("R-quotient", f.to_R(witt_mul(s, t)) == ring_mul(f.to_R(s), f.to_R(t)) &&
                                  f.to_R(witt_add(s, t)) == ring_add(f.to_R(s), f.to_R(t)),
                wit);
      }
    }
  }
  return c.report;
}

AxiomReport zip_projection_check(const Frame& f, std::uint64_t budget, std::uint64_t seed) {
  FramePtr z = build_zip_frame(f.R);
  auto pi0 = [&](const WittVec& s) { return witt_from_components(f.R, {f.to_R(s)}); };
  auto piP = [&](const PElem& u) { return PElem{witt_from_components(f.R, {f.to_R(f.sigmadot(u))}), {}}; };
  Samples smp = draw(f, budget, seed);
  Checker c;
  c.report.exhaustive = smp.exhaustive;
  const auto& S = smp.S;
  const auto& P = smp.P;
  for (const char* n : {"pi-ring", "pi-t1", "pi-tP", "pi-nu", "pi-act", "pi-sigma0", "pi-sigmadot", "pi-additive"})
    c.touch(n);
  for (std::size_t i = 0; i < P.size(); ++i) {
    const PElem& u = P[i];
    auto wit = [&] { return "x=" + to_string(u); };
    c.check("pi-t1", pi0(f.t1(u)) == z->t1(piP(u)), wit);
    c.check("pi-tP", piP(f.tP(u)) == z->tP(piP(u)), wit);
    c.check("pi-sigmadot", pi0(f.sigmadot(u)) == z->sigmadot(piP(u)), wit);
    for (std::size_t j = 0; j < P.size(); ++j) {
      if (smp.exhaustive && P.size() > 30 && (i + j) % 5) continue;
      const PElem& v = P[j];
      auto wit2 = [&] { return "x=" + to_string(u) + " y=" + to_string(v); };
      c.check("pi-nu", piP(f.nu(u, v)) == z->nu(piP(u), piP(v)), wit2);
      c.check("pi-additive", piP(f.p_add(u, v)) == z->p_add(piP(u), piP(v)), wit2);
    }
  }
  for (std::size_t i = 0; i < S.size(); ++i) {
    const WittVec& s = S[i];
    c.check("pi-sigma0", pi0(f.sigma0(s)) == z->sigma0(pi0(s)), [&] { return "s=" + to_string(s); });
    for (std::size_t j = 0; j < P.size(); ++j) {
      const PElem& u = P[j];
      c.check("pi-act", piP(f.act(s, u)) == z->act(pi0(s), piP(u)),
              [&] { return "s=" + to_string(s) + " x=" + to_string(u); });
    }
    for (std::size_t j = 0; j < S.size(); j += 1 + S.size() / 40) {
      const WittVec& t = S[j];
      c.check("pi-ring", pi0(witt_add(s, t)) == witt_add(pi0(s), pi0(t)) &&
                             pi0(witt_mul(s, t)) == witt_mul(pi0(s), pi0(t)),
              [&] { return "s=" + to_string(s) + " s'=" + to_string(t); });
    }
  }
  c.check("pi-ring", pi0(f.s_one()) == z->s_one(), [] { return std::string("pi(1) != 1"); });
  return c.report;
}

AxiomReport frame_compare(const Frame& f, const Frame& g, std::uint64_t budget, std::uint64_t seed) {
  Checker c;
  c.touch("shape");
  c.check("shape", f.m == g.m && f.ring->same_as(*g.ring) && f.R->same_as(*g.R) && f.p_size() == g.p_size(),
          [] { return std::string("different rings or sizes"); });
  if (!c.report.ok()) return c.report;
  Samples smp = draw(f, budget, seed);
  c.report.exhaustive = smp.exhaustive;
  for (const auto& u : smp.P) {
    auto wit = [&] { return "x=" + to_string(u); };
    c.check("t1", f.t1(u) == g.t1(u), wit);
    c.check("tP", f.tP(u) == g.tP(u), wit);
    c.check("sigmadot", f.sigmadot(u) == g.sigmadot(u), wit);
    for (const auto& v : smp.P) c.check("nu", f.nu(u, v) == g.nu(u, v), wit);
    for (const auto& s : smp.S) c.check("act", f.act(s, u) == g.act(s, u), wit);
  }
  for (const auto& s : smp.S) {
    c.check("sigma0", f.sigma0(s) == g.sigma0(s), [&] { return "s=" + to_string(s); });
    c.check("to_R", f.to_R(s) == g.to_R(s), [&] { return "s=" + to_string(s); });
  }
  return c.report;
}

WittVec Thickening::eps0(const WittVec& s) const {
  return map_comps(s, ext->A, [this](const RingElem& a) { return ext->proj(a); });
}

PElem Thickening::epsP(const PElem& u) const { return PElem{eps0(u.a), {}}; }

bool Thickening::in_K0(const WittVec& s) const {
  for (const auto& a : s.c)
    if (!ext->in_J(a)) return false;
  return true;
}

std::uint64_t Thickening::K0_size() const {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < m; ++i) n *= ext->J_size();
  return n;
}

WittVec Thickening::K0_at(std::uint64_t idx) const {
  const std::uint64_t js = ext->J_size();
  WittVec w = witt_zero(ext->B, m);
  auto J = ext->enumerate_J();
  for (std::size_t k = m; k-- > 0;) {
    w.c[k] = J[idx % js];
    idx /= js;
  }
  return w;
}

Enumeration<WittVec> Thickening::enumerate_K0(std::uint64_t cap) const {
  const std::uint64_t n = K0_size();
  if (n > cap) fail(ErrorKind::EnumerationTooLarge, "K0 has " + std::to_string(n) + " elements");
  const Thickening self = *this;
  return Enumeration<WittVec>(n, [self](std::uint64_t i) { return self.K0_at(i); });
}

WittVec Thickening::sdotK(const WittVec& k) const { return log_to_witt(log_shift(log_coords(ext, k))); }

WittVec Thickening::lift0(const WittVec& s) const {
  return map_comps(s, ext->B, [this](const RingElem& a) { return ext->section(a); });
}

Thickening build_thickening(const Ext& ext, std::size_t m) {
  Thickening th;
  th.source = build_relative_frame(ext, m);
  th.target = build_truncated_witt_frame(ext->A, m);
  th.ext = ext;
  th.m = m;
  th.nilpotency_index = static_cast<int>(m);
  return th;
}

AxiomReport thickening_check(const Thickening& th, std::uint64_t budget, std::uint64_t seed) {
  const Frame& f = *th.source;
  const Frame& g = *th.target;
  Samples smp = draw(f, budget, seed);
  Checker c;
  c.report.exhaustive = smp.exhaustive;
  for (const char* n : {"eps-compatible", "sdotK-nilpotent", "p-sdotK", "sdotK-preimage", "K0-kernel"}) c.touch(n);
  for (const auto& u : smp.P) {
    auto wit = [&] { return "x=" + to_string(u); };
    c.check("eps-compatible",
            th.eps0(f.t1(u)) == g.t1(th.epsP(u)) && th.epsP(f.tP(u)) == g.tP(th.epsP(u)) &&
                th.eps0(f.sigmadot(u)) == g.sigmadot(th.epsP(u)),
            wit);
    for (std::size_t j = 0; j < smp.P.size(); j += 1 + smp.P.size() / 60) {
      const PElem& v = smp.P[j];
      c.check("eps-compatible", th.epsP(f.nu(u, v)) == g.nu(th.epsP(u), th.epsP(v)), wit);
    }
    for (std::size_t j = 0; j < smp.S.size(); j += 1 + smp.S.size() / 60) {
      const WittVec& s = smp.S[j];
      c.check("eps-compatible", th.epsP(f.act(s, u)) == g.act(th.eps0(s), th.epsP(u)), wit);
    }
  }
  for (const auto& s : smp.S) {
    auto wit = [&] { return "s=" + to_string(s); };
    c.check("eps-compatible", th.eps0(f.sigma0(s)) == g.sigma0(th.eps0(s)), wit);
    c.check("K0-kernel", th.eps0(s).is_zero() == th.in_K0(s), wit);
  }
  const std::uint64_t nk = th.K0_size();
  std::mt19937_64 rng(seed);
  const bool all = nk <= budget;
  const std::uint64_t count = all ? nk : 500;
  for (std::uint64_t i = 0; i < count; ++i) {
    WittVec k = th.K0_at(all ? i : std::uniform_int_distribution<std::uint64_t>(0, nk - 1)(rng));
    auto wit = [&] { return "k=" + to_string(k); };
    WittVec it = k;
    for (int r = 0; r < th.nilpotency_index; ++r) it = th.sdotK(it);
    c.check("sdotK-nilpotent", it.is_zero(), wit);
    c.check("p-sdotK", witt_mul_int(th.sdotK(k), f.p) == f.sigma0(k), wit);
    // the preimage of k under t1 with vanishing last coordinate
    PElem z{shift_down(k), k.c[0]};
    c.check("sdotK-preimage", f.t1(z) == k && f.sigmadot(z) == th.sdotK(k), wit);
  }
  return c.report;
}

PElem HodgeThickening::alphaP(const PElem& u) const { return PElem{u.a, ring_zero(ext->B)}; }

HodgeThickening build_hodge_thickening(const Ext& ext, std::size_t m) {
  HodgeThickening h;
  h.S = build_relative_frame(ext, m);
  h.Sprime = build_truncated_witt_frame(ext->B, m);
  h.ext = ext;
  return h;
}

AxiomReport hodge_hypothesis_check(const HodgeThickening& h, std::uint64_t budget) {
  Checker c;
  const Frame& S = *h.S;
  const Frame& Sp = *h.Sprime;
  for (const char* n : {"rings", "alpha-injective", "alpha-compatible", "quotient-is-I"}) c.touch(n);
  c.check("rings", Sp.R->same_as(*h.ext->B) && S.R->same_as(*h.ext->A),
          [] { return std::string("R' != B or R != A"); });
  const bool all = S.p_size() <= budget;
  c.report.exhaustive = all;
  std::set<PElem> images;
  std::uint64_t np = 0;
  std::mt19937_64 rng(3);
  const std::uint64_t count = all ? Sp.p_size() : 300;
  for (std::uint64_t i = 0; i < count; ++i) {
    PElem u = all ? Sp.p_at(i) : Sp.random_P(rng);
    PElem a = h.alphaP(u);
    images.insert(a);
    ++np;
    auto wit = [&] { return "x'=" + to_string(u); };
    c.check("alpha-compatible",
            S.t1(a) == Sp.t1(u) && S.tP(a) == h.alphaP(Sp.tP(u)) && S.sigmadot(a) == Sp.sigmadot(u), wit);
  }
  c.check("alpha-injective", images.size() == np, [] { return std::string("two elements share an image"); });
  // t^n : S_n -> S_0 -> R' induces S_n / S'_n = I = J
  for (int n = 1; n <= 2; ++n) {
    std::set<std::uint64_t> hit;
    const std::uint64_t cs = all ? S.p_size() : 300;
    for (std::uint64_t i = 0; i < cs; ++i) {
      PElem u = all ? S.p_at(i) : S.random_P(rng);
      RingElem img = S.t_pow(u, n).c[0];
      const bool in_I = h.ext->in_J(img);
      const bool in_alpha = u.x.is_zero();
      c.check("quotient-is-I", in_I && (img.is_zero() == in_alpha), [&] { return "x=" + to_string(u); });
      hit.insert(J_index(*h.ext, img));
    }
    if (all)
      c.check("quotient-is-I", hit.size() == h.ext->J_size(), [] { return std::string("map to I not surjective"); });
  }
  return c.report;
}

}  // namespace hdisp
