#include "hdisp/deformation.hpp"

#include <algorithm>
#include <functional>

namespace hdisp {

namespace {

void require_one_bounded(const std::vector<int>& mu) {
  if (!is_one_bounded(mu, GroupKind::GL) && !is_one_bounded(mu, GroupKind::O))
    fail(ErrorKind::UnsupportedType, "deformation needs a 1-bounded type");
}

WittVec teich(const Ring& B, std::size_t m, const RingElem& x) {
  std::vector<RingElem> c(m, ring_zero(B));
  c[0] = x;
  return witt_from_components(B, c);
}

WMat kappa_of(const Thickening& th, const WMat& y) {
  WMat k = y;
  for (std::size_t i = 0; i < y.rows; ++i) k.at(i, i) = witt_sub(y.at(i, i), witt_one(th.ext->B, th.m));
  return k;
}

}  // namespace

bool in_GK0(const Thickening& th, const WMat& y) {
  if (y.rows != y.cols || y.m != th.m || !y.ring->same_as(*th.ext->B)) return false;
  const WMat k = kappa_of(th, y);
  for (const auto& e : k.e)
    if (!th.in_K0(e)) return false;
  return true;
}

WMat gk0_identity(const Thickening& th, std::size_t n) { return wmat_identity(th.ext->B, th.m, n); }

std::uint64_t gk0_count(const Thickening& th, std::size_t n) {
  std::uint64_t c = 1;
  for (std::size_t k = 0; k < n * n; ++k) {
    if (c > ~0ULL / th.K0_size()) return ~0ULL;
    c *= th.K0_size();
  }
  return c;
}

WMat gk0_at(const Thickening& th, std::size_t n, std::uint64_t idx) {
  WMat y = gk0_identity(th, n);
  const std::uint64_t ks = th.K0_size();
  for (std::size_t k = n * n; k-- > 0;) {
    y.e[k] = witt_add(y.e[k], th.K0_at(idx % ks));
    idx /= ks;
  }
  return y;
}

WMat theta(const Thickening& th, const std::vector<int>& mu, const WMat& y) {
  require_one_bounded(mu);
  if (!in_GK0(th, y) || y.rows != mu.size()) fail(ErrorKind::Precondition, "theta needs an element of G(K0)");
  const Frame& f = *th.source;
  const std::size_t n = mu.size();
  const WMat k = kappa_of(th, y);
  WMat out = gk0_identity(th, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const WittVec& e = k.at(i, j);
      const int d = mu[j] - mu[i];
      WittVec t;
      if (d >= 2) {
        if (!e.is_zero()) fail(ErrorKind::Precondition, "weight >= 2 entry of G(K0) is not zero");
        t = e;
      } else if (d == 1) {
        t = th.sdotK(e);
      } else {
        t = f.sigma0(e);
        for (int r = 0; r < -d; ++r) t = witt_mul_int(t, f.p);
      }
      out.at(i, j) = witt_add(out.at(i, j), t);
    }
  return out;
}

WMat U_g(const Thickening& th, const std::vector<int>& mu, const WMat& g, const WMat& y) {
  return wmat_mul(wmat_mul(g, theta(th, mu, y)), wmat_inverse(g));
}

Descent solve_descent(const Thickening& th, const std::vector<int>& mu, const WMat& g, const WMat& h) {
  if (!in_GK0(th, h)) fail(ErrorKind::Precondition, "h is not in G(K0)");
  const WMat I = gk0_identity(th, mu.size());
  const int span = mu.empty() ? 0 : mu.front() - mu.back();
  const int bound = th.nilpotency_index * (span + 2) * 2 + 4;
  Descent d{h, 1};
  WMat cur = h;
  for (;;) {
    cur = U_g(th, mu, g, cur);
    if (cur == I) break;
    if (d.factors > bound) fail(ErrorKind::Internal, "descent product does not terminate");
    d.y = wmat_mul(cur, d.y);
    ++d.factors;
  }
  if (wmat_mul(wmat_inverse(U_g(th, mu, g, d.y)), d.y) != h) fail(ErrorKind::Internal, "descent re-substitution failed");
  return d;
}

GradedMatrix tau_inverse_K(const Thickening& th, const std::vector<int>& mu, const WMat& y) {
  if (!in_GK0(th, y) || y.rows != mu.size()) fail(ErrorKind::Precondition, "tau^{-1} needs an element of G(K0)");
  const FramePtr& fp = th.source;
  const Frame& f = *fp;
  GradedMatrix z = gm_zero(fp, mu, mu);
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < mu.size(); ++j) {
      const int d = mu[j] - mu[i];
      const WittVec& e = y.at(i, j);
      if (d <= 0) {
        z.at(i, j) = g_scalar(d, e);
      } else if (d == 1) {
        z.at(i, j) = g_pos(1, PElem{th.sdotK(e), e.c[0]});
      } else if (!e.is_zero()) {
        fail(ErrorKind::Precondition, "weight >= 2 entry of G(K0) is not zero");
      }
    }
  if (gm_tau(z) != y) fail(ErrorKind::Internal, "tau(tau^{-1}(y)) != y");
  if (gm_sigma(z) != theta(th, mu, y)) fail(ErrorKind::Internal, "sigma(tau^{-1}(y)) != Theta(y)");
  (void)f;
  return z;
}

WMat reduce_mat(const Ext& ext, const WMat& a) {
  WMat out = wmat_zero(ext->A, a.m, a.rows, a.cols);
  for (std::size_t k = 0; k < a.e.size(); ++k) {
    std::vector<RingElem> c;
    for (const auto& x : a.e[k].c) c.push_back(ext->proj(x));
    out.e[k] = witt_from_components(ext->A, c);
  }
  return out;
}

Display reduce_display(const Thickening& th, const Display& d) {
  if (!d.frame->same_as(*th.source)) fail(ErrorKind::DescriptorMismatch, "display is not over the source frame");
  return Display{th.target, d.mu, reduce_mat(th.ext, d.phi)};
}

Display lift_display(const Thickening& th, const Display& d, GroupKind g) {
  if (!d.frame->same_as(*th.target)) fail(ErrorKind::DescriptorMismatch, "display is not over the target frame");
  if (!is_one_bounded(d.mu, g)) fail(ErrorKind::UnsupportedType, "lifting needs a 1-bounded type");
  WMat phi = d.phi;
  phi.ring = th.ext->B;
  for (auto& e : phi.e) e = th.lift0(e);
  if (g == GroupKind::O) {
    require_orth(*th.source, d.mu);
    if (!verify_orth(d.phi).ok) fail(ErrorKind::NotInGroup, "display matrix is not orthogonal");
    const Ring& B = th.ext->B;
    const std::size_t n = d.mu.size();
    const WMat J = antidiag(B, th.m, n);
    const WittVec half = witt_neg(witt_inverse(witt_from_int(B, th.m, 2)));
    for (int it = 0; !verify_orth(phi).ok; ++it) {
      if (it > 8 * th.nilpotency_index) fail(ErrorKind::Internal, "orthogonal correction does not converge");
      // phi <- phi (1 - J C / 2) with C = phi^t J phi - J
      const WMat C = wmat_sub(wmat_mul(wmat_transpose(phi), wmat_mul(J, phi)), J);
      WMat corr = wmat_mul(J, C);
      for (auto& e : corr.e) e = witt_mul(e, half);
      phi = wmat_mul(phi, wmat_add(wmat_identity(B, th.m, n), corr));
    }
  }
  Display out{th.source, d.mu, phi};
  if (reduce_display(th, out).phi != d.phi) fail(ErrorKind::Internal, "lift does not reduce to the display");
  return out;
}

GradedMatrix lift_uniqueness_witness(const Thickening& th, const std::vector<int>& mu, const WMat& g, const WMat& g2) {
  const WMat h = wmat_mul(g2, wmat_inverse(g));
  if (!in_GK0(th, h)) fail(ErrorKind::Precondition, "the two matrices do not have the same reduction");
  const Descent d = solve_descent(th, mu, g, wmat_inverse(h));
  GradedMatrix z = tau_inverse_K(th, mu, d.y);
  if (display_act(Display{th.source, mu, g}, z).phi != g2) fail(ErrorKind::Internal, "witness does not conjugate");
  return z;
}

std::size_t HodgeLift::rank(int n) const {
  std::size_t r = 0;
  for (int v : mu) r += v >= n;
  return r;
}

WMat HodgeLift::basis(int n) const {
  const std::size_t N = mu.size(), r = rank(n);
  WMat b = wmat_zero(B, 1, N, r);
  for (std::size_t k = 0; k < r; ++k) b.at(k, k) = witt_one(B, 1);
  if (r == 0 || r == N) return b;
  const WMat& x = X.at(mu[r - 1]);
  for (std::size_t i = r; i < N; ++i)
    for (std::size_t k = 0; k < r; ++k) b.at(i, k) = x.at(i - r, k);
  return b;
}

std::vector<RingElem> HodgeLift::coordinates() const {
  std::vector<RingElem> out;
  for (auto it = X.rbegin(); it != X.rend(); ++it)
    for (const auto& e : it->second.e) out.push_back(e.c[0]);
  return out;
}

bool hodge_lift_selfdual(const HodgeLift& l) {
  const std::size_t N = l.mu.size();
  if (N == 0) return true;
  const WMat J = antidiag(l.B, 1, N);
  for (int n = l.mu.back(); n <= l.mu.front() + 1; ++n) {
    if (l.rank(n) + l.rank(1 - n) != N) return false;
    const WMat a = l.basis(n), b = l.basis(1 - n);
    if (a.cols == 0 || b.cols == 0) continue;
    const WMat g = wmat_mul(wmat_transpose(a), wmat_mul(J, b));
    for (const auto& e : g.e)
      if (!e.is_zero()) return false;
  }
  return true;
}

std::vector<HodgeLift> enumerate_hodge_lifts(const HodgeFiltration& E, const Ext& ext, bool selfdual,
                                             std::uint64_t budget) {
  if (!E.R->same_as(*ext->A)) fail(ErrorKind::DescriptorMismatch, "filtration is not over A");
  const std::size_t N = E.n;
  std::vector<int> mu(N);
  for (std::size_t i = 0; i < N; ++i) {
    int w = E.lo;
    while (E.rank(w + 1) > i) ++w;
    mu[i] = w;
  }
  for (int k = E.lo; k <= E.lo + static_cast<int>(E.E.size()); ++k) {
    const WMat b = E.basis(k);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t c = 0; c < b.cols; ++c)
        if (b.at(i, c).c[0] != (i == c ? ring_one(E.R) : ring_zero(E.R)))
          fail(ErrorKind::Precondition, "Hodge filtration is not in standard position");
  }
  std::vector<int> levels;
  for (int v : mu)
    if (v > mu.back() && (levels.empty() || levels.back() != v)) levels.push_back(v);
  HodgeLift base{ext->B, mu, {}};
  // free slots: (level, row, col) not forced by the chain condition
  struct Slot {
    int level;
    std::size_t i, k;
  };
  std::vector<Slot> free;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const std::size_t r = base.rank(levels[l]);
    const std::size_t rprev = l ? base.rank(levels[l - 1]) : 0;
    base.X[levels[l]] = wmat_zero(ext->B, 1, N - r, r);
    for (std::size_t k = rprev; k < r; ++k)
      for (std::size_t i = 0; i < N - r; ++i) free.push_back({levels[l], i, k});
  }
  const std::uint64_t js = ext->J_size();
  std::uint64_t total = 1;
  for (std::size_t s = 0; s < free.size(); ++s) {
    if (total > budget / js) fail(ErrorKind::BudgetExceeded, "Hodge lift enumeration exceeds the budget");
    total *= js;
  }
  auto J = ext->enumerate_J();
  std::vector<HodgeLift> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    HodgeLift l = base;
    std::uint64_t t = idx;
    for (std::size_t s = free.size(); s-- > 0;) {
      l.X[free[s].level].at(free[s].i, free[s].k) = witt_from_components(ext->B, {J[t % js]});
      t /= js;
    }
    for (std::size_t a = 1; a < levels.size(); ++a) {
      const std::size_t r = l.rank(levels[a]), rprev = l.rank(levels[a - 1]);
      const WMat& prev = l.X[levels[a - 1]];
      WMat& cur = l.X[levels[a]];
      for (std::size_t k = 0; k < rprev; ++k)
        for (std::size_t i = r; i < N; ++i) cur.at(i - r, k) = prev.at(i - rprev, k);
    }
    if (!selfdual || hodge_lift_selfdual(l)) out.push_back(std::move(l));
  }
  return out;
}

AppliedLift apply_hodge_lift(const HodgeThickening& h, const Display& d, const HodgeLift& lift) {
  if (!d.frame->same_as(*h.S)) fail(ErrorKind::DescriptorMismatch, "display is not over the relative frame");
  if (lift.mu != d.mu) fail(ErrorKind::Precondition, "lift does not match the display type");
  const Ext& ext = h.ext;
  const std::size_t N = d.mu.size(), m = h.S->m;
  for (const auto& [lvl, X] : lift.X)
    for (const auto& e : X.e)
      if (!ext->in_J(e.c[0])) fail(ErrorKind::Precondition, "lift does not reduce to the Hodge filtration");
  WMat w = wmat_identity(ext->B, m, N);
  GradedMatrix z = gm_identity(h.S, d.mu);
  for (std::size_t k = 0; k < N; ++k) {
    auto it = lift.X.find(d.mu[k]);
    if (it == lift.X.end()) continue;
    const std::size_t r = lift.rank(d.mu[k]);
    for (std::size_t i = r; i < N; ++i) {
      const RingElem& x = it->second.at(i - r, k).c[0];
      w.at(i, k) = teich(ext->B, m, x);
      z.at(i, k) = g_pos(d.mu[k] - d.mu[i], PElem{witt_zero(ext->B, m), x});
    }
  }
  if (gm_tau(z) != w || gm_sigma(z) != wmat_identity(ext->B, m, N) || !in_display_group(z))
    fail(ErrorKind::Internal, "adapted basis is not tau of a group element");
  const WMat phi = wmat_mul(wmat_inverse(w), d.phi);
  if (display_act(d, z).phi != phi) fail(ErrorKind::Internal, "base change is not isomorphic to the display");
  for (int n = d.mu.back(); n <= d.mu.front() + 1; ++n) {
    // w0 = I + N with N^2 = 0, so w0^{-1} b = b - N b must vanish below row r_n
    const WMat b = lift.basis(n);
    const std::size_t r = lift.rank(n);
    for (std::size_t i = r; i < N; ++i)
      for (std::size_t c = 0; c < b.cols; ++c) {
        RingElem s = b.at(i, c).c[0];
        for (std::size_t j = 0; j < N; ++j)
          if (j != i) s = ring_sub(s, ring_mul(w.at(i, j).c[0], b.at(j, c).c[0]));
        if (!s.is_zero()) fail(ErrorKind::Internal, "transported Hodge filtration differs");
      }
  }
  return AppliedLift{Display{h.Sprime, d.mu, phi}, w, z};
}

K3Deformation k3_deform(const Display& d, const Ext& ext, std::size_t m) {
  require_orth(*d.frame, d.mu);
  if (!is_one_bounded(d.mu, GroupKind::O) || d.mu.front() != 1)
    fail(ErrorKind::UnsupportedType, "K3 displays have type (1,0,...,0,-1)");
  const Thickening th = build_thickening(ext, m);
  const HodgeThickening h = build_hodge_thickening(ext, m);
  K3Deformation out;
  out.base = lift_display(th, d, GroupKind::O);
  out.base.frame = h.S;
  out.lifts = enumerate_hodge_lifts(hodge_filtration(out.base), ext, true);
  for (const auto& l : out.lifts) {
    AppliedLift a = apply_hodge_lift(h, out.base, l);
    if (!verify_orth(a.w).ok || !verify_orth(a.display.phi).ok)
      fail(ErrorKind::Internal, "deformation is not orthogonal");
    if (reduce_mat(ext, a.display.phi) != d.phi) fail(ErrorKind::Internal, "deformation does not reduce to the input");
    out.displays.push_back(a.display);
  }
  return out;
}

}  // namespace hdisp
