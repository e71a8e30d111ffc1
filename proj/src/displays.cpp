#include "hdisp/displays.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace hdisp {

bool operator==(const Display& a, const Display& b) {
  return a.frame->same_as(*b.frame) && a.mu == b.mu && a.phi == b.phi;
}

Display make_display(const FramePtr& f, const std::vector<int>& mu, const WMat& phi) {
  if (!DisplayType{mu}.valid()) fail(ErrorKind::TypeMismatch, "type must be non-increasing");
  if (phi.rows != mu.size() || phi.cols != mu.size()) fail(ErrorKind::TypeMismatch, "phi does not match the type");
  if (phi.m != f->m || !phi.ring->same_as(*f->ring)) fail(ErrorKind::DescriptorMismatch, "phi is not over S_0");
  if (!wmat_is_invertible(phi)) fail(ErrorKind::NotAUnit, "phi is not invertible");
  return Display{f, mu, phi};
}

Display display_act(const Display& d, const GradedMatrix& a) {
  if (a.row != d.mu || a.col != d.mu) fail(ErrorKind::TypeMismatch, "group element has the wrong type");
  if (!in_display_group(a)) fail(ErrorKind::NotInGroup, "matrix is not in the display group");
  return Display{d.frame, d.mu, wmat_mul(wmat_mul(wmat_inverse(gm_tau(a)), d.phi), gm_sigma(a))};
}

Display display_tensor(const Display& a, const Display& b) {
  if (!a.frame->same_as(*b.frame)) fail(ErrorKind::DescriptorMismatch, "tensor over different frames");
  const std::size_t n = a.mu.size(), k = b.mu.size();
  std::vector<std::size_t> order(n * k);
  std::iota(order.begin(), order.end(), 0);
  auto w = [&](std::size_t idx) { return a.mu[idx / k] + b.mu[idx % k]; };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return w(x) > w(y); });
  std::vector<int> mu;
  for (auto idx : order) mu.push_back(w(idx));
  WMat phi = wmat_zero(a.frame->ring, a.frame->m, n * k, n * k);
  for (std::size_t r = 0; r < n * k; ++r)
    for (std::size_t c = 0; c < n * k; ++c) {
      const std::size_t x = order[r], y = order[c];
      phi.at(r, c) = witt_mul(a.phi.at(x / k, y / k), b.phi.at(x % k, y % k));
    }
  return Display{a.frame, mu, phi};
}

Display display_dual(const Display& d) {
  const std::size_t n = d.mu.size();
  const WMat inv = wmat_inverse(d.phi);
  std::vector<int> mu(n);
  WMat phi = wmat_zero(d.frame->ring, d.frame->m, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    mu[i] = -d.mu[n - 1 - i];
    for (std::size_t j = 0; j < n; ++j) phi.at(i, j) = inv.at(n - 1 - j, n - 1 - i);
  }
  return Display{d.frame, mu, phi};
}

Display display_twist(const Display& d, int k) {
  Display out = d;
  for (auto& v : out.mu) v += k;
  return out;
}

Display unit_display(const FramePtr& f, int d) { return Display{f, {d}, wmat_identity(f->ring, f->m, 1)}; }

bool display_is_effective(const Display& d) {
  for (int v : d.mu)
    if (v < 0) return false;
  return true;
}

WMat rmat_zero(const Ring& R, std::size_t rows, std::size_t cols) { return wmat_zero(R, 1, rows, cols); }

WMat rmat_from_s0(const Frame& f, const WMat& m) {
  WMat out = rmat_zero(f.R, m.rows, m.cols);
  for (std::size_t k = 0; k < m.e.size(); ++k) out.e[k] = witt_from_components(f.R, {f.to_R(m.e[k])});
  return out;
}

std::size_t HodgeFiltration::rank(int k) const {
  if (k < lo) return n;
  if (k >= lo + static_cast<int>(E.size())) return 0;
  return E[k - lo].cols;
}

WMat HodgeFiltration::basis(int k) const {
  if (k < lo) return wmat_identity(R, 1, n);
  if (k >= lo + static_cast<int>(E.size())) return rmat_zero(R, n, 0);
  return E[k - lo];
}

HodgeFiltration hodge_filtration(const Display& d) {
  HodgeFiltration h;
  h.R = d.frame->R;
  h.n = d.mu.size();
  if (d.mu.empty()) return h;
  h.lo = d.mu.back();
  for (int k = h.lo; k <= d.mu.front() + 1; ++k) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < h.n; ++j)
      if (d.mu[j] >= k) cols.push_back(j);
    WMat b = rmat_zero(h.R, h.n, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) b.at(cols[c], c) = witt_one(h.R, 1);
    h.E.push_back(b);
  }
  return h;
}

const WMat* FZip::alpha_at(int w) const {
  for (const auto& [k, m] : alpha)
    if (k == w) return &m;
  return nullptr;
}

namespace {

std::vector<std::size_t> cols_of_weight(const std::vector<int>& ws, int w) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < ws.size(); ++j)
    if (ws[j] == w) out.push_back(j);
  return out;
}

std::vector<int> distinct_desc(std::vector<int> ws) {
  std::sort(ws.begin(), ws.end(), std::greater<int>());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  return ws;
}

WMat column(const WMat& a, std::size_t j) {
  WMat c = wmat_zero(a.ring, a.m, a.rows, 1);
  for (std::size_t i = 0; i < a.rows; ++i) c.at(i, 0) = a.at(i, j);
  return c;
}

}  // namespace

FZip to_fzip(const Display& d) {
  if (d.frame->kind != FrameKind::Zip) fail(ErrorKind::Precondition, "F-zips need the zip frame");
  FZip z;
  z.R = d.frame->R;
  z.n = d.mu.size();
  z.c_weights = d.mu;
  z.d_weights = d.mu;
  z.C = wmat_identity(z.R, 1, z.n);
  z.D = rmat_from_s0(*d.frame, d.phi);
  for (int w : distinct_desc(d.mu)) z.alpha.push_back({w, wmat_identity(z.R, 1, cols_of_weight(d.mu, w).size())});
  return z;
}

bool fzip_valid(const FZip& z) {
  if (z.c_weights.size() != z.n || z.d_weights.size() != z.n) return false;
  if (!wmat_is_invertible(z.C) || !wmat_is_invertible(z.D)) return false;
  auto a = z.c_weights, b = z.d_weights;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return false;
  for (int w : distinct_desc(z.c_weights)) {
    const WMat* al = z.alpha_at(w);
    if (!al || al->rows != cols_of_weight(z.c_weights, w).size() || !wmat_is_invertible(*al)) return false;
  }
  return z.alpha.size() == distinct_desc(z.c_weights).size();
}

Display from_fzip(const FZip& z, const FramePtr& zip_frame) {
  if (zip_frame->kind != FrameKind::Zip) fail(ErrorKind::Precondition, "F-zips need the zip frame");
  if (!fzip_valid(z)) fail(ErrorKind::Precondition, "invalid F-zip data");
  const std::size_t n = z.n;
  std::vector<std::size_t> corder(n);
  std::iota(corder.begin(), corder.end(), 0);
  std::stable_sort(corder.begin(), corder.end(), [&](auto x, auto y) { return z.c_weights[x] > z.c_weights[y]; });
  WMat Cs = rmat_zero(z.R, n, n);
  std::vector<int> mu(n);
  for (std::size_t c = 0; c < n; ++c) {
    mu[c] = z.c_weights[corder[c]];
    for (std::size_t i = 0; i < n; ++i) Cs.at(i, c) = z.C.at(i, corder[c]);
  }
  // column c of weight w: sum over D-columns of weight w with coefficients from alpha
  WMat Dal = rmat_zero(z.R, n, n);
  for (int w : distinct_desc(mu)) {
    const auto cc = cols_of_weight(mu, w);
    const auto dc = cols_of_weight(z.d_weights, w);
    const WMat& al = *z.alpha_at(w);
    for (std::size_t t = 0; t < cc.size(); ++t)
      for (std::size_t s = 0; s < dc.size(); ++s)
        for (std::size_t i = 0; i < n; ++i)
          Dal.at(i, cc[t]) = witt_add(Dal.at(i, cc[t]), witt_mul(z.D.at(i, dc[s]), al.at(s, t)));
  }
  return make_display(zip_frame, mu, wmat_mul(wmat_inverse(Cs), Dal));
}

bool fzip_iso_via(const FZip& z1, const FZip& z2, const WMat& f) {
  if (z1.n != z2.n || !wmat_is_invertible(f)) return false;
  auto a = z1.c_weights, b = z2.c_weights;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return false;
  const WMat C2i = wmat_inverse(z2.C), D2i = wmat_inverse(z2.D);
  const WMat fc = wmat_mul(C2i, wmat_mul(f, z1.C));  // f(C1 columns) in C2 coordinates
  const WMat fd = wmat_mul(D2i, wmat_mul(f, z1.D));
  for (std::size_t j = 0; j < z1.n; ++j)
    for (std::size_t i = 0; i < z2.n; ++i) {
      if (z2.c_weights[i] < z1.c_weights[j] && !fc.at(i, j).is_zero()) return false;
      if (z2.d_weights[i] > z1.d_weights[j] && !fd.at(i, j).is_zero()) return false;
    }
  for (int w : distinct_desc(z1.c_weights)) {
    const auto c1 = cols_of_weight(z1.c_weights, w), c2 = cols_of_weight(z2.c_weights, w);
    const auto d1 = cols_of_weight(z1.d_weights, w), d2 = cols_of_weight(z2.d_weights, w);
    const std::size_t r = c1.size();
    WMat M = rmat_zero(z1.R, r, r), N = rmat_zero(z1.R, r, r);
    for (std::size_t s = 0; s < r; ++s)
      for (std::size_t t = 0; t < r; ++t) {
        M.at(s, t) = witt_from_components(z1.R, {frobenius(fc.at(c2[s], c1[t]).c[0])});
        N.at(s, t) = fd.at(d2[s], d1[t]);
      }
    if (wmat_mul(*z2.alpha_at(w), M) != wmat_mul(N, *z1.alpha_at(w))) return false;
  }
  return true;
}

std::vector<std::uint64_t> OrbitReport::size_multiset() const {
  auto s = sizes;
  std::sort(s.begin(), s.end());
  return s;
}

std::uint64_t wmat_index(const WMat& a) {
  const std::uint64_t base = witt_size(a.ring, a.m);
  std::uint64_t idx = 0;
  for (const auto& w : a.e) idx = idx * base + witt_index(w);
  return idx;
}

WMat wmat_at(const Ring& r, std::size_t m, std::size_t rows, std::size_t cols, std::uint64_t idx) {
  const std::uint64_t base = witt_size(r, m);
  WMat a = wmat_zero(r, m, rows, cols);
  for (std::size_t k = a.e.size(); k-- > 0;) {
    a.e[k] = witt_at(r, m, idx % base);
    idx /= base;
  }
  return a;
}

std::vector<GradedMatrix> enumerate_display_group(const FramePtr& f, const std::vector<int>& mu,
                                                  std::uint64_t budget) {
  const std::uint64_t n = gm_count(f, mu);
  if (n > budget) fail(ErrorKind::BudgetExceeded, "display group enumeration needs " + std::to_string(n) + " steps");
  std::vector<GradedMatrix> out;
  for (std::uint64_t i = 0; i < n; ++i) {
    GradedMatrix g = gm_at(f, mu, i);
    if (in_display_group(g)) out.push_back(std::move(g));
  }
  return out;
}

OrbitReport orbits_on(const FramePtr& f, const std::vector<int>& mu, const std::vector<WMat>& X,
                      const std::vector<GradedMatrix>& G) {
  (void)f;
  (void)mu;
  std::unordered_map<std::uint64_t, std::size_t> pos;
  for (std::size_t i = 0; i < X.size(); ++i) pos[wmat_index(X[i])] = i;
  std::vector<std::pair<WMat, WMat>> ops;
  ops.reserve(G.size());
  for (const auto& g : G) ops.push_back({wmat_inverse(gm_tau(g)), gm_sigma(g)});
  std::vector<char> seen(X.size(), 0);
  OrbitReport rep;
  rep.group_order = G.size();
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t size = 0;
    for (const auto& [ti, s] : ops) {
      const WMat y = wmat_mul(wmat_mul(ti, X[i]), s);
      auto it = pos.find(wmat_index(y));
      if (it == pos.end()) fail(ErrorKind::Internal, "group action leaves the enumerated set");
      if (!seen[it->second]) {
        seen[it->second] = 1;
        ++size;
      }
    }
    if (!seen[i]) fail(ErrorKind::Internal, "orbit does not contain its representative");
    rep.reps.push_back(X[i]);
    rep.sizes.push_back(size);
    rep.total += size;
  }
  if (rep.total != X.size()) fail(ErrorKind::Internal, "orbit sizes do not sum to the enumerated total");
  return rep;
}

OrbitReport classify_orbits(const FramePtr& f, const std::vector<int>& mu, const std::string& group,
                            std::uint64_t budget) {
  if (group != "GL") fail(ErrorKind::UnsupportedType, "classify_orbits handles GL; use classify_orth_orbits");
  const std::size_t n = mu.size();
  const std::uint64_t ns = f->s_size();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n * n; ++k) {
    if (total > budget / ns) fail(ErrorKind::BudgetExceeded, "matrix enumeration exceeds the budget");
    total *= ns;
  }
  std::vector<WMat> X;
  for (std::uint64_t i = 0; i < total; ++i) {
    WMat a = wmat_at(f->ring, f->m, n, n, i);
    if (wmat_is_invertible(a)) X.push_back(std::move(a));
  }
  auto G = enumerate_display_group(f, mu, budget);
  return orbits_on(f, mu, X, G);
}

}  // namespace hdisp
