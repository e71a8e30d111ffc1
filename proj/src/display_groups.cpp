#include "hdisp/display_groups.hpp"

#include <algorithm>
#include <functional>

namespace hdisp {

namespace {

GradedMatrix gm_transpose(const GradedMatrix& a) {
  std::vector<int> row, col;
  for (int v : a.col) row.push_back(-v);
  for (int v : a.row) col.push_back(-v);
  GradedMatrix t{a.frame, row, col, {}};
  t.e.resize(a.e.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t.e[j * a.rows() + i] = a.at(i, j);
  return t;
}

std::vector<int> negated(const std::vector<int>& mu) {
  std::vector<int> out;
  for (int v : mu) out.push_back(-v);
  return out;
}

WittVec inv2(const Frame& f) { return witt_inverse(f.s_int(2)); }

}  // namespace

bool is_orth_type(const std::vector<int>& mu) {
  if (!DisplayType{mu}.valid()) return false;
  const std::size_t n = mu.size();
  for (std::size_t i = 0; i < n; ++i)
    if (mu[i] + mu[n - 1 - i] != 0) return false;
  return true;
}

bool is_one_bounded(const std::vector<int>& mu, GroupKind g) {
  if (mu.empty()) return true;
  if (g == GroupKind::GL) return mu.front() - mu.back() <= 1;
  if (!is_orth_type(mu)) return false;
  const std::size_t n = mu.size();
  if (mu.front() == 0) return true;
  if (n < 2 || mu.front() != 1 || mu.back() != -1) return false;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (mu[i] != 0) return false;
  return true;
}

void require_orth(const Frame& f, const std::vector<int>& mu) {
  if (f.p < 3) fail(ErrorKind::UnsupportedCharacteristic, "orthogonal displays need p >= 3");
  if (!is_orth_type(mu)) fail(ErrorKind::UnsupportedType, "type is not orthogonal");
}

WMat antidiag(const Ring& r, std::size_t m, std::size_t n) {
  WMat J = wmat_zero(r, m, n, n);
  for (std::size_t i = 0; i < n; ++i) J.at(i, n - 1 - i) = witt_one(r, m);
  return J;
}

GradedMatrix gram_J(const FramePtr& f, const std::vector<int>& mu) {
  GradedMatrix J = gm_zero(f, negated(mu), mu);
  const std::size_t n = mu.size();
  for (std::size_t i = 0; i < n; ++i) J.at(i, n - 1 - i) = g_one(*f);
  return J;
}

GradedMatrix gram_transform(const GradedMatrix& B, const GradedMatrix& A) {
  return gm_mul(gm_transpose(A), gm_mul(B, A));
}

bool in_orth_group(const GradedMatrix& a) {
  if (!is_orth_type(a.row) || a.row != a.col) return false;
  if (!in_display_group(a)) return false;
  const GradedMatrix J = gram_J(a.frame, a.row);
  return gram_transform(J, a) == J;
}

OrthCheck verify_orth(const WMat& U) {
  OrthCheck r;
  const WMat J = antidiag(U.ring, U.m, U.rows);
  const WMat G = wmat_mul(wmat_transpose(U), wmat_mul(J, U));
  for (std::size_t i = 0; i < U.rows && r.ok; ++i)
    for (std::size_t j = 0; j < U.cols; ++j)
      if (G.at(i, j) != J.at(i, j)) {
        r.ok = false;
        r.i = i;
        r.j = j;
        r.witness = "(U^t J U)[" + std::to_string(i) + "][" + std::to_string(j) + "] = " + to_string(G.at(i, j));
        break;
      }
  return r;
}

WeightDecomposition decompose(const GradedMatrix& g) {
  if (!in_display_group(g)) fail(ErrorKind::NotInGroup, "decompose needs a display group element");
  const Frame& f = *g.frame;
  const auto blocks = DisplayType{g.row}.blocks();
  const std::size_t r = blocks.size();
  GradedMatrix q = gm_zero(g.frame, g.row, g.col);
  GradedMatrix h = gm_identity(g.frame, g.row);
  // g_ij - sum over k in blocks > cmin of q_ik h_kj
  auto residual = [&](std::size_t i, std::size_t j, std::size_t cmin) {
    GradedElem acc = g.at(i, j);
    for (std::size_t k = blocks[cmin].second; k < g.rows(); ++k) acc = g_sub(f, acc, g_mul(f, q.at(i, k), h.at(k, j)));
    return acc;
  };
  for (std::size_t a = r; a-- > 0;) {
    const auto [ab, ae] = blocks[a];
    for (std::size_t b = r; b-- > a;)
      for (std::size_t i = ab; i < ae; ++i)
        for (std::size_t j = blocks[b].first; j < blocks[b].second; ++j) q.at(i, j) = residual(i, j, b);
    const std::size_t len = ae - ab;
    WMat qaa = wmat_zero(f.ring, f.m, len, len);
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = 0; j < len; ++j) qaa.at(i, j) = q.at(ab + i, ab + j).s;
    const WMat qinv = wmat_inverse(qaa);
    for (std::size_t b = 0; b < a; ++b)
      for (std::size_t j = blocks[b].first; j < blocks[b].second; ++j) {
        std::vector<GradedElem> res;
        for (std::size_t l = ab; l < ae; ++l) res.push_back(residual(l, j, a));
        for (std::size_t i = 0; i < len; ++i) {
          GradedElem acc = g_zero(f, g.degree(ab + i, j));
          for (std::size_t l = 0; l < len; ++l) acc = g_add(f, acc, g_mul(f, g_scalar(0, qinv.at(i, l)), res[l]));
          h.at(ab + i, j) = acc;
        }
      }
  }
  if (gm_mul(q, h) != g) fail(ErrorKind::Internal, "decomposition does not recompose");
  return WeightDecomposition{q, h};
}

GradedMatrix gm_inverse(const GradedMatrix& g) {
  const auto d = decompose(g);
  const FramePtr& f = g.frame;
  const GradedMatrix qinv = gm_from_payloads(f, g.row, wmat_inverse(gm_tau(d.pminus)));
  const GradedMatrix I = gm_identity(f, g.row);
  const GradedMatrix N = gm_sub(d.uplus, I);
  GradedMatrix term = I, hinv = I;
  const std::size_t r = DisplayType{g.row}.blocks().size();
  for (std::size_t k = 1; k < r; ++k) {
    term = gm_mul(term, N);
    hinv = (k % 2) ? gm_sub(hinv, term) : gm_add(hinv, term);
  }
  GradedMatrix inv = gm_mul(hinv, qinv);
  if (gm_mul(g, inv) != I || gm_mul(inv, g) != I) fail(ErrorKind::Internal, "graded inverse check failed");
  return inv;
}

std::vector<PElem> log_plus(const GradedMatrix& h, GroupKind g) {
  if (!is_one_bounded(h.row, g)) fail(ErrorKind::UnsupportedType, "log+ needs a 1-bounded type");
  const Frame& f = *h.frame;
  const std::size_t n = h.rows();
  std::vector<PElem> out;
  if (g == GroupKind::GL) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (h.degree(i, j) == 1) out.push_back(h.at(i, j).x);
    return out;
  }
  if (h.row.front() == 0) return out;
  for (std::size_t i = 1; i + 1 < n; ++i) out.push_back(h.at(i, 0).x);
  (void)f;
  return out;
}

GradedMatrix exp_plus(const FramePtr& fp, const std::vector<int>& mu, const std::vector<PElem>& x, GroupKind g) {
  if (!is_one_bounded(mu, g)) fail(ErrorKind::UnsupportedType, "exp+ needs a 1-bounded type");
  const Frame& f = *fp;
  const std::size_t n = mu.size();
  GradedMatrix h = gm_identity(fp, mu);
  std::size_t k = 0;
  if (g == GroupKind::GL) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (h.degree(i, j) == 1) {
          if (k >= x.size()) fail(ErrorKind::Precondition, "too few coordinates");
          h.at(i, j) = g_pos(1, x[k++]);
        }
  } else if (mu.front() != 0) {
    require_orth(f, mu);
    if (x.size() != n - 2) fail(ErrorKind::Precondition, "orthogonal U+ has n - 2 coordinates");
    // y = -x^t J', z = y x / 2
    GradedElem z = g_zero(f, 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      h.at(i, 0) = g_pos(1, x[i - 1]);
      h.at(n - 1, i) = g_pos(1, f.p_neg(x[n - 2 - i]));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) z = g_add(f, z, g_mul(f, h.at(n - 1, i), h.at(i, 0)));
    h.at(n - 1, 0) = g_mul(f, g_scalar(0, inv2(f)), z);
    k = x.size();
  }
  if (k != x.size()) fail(ErrorKind::Precondition, "wrong number of coordinates");
  return h;
}

namespace {

GradedElem beta(const GradedMatrix& B, const GradedMatrix& A, std::size_t k, std::size_t l) {
  const Frame& f = *A.frame;
  const std::size_t n = A.rows();
  GradedElem acc = g_zero(f, A.col[k] + A.col[l]);
  for (std::size_t a = 0; a < n; ++a) {
    if (g_is_zero(f, A.at(a, k))) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (g_is_zero(f, A.at(b, l)) || g_is_zero(f, B.at(a, b))) continue;
      acc = g_add(f, acc, g_mul(f, g_mul(f, A.at(a, k), B.at(a, b)), A.at(b, l)));
    }
  }
  return acc;
}

void scale_col(GradedMatrix& A, std::size_t k, const WittVec& s) {
  const Frame& f = *A.frame;
  for (std::size_t i = 0; i < A.rows(); ++i) A.at(i, k) = g_mul(f, A.at(i, k), g_scalar(0, s));
}

// column k += c * column i
void add_col(GradedMatrix& A, std::size_t k, const GradedElem& c, std::size_t i) {
  const Frame& f = *A.frame;
  for (std::size_t r = 0; r < A.rows(); ++r) A.at(r, k) = g_add(f, A.at(r, k), g_mul(f, c, A.at(r, i)));
}

}  // namespace

GramNormalization normalize_gram(const GradedMatrix& B) {
  const FramePtr& fp = B.frame;
  const Frame& f = *fp;
  const std::vector<int> mu = B.col;
  require_orth(f, mu);
  const std::size_t n = mu.size();
  if (B.row != negated(mu)) fail(ErrorKind::TypeMismatch, "Gram matrix must have entry degrees mu_i + mu_j");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!g_eq(B.at(i, j), B.at(j, i))) fail(ErrorKind::Precondition, "Gram matrix is not symmetric");
  std::vector<Coef> res(n * n);
  bool is_J = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      res[i * n + j] = f.residue(g_tau(f, B.at(i, j)));
      if (res[i * n + j] != (j == n - 1 - i ? 1u : 0u)) is_J = false;
    }
  if (!is_J) {
    std::string m = "residue Gram matrix [";
    for (std::size_t k = 0; k < n * n; ++k) m += (k ? "," : "") + coef_string(f.ring->field(), res[k]);
    fail(ErrorKind::NeedsResidueNormalization, m + "] is not J");
  }
  const WittVec h = inv2(f);
  const WittVec mh = witt_neg(h);
  GradedMatrix A = gm_identity(fp, mu);
  int iters = 0;
  const int bound = 64 * static_cast<int>(f.m) * (f.ring->nilpotency() + 1);
  for (std::size_t i = 0; i < n && mu[i] > 0; ++i) {
    const std::size_t e1 = i, e2 = n - 1 - i;
    const int d = mu[i];
    scale_col(A, e2, witt_inverse(beta(B, A, e1, e2).s));
    const WittVec a0 = g_tau(f, beta(B, A, e1, e1));
    const WittVec c0 = beta(B, A, e2, e2).s;
    WittVec x0 = f.s_zero();
    for (int it = 0;; ++it) {
      if (it > bound) fail(ErrorKind::Internal, "hyperbolic step did not converge");
      ++iters;
      WittVec nx = witt_mul(mh, witt_add(c0, witt_mul(a0, witt_mul(x0, x0))));
      if (nx == x0) break;
      x0 = nx;
    }
    add_col(A, e2, g_scalar(-2 * d, x0), e1);
    scale_col(A, e2, witt_inverse(beta(B, A, e1, e2).s));
    add_col(A, e1, g_mul(f, g_scalar(0, mh), beta(B, A, e1, e1)), e2);
    for (std::size_t k = i + 1; k < e2; ++k) {
      const GradedElem c1 = beta(B, A, k, e2), c2 = beta(B, A, k, e1);
      add_col(A, k, g_neg(f, c1), e1);
      add_col(A, k, g_neg(f, c2), e2);
    }
  }
  std::vector<std::size_t> mid;
  for (std::size_t i = 0; i < n; ++i)
    if (mu[i] == 0) mid.push_back(i);
  const std::size_t r = mid.size();
  for (int it = 0; r > 0; ++it) {
    if (it > bound) fail(ErrorKind::Internal, "degree-0 step did not converge");
    ++iters;
    WMat C = wmat_zero(f.ring, f.m, r, r);
    bool zero = true;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        C.at(a, b) = beta(B, A, mid[a], mid[b]).s;
        if (b == r - 1 - a) C.at(a, b) = witt_sub(C.at(a, b), f.s_one());
        zero = zero && C.at(a, b).is_zero();
      }
    if (zero) break;
    // A' = 1 - J C / 2 on the middle block
    WMat JC = wmat_mul(antidiag(f.ring, f.m, r), C);
    WMat Ap = wmat_identity(f.ring, f.m, r);
    for (std::size_t k = 0; k < r * r; ++k) Ap.e[k] = witt_add(Ap.e[k], witt_mul(mh, JC.e[k]));
    GradedMatrix old = A;
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t row = 0; row < n; ++row) {
        GradedElem acc = g_zero(f, A.degree(row, mid[b]));
        for (std::size_t a = 0; a < r; ++a)
          acc = g_add(f, acc, g_mul(f, old.at(row, mid[a]), g_scalar(0, Ap.at(a, b))));
        A.at(row, mid[b]) = acc;
      }
  }
  if (gram_transform(B, A) != gram_J(fp, mu)) fail(ErrorKind::Internal, "normalized Gram matrix is not J");
  return GramNormalization{A, iters};
}

std::optional<std::vector<Coef>> find_residue_normalizer(const FiniteField& F, const std::vector<Coef>& B, std::size_t n,
                                                         std::uint64_t budget) {
  const std::uint64_t q = static_cast<std::uint64_t>(F.q());
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n * n; ++k) {
    if (total > budget / q) fail(ErrorKind::BudgetExceeded, "residue normalizer search exceeds the budget");
    total *= q;
  }
  std::vector<Coef> P(n * n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (std::size_t k = n * n; k-- > 0;) {
      P[k] = static_cast<Coef>(t % q);
      t /= q;
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        Coef acc = 0;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) acc = F.add(acc, F.mul(F.mul(P[a * n + i], B[a * n + b]), P[b * n + j]));
        ok = acc == (j == n - 1 - i ? 1u : 0u);
      }
    if (ok) return P;
  }
  return std::nullopt;
}

namespace {

// Backtracking over columns subject to (A^t J A)_ij = J_ij for i <= j.
template <class Col, class Pair>
void backtrack(std::size_t n, const std::vector<std::vector<Col>>& cands, const Pair& pair_ok,
               const std::function<void(const std::vector<const Col*>&)>& emit) {
  std::vector<const Col*> chosen(n, nullptr);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == n) {
      emit(chosen);
      return;
    }
    for (const auto& c : cands[j]) {
      chosen[j] = &c;
      bool ok = true;
      for (std::size_t i = 0; i <= j && ok; ++i) ok = pair_ok(i, j, *chosen[i], c);
      if (ok) rec(j + 1);
    }
  };
  rec(0);
}

}  // namespace

std::vector<WMat> enumerate_orth_matrices(const FramePtr& fp, std::size_t n, std::uint64_t budget) {
  const Frame& f = *fp;
  const std::uint64_t ns = f.s_size();
  std::uint64_t per = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (per > budget / ns) fail(ErrorKind::BudgetExceeded, "column enumeration exceeds the budget");
    per *= ns;
  }
  using Col = std::vector<WittVec>;
  std::vector<Col> all;
  for (std::uint64_t idx = 0; idx < per; ++idx) {
    WMat c = wmat_at(f.ring, f.m, n, 1, idx);
    all.push_back(c.e);
  }
  std::vector<std::vector<Col>> cands(n, all);
  const WittVec one = f.s_one();
  auto pair_ok = [&](std::size_t i, std::size_t j, const Col& u, const Col& v) {
    WittVec acc = f.s_zero();
    for (std::size_t k = 0; k < n; ++k) acc = witt_add(acc, witt_mul(u[k], v[n - 1 - k]));
    return acc == (j == n - 1 - i ? one : f.s_zero());
  };
  std::vector<WMat> out;
  backtrack<Col>(n, cands, pair_ok, [&](const std::vector<const Col*>& cols) {
    WMat U = wmat_zero(f.ring, f.m, n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) U.at(i, j) = (*cols[j])[i];
    out.push_back(U);
  });
  std::sort(out.begin(), out.end(), [](const WMat& a, const WMat& b) { return wmat_index(a) < wmat_index(b); });
  return out;
}

std::vector<GradedMatrix> enumerate_orth_group(const FramePtr& fp, const std::vector<int>& mu, std::uint64_t budget) {
  const Frame& f = *fp;
  require_orth(f, mu);
  const std::size_t n = mu.size();
  using Col = std::vector<GradedElem>;
  std::vector<std::vector<Col>> cands(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t per = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t r = mu[j] - mu[i] >= 1 ? f.p_size() : f.s_size();
      if (per > budget / r) fail(ErrorKind::BudgetExceeded, "column enumeration exceeds the budget");
      per *= r;
    }
    for (std::uint64_t idx = 0; idx < per; ++idx) {
      Col c(n);
      std::uint64_t t = idx;
      for (std::size_t i = n; i-- > 0;) {
        const int d = mu[j] - mu[i];
        if (d >= 1) {
          c[i] = g_pos(d, f.p_at(t % f.p_size()));
          t /= f.p_size();
        } else {
          c[i] = g_scalar(d, witt_at(f.ring, f.m, t % f.s_size()));
          t /= f.s_size();
        }
      }
      cands[j].push_back(std::move(c));
    }
  }
  auto pair_ok = [&](std::size_t i, std::size_t j, const Col& u, const Col& v) {
    GradedElem acc = g_zero(f, mu[i] + mu[j]);
    for (std::size_t k = 0; k < n; ++k) {
      if (g_is_zero(f, u[k]) || g_is_zero(f, v[n - 1 - k])) continue;
      acc = g_add(f, acc, g_mul(f, u[k], v[n - 1 - k]));
    }
    return j == n - 1 - i ? g_eq(acc, g_one(f)) : g_is_zero(f, acc);
  };
  std::vector<GradedMatrix> out;
  backtrack<Col>(n, cands, pair_ok, [&](const std::vector<const Col*>& cols) {
    GradedMatrix A = gm_zero(fp, mu, mu);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) A.at(i, j) = (*cols[j])[i];
    if (in_display_group(A)) out.push_back(std::move(A));
  });
  return out;
}

OrbitReport classify_orth_orbits(const FramePtr& f, const std::vector<int>& mu, std::uint64_t budget) {
  require_orth(*f, mu);
  auto X = enumerate_orth_matrices(f, mu.size(), budget);
  auto G = enumerate_orth_group(f, mu, budget);
  return orbits_on(f, mu, X, G);
}

}  // namespace hdisp
