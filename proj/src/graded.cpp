#include "hdisp/graded.hpp"

namespace hdisp {

GradedElem g_zero(const Frame& f, int deg) {
  GradedElem g;
  g.deg = deg;
  if (deg >= 1)
    g.x = f.p_zero();
  else
    g.s = f.s_zero();
  return g;
}

GradedElem g_one(const Frame& f) { return g_scalar(0, f.s_one()); }

GradedElem g_scalar(int deg, const WittVec& s) {
  if (deg > 0) fail(ErrorKind::Internal, "scalar payload in positive degree");
  GradedElem g;
  g.deg = deg;
  g.s = s;
  return g;
}

GradedElem g_pos(int deg, const PElem& x) {
  if (deg < 1) fail(ErrorKind::Internal, "positive payload in degree <= 0");
  GradedElem g;
  g.deg = deg;
  g.x = x;
  return g;
}

namespace {
void same_deg(const GradedElem& a, const GradedElem& b) {
  if (a.deg != b.deg)
    fail(ErrorKind::TypeMismatch, "adding degrees " + std::to_string(a.deg) + " and " + std::to_string(b.deg));
}
}  // namespace

GradedElem g_add(const Frame& f, const GradedElem& a, const GradedElem& b) {
  same_deg(a, b);
  if (a.deg >= 1) return g_pos(a.deg, f.p_add(a.x, b.x));
  return g_scalar(a.deg, witt_add(a.s, b.s));
}

GradedElem g_neg(const Frame& f, const GradedElem& a) {
  if (a.deg >= 1) return g_pos(a.deg, f.p_neg(a.x));
  return g_scalar(a.deg, witt_neg(a.s));
}

GradedElem g_sub(const Frame& f, const GradedElem& a, const GradedElem& b) { return g_add(f, a, g_neg(f, b)); }

GradedElem g_mul(const Frame& f, const GradedElem& a, const GradedElem& b) {
  const int d = a.deg + b.deg;
  if (a.deg >= 1 && b.deg >= 1) return g_pos(d, f.nu(a.x, b.x));
  if (a.deg <= 0 && b.deg <= 0) return g_scalar(d, witt_mul(a.s, b.s));
  const GradedElem& pos = a.deg >= 1 ? a : b;
  const GradedElem& neg = a.deg >= 1 ? b : a;
  const int k = -neg.deg;
  PElem y = f.act(neg.s, pos.x);
  if (d >= 1) {
    for (int i = 0; i < k; ++i) y = f.tP(y);
    return g_pos(d, y);
  }
  return g_scalar(d, f.t_pow(y, pos.deg));
}

WittVec g_tau(const Frame& f, const GradedElem& a) { return a.deg >= 1 ? f.t_pow(a.x, a.deg) : a.s; }

WittVec g_sigma(const Frame& f, const GradedElem& a) {
  if (a.deg >= 1) return f.sigmadot(a.x);
  WittVec s = f.sigma0(a.s);
  for (int i = 0; i < -a.deg; ++i) s = witt_mul_int(s, f.p);
  return s;
}

bool g_eq(const GradedElem& a, const GradedElem& b) {
  if (a.deg != b.deg) return false;
  return a.deg >= 1 ? a.x == b.x : a.s == b.s;
}

bool g_is_zero(const Frame& f, const GradedElem& a) {
  return a.deg >= 1 ? a.x == f.p_zero() : a.s.is_zero();
}

std::string to_string(const GradedElem& a) {
  return "{" + std::to_string(a.deg) + ": " + (a.deg >= 1 ? to_string(a.x) : to_string(a.s)) + "}";
}

int DisplayType::degree() const {
  int d = 0;
  for (int v : mu) d += v;
  return d;
}

bool DisplayType::valid() const {
  for (std::size_t i = 1; i < mu.size(); ++i)
    if (mu[i] > mu[i - 1]) return false;
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> DisplayType::blocks() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t b = 0;
  for (std::size_t i = 1; i <= mu.size(); ++i)
    if (i == mu.size() || mu[i] != mu[b]) {
      out.push_back({b, i});
      b = i;
    }
  return out;
}

GradedMatrix gm_zero(const FramePtr& f, const std::vector<int>& row, const std::vector<int>& col) {
  GradedMatrix a{f, row, col, {}};
  a.e.reserve(row.size() * col.size());
  for (std::size_t i = 0; i < row.size(); ++i)
    for (std::size_t j = 0; j < col.size(); ++j) a.e.push_back(g_zero(*f, col[j] - row[i]));
  return a;
}

GradedMatrix gm_identity(const FramePtr& f, const std::vector<int>& mu) {
  GradedMatrix a = gm_zero(f, mu, mu);
  for (std::size_t i = 0; i < mu.size(); ++i) a.at(i, i) = g_one(*f);
  return a;
}

GradedMatrix gm_mul(const GradedMatrix& a, const GradedMatrix& b) {
  if (a.col != b.row) fail(ErrorKind::TypeMismatch, "graded matrix types do not compose");
  const Frame& f = *a.frame;
  GradedMatrix c = gm_zero(a.frame, a.row, b.col);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      GradedElem acc = c.at(i, j);
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const GradedElem& x = a.at(i, k);
        const GradedElem& y = b.at(k, j);
        if (g_is_zero(f, x) || g_is_zero(f, y)) continue;
        acc = g_add(f, acc, g_mul(f, x, y));
      }
      c.at(i, j) = acc;
    }
  return c;
}

GradedMatrix gm_add(const GradedMatrix& a, const GradedMatrix& b) {
  if (a.row != b.row || a.col != b.col) fail(ErrorKind::TypeMismatch, "graded matrix types differ");
  GradedMatrix c = a;
  for (std::size_t k = 0; k < c.e.size(); ++k) c.e[k] = g_add(*a.frame, a.e[k], b.e[k]);
  return c;
}

GradedMatrix gm_sub(const GradedMatrix& a, const GradedMatrix& b) {
  if (a.row != b.row || a.col != b.col) fail(ErrorKind::TypeMismatch, "graded matrix types differ");
  GradedMatrix c = a;
  for (std::size_t k = 0; k < c.e.size(); ++k) c.e[k] = g_sub(*a.frame, a.e[k], b.e[k]);
  return c;
}

namespace {
WMat apply_entries(const GradedMatrix& a, WittVec (*fn)(const Frame&, const GradedElem&)) {
  const Frame& f = *a.frame;
  WMat m = wmat_zero(f.ring, f.m, a.rows(), a.cols());
  for (std::size_t k = 0; k < a.e.size(); ++k) m.e[k] = fn(f, a.e[k]);
  return m;
}
}  // namespace

WMat gm_sigma(const GradedMatrix& a) { return apply_entries(a, g_sigma); }
WMat gm_tau(const GradedMatrix& a) { return apply_entries(a, g_tau); }

bool operator==(const GradedMatrix& a, const GradedMatrix& b) {
  if (a.row != b.row || a.col != b.col) return false;
  for (std::size_t k = 0; k < a.e.size(); ++k)
    if (!g_eq(a.e[k], b.e[k])) return false;
  return true;
}

std::string to_string(const GradedMatrix& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < a.cols(); ++j) out += (j ? ", " : "") + to_string(a.at(i, j));
    out += "]";
  }
  return out + "]";
}

std::uint64_t gm_count(const FramePtr& f, const std::vector<int>& mu) {
  const std::uint64_t ns = f->s_size(), np = f->p_size();
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < mu.size(); ++j) {
      const std::uint64_t r = mu[j] - mu[i] >= 1 ? np : ns;
      if (n > ~0ULL / r) return ~0ULL;
      n *= r;
    }
  return n;
}

GradedMatrix gm_at(const FramePtr& f, const std::vector<int>& mu, std::uint64_t idx) {
  GradedMatrix a = gm_zero(f, mu, mu);
  const std::uint64_t ns = f->s_size(), np = f->p_size();
  for (std::size_t k = a.e.size(); k-- > 0;) {
    GradedElem& g = a.e[k];
    if (g.deg >= 1) {
      g.x = f->p_at(idx % np);
      idx /= np;
    } else {
      g.s = witt_at(f->ring, f->m, idx % ns);
      idx /= ns;
    }
  }
  return a;
}

GradedMatrix gm_random(const FramePtr& f, const std::vector<int>& mu, std::mt19937_64& rng) {
  GradedMatrix a = gm_zero(f, mu, mu);
  for (auto& g : a.e) {
    if (g.deg >= 1)
      g.x = f->random_P(rng);
    else
      g.s = f->random_S0(rng);
  }
  return a;
}

GradedMatrix gm_from_payloads(const FramePtr& f, const std::vector<int>& mu, const WMat& m) {
  GradedMatrix a = gm_zero(f, mu, mu);
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < mu.size(); ++j)
      if (a.degree(i, j) <= 0) a.at(i, j).s = m.at(i, j);
  return a;
}

bool in_display_group(const GradedMatrix& a) {
  if (a.row != a.col) return false;
  const Frame& f = *a.frame;
  DisplayType t{a.row};
  if (!t.valid()) return false;
  for (auto [b, e] : t.blocks()) {
    const std::size_t r = e - b;
    std::vector<Coef> res(r * r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) res[i * r + j] = f.residue(a.at(b + i, b + j).s);
    if (fq_mat_inverse(f.ring->field(), res, r).empty()) return false;
  }
  return true;
}

}  // namespace hdisp
