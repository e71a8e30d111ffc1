#include "hdisp/witt.hpp"

#include <limits>

namespace hdisp {

namespace {

void check_compatible(const WittVec& x, const WittVec& y) {
  check_same_ring(x.ring, y.ring);
  if (x.length() != y.length())
    fail(ErrorKind::DescriptorMismatch, "Witt vectors of lengths " + std::to_string(x.length()) + " and " +
                                            std::to_string(y.length()));
}

// Evaluates components 0..count-1 of a family, sharing power tables across components.
std::vector<RingElem> eval_family(WittFamily fam, const std::vector<RingElem>& xs, const std::vector<RingElem>& ys,
                                  std::size_t count) {
  const Ring& R = xs.front().ring;
  const auto& cache = WittPolyCache::get(R->p());
  const auto& lay = cache.layout();
  std::vector<std::vector<RingElem>> pw(lay.nvars());
  auto value = [&](int var, int e) -> const RingElem& {
    auto& t = pw[var];
    if (t.empty()) {
      const bool xside = var <= lay.levels();
      const int idx = xside ? var : var - lay.levels() - 1;
      const auto& src = xside ? xs : ys;
      if (idx >= static_cast<int>(src.size())) fail(ErrorKind::Internal, "Witt polynomial variable out of range");
      t.push_back(ring_one(R));
      t.push_back(src[idx]);
    }
    while (static_cast<int>(t.size()) <= e) t.push_back(ring_mul(t.back(), t[1]));
    return t[e];
  };
  std::vector<RingElem> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    const ModPoly& poly = cache.modp(fam, static_cast<int>(n));
    RingElem acc = ring_zero(R);
    for (const auto& term : poly.terms) {
      RingElem v = ring_from_int(R, term.coef);
      for (const auto& [var, e] : term.factors) {
        v = ring_mul(v, value(var, e));
        if (v.is_zero()) break;
      }
      acc = ring_add(acc, v);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace

bool WittVec::is_zero() const {
  for (const auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

WittVec witt_zero(const Ring& r, std::size_t m) {
  if (m < 1) fail(ErrorKind::TruncationUnderflow, "Witt length must be >= 1");
  return WittVec{r, std::vector<RingElem>(m, ring_zero(r))};
}

WittVec witt_one(const Ring& r, std::size_t m) {
  WittVec w = witt_zero(r, m);
  w.c[0] = ring_one(r);
  return w;
}

WittVec witt_from_components(const Ring& r, std::vector<RingElem> comps) {
  if (comps.empty()) fail(ErrorKind::TruncationUnderflow, "Witt length must be >= 1");
  for (const auto& x : comps) check_same_ring(x.ring, r);
  return WittVec{r, std::move(comps)};
}

WittVec witt_from_int(const Ring& r, std::size_t m, long long n) {
  const bool negative = n < 0;
  unsigned long long k = negative ? static_cast<unsigned long long>(-(n + 1)) + 1ULL : static_cast<unsigned long long>(n);
  WittVec acc = witt_zero(r, m);
  WittVec base = witt_one(r, m);
  while (k) {
    if (k & 1) acc = witt_add(acc, base);
    k >>= 1;
    if (k) base = witt_add(base, base);
  }
  return negative ? witt_neg(acc) : acc;
}

WittVec witt_add(const WittVec& x, const WittVec& y) {
  check_compatible(x, y);
  return WittVec{x.ring, eval_family(WittFamily::Sum, x.c, y.c, x.length())};
}

WittVec witt_neg(const WittVec& x) { return WittVec{x.ring, eval_family(WittFamily::Negation, x.c, {}, x.length())}; }

WittVec witt_sub(const WittVec& x, const WittVec& y) { return witt_add(x, witt_neg(y)); }

WittVec witt_mul(const WittVec& x, const WittVec& y) {
  check_compatible(x, y);
  return WittVec{x.ring, eval_family(WittFamily::Product, x.c, y.c, x.length())};
}

WittVec witt_mul_int(const WittVec& x, long long n) { return witt_mul(x, witt_from_int(x.ring, x.length(), n)); }

WittVec witt_pow(const WittVec& x, unsigned long long e) {
  WittVec r = witt_one(x.ring, x.length());
  WittVec b = x;
  while (e) {
    if (e & 1) r = witt_mul(r, b);
    e >>= 1;
    if (e) b = witt_mul(b, b);
  }
  return r;
}

WittVec verschiebung(const WittVec& x) {
  WittVec r = x;
  r.c.insert(r.c.begin(), ring_zero(x.ring));
  return r;
}

WittVec witt_frobenius(const WittVec& x) {
  if (x.length() < 2) fail(ErrorKind::TruncationUnderflow, "Frobenius lowers the length; W_1 has no image");
  return WittVec{x.ring, eval_family(WittFamily::Frobenius, x.c, {}, x.length() - 1)};
}

WittVec witt_frobenius_fixed(const WittVec& x) {
  WittVec r = x;
  for (auto& a : r.c) a = frobenius(a);
  return r;
}

WittVec teichmuller(const RingElem& a, std::size_t m) {
  WittVec w = witt_zero(a.ring, m);
  w.c[0] = a;
  return w;
}

WittVec divided_frobenius(const WittVec& x) {
  if (!x.c[0].is_zero()) fail(ErrorKind::NotInIdeal, "0-th component is nonzero; not in the image of v");
  if (x.length() < 2) fail(ErrorKind::TruncationUnderflow, "divided Frobenius needs length >= 2");
  return WittVec{x.ring, std::vector<RingElem>(x.c.begin() + 1, x.c.end())};
}

WittVec truncate(const WittVec& x, std::size_t m) {
  if (m < 1 || m > x.length()) fail(ErrorKind::TruncationUnderflow, "invalid truncation length");
  return WittVec{x.ring, std::vector<RingElem>(x.c.begin(), x.c.begin() + static_cast<std::ptrdiff_t>(m))};
}

WittVec witt_p_times(const WittVec& x) { return truncate(verschiebung(witt_frobenius_fixed(x)), x.length()); }

bool witt_is_unit(const WittVec& x) { return is_unit(x.c[0]); }

WittVec witt_inverse(const WittVec& x) {
  if (!witt_is_unit(x)) fail(ErrorKind::NotAUnit, "Witt vector with non-unit 0-th component");
  const std::size_t m = x.length();
  const WittVec one = witt_one(x.ring, m);
  const WittVec two = witt_from_int(x.ring, m, 2);
  WittVec y = teichmuller(invert(x.c[0]), m);
  for (int it = 0; it < 64; ++it) {
    const WittVec xy = witt_mul(x, y);
    if (xy == one) return y;
    y = witt_mul(y, witt_sub(two, xy));
  }
  fail(ErrorKind::Internal, "Witt inverse did not converge");
}

bool operator==(const WittVec& a, const WittVec& b) {
  check_compatible(a, b);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i].c != b.c[i].c) return false;
  return true;
}

bool operator<(const WittVec& a, const WittVec& b) {
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].c != b.c[i].c) return a.c[i].c < b.c[i].c;
  }
  return false;
}

std::uint64_t witt_size(const Ring& r, std::size_t m) {
  std::uint64_t s = 1;
  const std::uint64_t n = r->size();
  for (std::size_t i = 0; i < m; ++i) {
    if (n != 0 && s > std::numeric_limits<std::uint64_t>::max() / n) return std::numeric_limits<std::uint64_t>::max();
    s *= n;
  }
  return s;
}

std::uint64_t witt_index(const WittVec& x) {
  const std::uint64_t n = x.ring->size();
  std::uint64_t idx = 0;
  for (const auto& a : x.c) idx = idx * n + elem_index(a);
  return idx;
}

WittVec witt_at(const Ring& r, std::size_t m, std::uint64_t idx) {
  const std::uint64_t n = r->size();
  WittVec w = witt_zero(r, m);
  for (std::size_t k = m; k-- > 0;) {
    w.c[k] = elem_at(r, idx % n);
    idx /= n;
  }
  return w;
}

Enumeration<WittVec> enumerate_witt(const Ring& r, std::size_t m, std::uint64_t cap) {
  const std::uint64_t n = witt_size(r, m);
  if (n > cap) fail(ErrorKind::EnumerationTooLarge, "W_m(R) has " + std::to_string(n) + " elements");
  return Enumeration<WittVec>(n, [r, m](std::uint64_t i) { return witt_at(r, m, i); });
}

WittVec random_witt(const Ring& r, std::size_t m, std::mt19937_64& rng) {
  WittVec w = witt_zero(r, m);
  for (auto& a : w.c) a = random_elem(r, rng);
  return w;
}

LogCoords log_coords(const Ext& ext, const WittVec& x) {
  check_same_ring(x.ring, ext->B);
  for (const auto& a : x.c)
    if (!ext->in_J(a)) fail(ErrorKind::NotInIdeal, "Witt component outside J");
  return LogCoords{ext, x.c};
}

WittVec log_to_witt(const LogCoords& x) { return WittVec{x.ext->B, x.comps}; }

LogCoords log_shift(const LogCoords& x) {
  LogCoords r = x;
  for (std::size_t i = 0; i + 1 < r.comps.size(); ++i) r.comps[i] = x.comps[i + 1];
  if (!r.comps.empty()) r.comps.back() = ring_zero(x.ext->B);
  return r;
}

// ---------------------------------------------------------------------------

WMat wmat_zero(const Ring& r, std::size_t m, std::size_t rows, std::size_t cols) {
  WMat a;
  a.ring = r;
  a.m = m;
  a.rows = rows;
  a.cols = cols;
  a.e.assign(rows * cols, witt_zero(r, m));
  return a;
}

WMat wmat_identity(const Ring& r, std::size_t m, std::size_t n) {
  WMat a = wmat_zero(r, m, n, n);
  for (std::size_t i = 0; i < n; ++i) a.at(i, i) = witt_one(r, m);
  return a;
}

WMat wmat_mul(const WMat& a, const WMat& b) {
  if (a.cols != b.rows) fail(ErrorKind::TypeMismatch, "matrix shapes do not compose");
  WMat r = wmat_zero(a.ring, a.m, a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) {
      WittVec acc = witt_zero(a.ring, a.m);
      for (std::size_t k = 0; k < a.cols; ++k) {
        if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
        acc = witt_add(acc, witt_mul(a.at(i, k), b.at(k, j)));
      }
      r.at(i, j) = acc;
    }
  return r;
}

WMat wmat_add(const WMat& a, const WMat& b) {
  if (a.rows != b.rows || a.cols != b.cols) fail(ErrorKind::TypeMismatch, "matrix shapes differ");
  WMat r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = witt_add(a.e[i], b.e[i]);
  return r;
}

WMat wmat_sub(const WMat& a, const WMat& b) {
  if (a.rows != b.rows || a.cols != b.cols) fail(ErrorKind::TypeMismatch, "matrix shapes differ");
  WMat r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = witt_sub(a.e[i], b.e[i]);
  return r;
}

WMat wmat_transpose(const WMat& a) {
  WMat r = wmat_zero(a.ring, a.m, a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
  return r;
}

WMat wmat_map(const WMat& a, WittVec (*f)(const WittVec&)) {
  WMat r = a;
  for (auto& x : r.e) x = f(x);
  return r;
}

bool operator==(const WMat& a, const WMat& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] != b.e[i]) return false;
  return true;
}

bool operator<(const WMat& a, const WMat& b) {
  for (std::size_t i = 0; i < a.e.size(); ++i) {
    if (a.e[i] < b.e[i]) return true;
    if (b.e[i] < a.e[i]) return false;
  }
  return false;
}

std::vector<Coef> wmat_residue(const WMat& a) {
  std::vector<Coef> r(a.e.size());
  for (std::size_t i = 0; i < a.e.size(); ++i) r[i] = a.e[i].c[0].constant();
  return r;
}

std::vector<Coef> fq_mat_inverse(const FiniteField& F, const std::vector<Coef>& a, std::size_t n) {
  std::vector<Coef> m = a, inv(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv * n + col] == 0) ++piv;
    if (piv == n) return {};
    if (piv != col)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(m[piv * n + k], m[col * n + k]);
        std::swap(inv[piv * n + k], inv[col * n + k]);
      }
    const Coef s = F.inv(m[col * n + col]);
    for (std::size_t k = 0; k < n; ++k) {
      m[col * n + k] = F.mul(m[col * n + k], s);
      inv[col * n + k] = F.mul(inv[col * n + k], s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r * n + col] == 0) continue;
      const Coef f = m[r * n + col];
      for (std::size_t k = 0; k < n; ++k) {
        m[r * n + k] = F.sub(m[r * n + k], F.mul(f, m[col * n + k]));
        inv[r * n + k] = F.sub(inv[r * n + k], F.mul(f, inv[col * n + k]));
      }
    }
  }
  return inv;
}

bool wmat_is_invertible(const WMat& a) {
  if (a.rows != a.cols) return false;
  if (a.rows == 0) return true;
  return !fq_mat_inverse(a.ring->field(), wmat_residue(a), a.rows).empty();
}

WMat wmat_inverse(const WMat& a) {
  if (a.rows != a.cols) fail(ErrorKind::TypeMismatch, "inverse of a non-square matrix");
  const std::size_t n = a.rows;
  auto res = fq_mat_inverse(a.ring->field(), wmat_residue(a), n);
  if (n > 0 && res.empty()) fail(ErrorKind::NotAUnit, "matrix is singular modulo the maximal ideal");
  WMat y = wmat_zero(a.ring, a.m, n, n);
  for (std::size_t i = 0; i < n * n; ++i) y.e[i] = teichmuller(ring_from_coef(a.ring, res[i]), a.m);
  const WMat id = wmat_identity(a.ring, a.m, n);
  WMat two = id;
  for (std::size_t i = 0; i < n; ++i) two.at(i, i) = witt_from_int(a.ring, a.m, 2);
  for (int it = 0; it < 64; ++it) {
    const WMat ay = wmat_mul(a, y);
    if (ay == id) return y;
    y = wmat_mul(y, wmat_sub(two, ay));
  }
  fail(ErrorKind::Internal, "matrix inverse did not converge");
}

}  // namespace hdisp

namespace hdisp {

std::string to_string(const WittVec& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.c.size(); ++i) out += (i ? ", " : "") + to_string(x.c[i]);
  return out + ")";
}

std::string to_string(const WMat& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.rows; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < a.cols; ++j) out += (j ? ", " : "") + to_string(a.at(i, j));
    out += "]";
  }
  return out + "]";
}

}  // namespace hdisp
