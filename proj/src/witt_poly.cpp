#include "hdisp/witt_poly.hpp"

#include <algorithm>
#include <map>
#include <memory>

namespace hdisp {

namespace {

int bit_length(long long v) {
  int b = 0;
  while (v) {
    ++b;
    v >>= 1;
  }
  return b;
}

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int levels_for(int p) {
  for (int L = 6; L >= 2; --L) {
    int bits = 0;
    for (int i = 0; i <= L; ++i) bits += bit_length(ipow(p, L - i));
    if (2 * bits <= 128) return L;
  }
  fail(ErrorKind::Precondition, "prime too large for Witt polynomial cache");
}

}  // namespace

ExpLayout::ExpLayout(int p, int levels) : levels_(levels) {
  int sh = 0;
  for (int side = 0; side < 2; ++side)
    for (int i = 0; i <= levels; ++i) {
      const long long mx = ipow(p, levels - i);
      const int w = bit_length(mx);
      shift_.push_back(sh);
      width_.push_back(w);
      max_.push_back(static_cast<int>(mx));
      sh += w;
    }
}

IntPoly ipoly_add(const IntPoly& a, const IntPoly& b) {
  IntPoly r = a;
  for (const auto& [k, c] : b) {
    auto it = r.find(k);
    if (it == r.end())
      r.emplace(k, c);
    else {
      it->second += c;
      if (it->second == 0) r.erase(it);
    }
  }
  return r;
}

IntPoly ipoly_scale(const IntPoly& a, const mpz_class& s) {
  IntPoly r;
  if (s == 0) return r;
  r.reserve(a.size());
  for (const auto& [k, c] : a) r.emplace(k, c * s);
  return r;
}

IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r;
  r.reserve(a.size() * 4 + b.size());
  mpz_class t;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      mpz_mul(t.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      auto [it, inserted] = r.try_emplace(ka + kb, t);
      if (!inserted) it->second += t;
    }
  for (auto it = r.begin(); it != r.end();) {
    if (it->second == 0)
      it = r.erase(it);
    else
      ++it;
  }
  return r;
}

IntPoly ipoly_pow(const IntPoly& a, unsigned e) {
  IntPoly result;
  result.emplace(ExpKey(0), mpz_class(1));
  IntPoly base = a;
  while (e) {
    if (e & 1) result = ipoly_mul(result, base);
    e >>= 1;
    if (e) base = ipoly_mul(base, base);
  }
  return result;
}

bool ipoly_equal(const IntPoly& a, const IntPoly& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, c] : a) {
    auto it = b.find(k);
    if (it == b.end() || it->second != c) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

WittPolyCache::WittPolyCache(int p) : p_(p), layout_(p, levels_for(p)) {}

const WittPolyCache& WittPolyCache::get(int p) {
  static std::mutex m;
  static std::map<int, std::unique_ptr<WittPolyCache>> caches;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = caches[p];
  if (!slot) slot = std::make_unique<WittPolyCache>(p);
  return *slot;
}

IntPoly WittPolyCache::ghost(int n, int side) const {
  IntPoly g;
  mpz_class pi = 1;
  for (int i = 0; i <= n; ++i) {
    const int var = side == 0 ? layout_.x(i) : layout_.y(i);
    g.emplace(layout_.single(var, static_cast<int>(ipow(p_, n - i))), pi);
    pi *= p_;
  }
  return g;
}

IntPoly WittPolyCache::target(WittFamily fam, int n) const {
  switch (fam) {
    case WittFamily::Sum: return ipoly_add(ghost(n, 0), ghost(n, 1));
    case WittFamily::Product: return ipoly_mul(ghost(n, 0), ghost(n, 1));
    case WittFamily::Negation: return ipoly_scale(ghost(n, 0), mpz_class(-1));
    case WittFamily::Frobenius: return ghost(n + 1, 0);
  }
  return {};
}

void WittPolyCache::ensure(int n) const {
  if (n > max_index())
    fail(ErrorKind::Precondition, "Witt length exceeds the polynomial cache for p = " + std::to_string(p_));
  for (int f = 0; f < 4; ++f) {
    const auto fam = static_cast<WittFamily>(f);
    auto& polys = polys_[f];
    auto& pows = powers_[f];
    // the Frobenius family needs one extra level of variables
    if (fam == WittFamily::Frobenius && n + 1 > layout_.levels())
      fail(ErrorKind::Precondition, "Frobenius index exceeds the polynomial cache");
    while (static_cast<int>(polys.size()) <= n) {
      const int k = static_cast<int>(polys.size());
      IntPoly acc = target(fam, k);
      mpz_class pi = 1;
      for (int i = 0; i < k; ++i) {
        // pows[i][k - i] = polys[i]^(p^(k-i))
        while (static_cast<int>(pows[i].size()) <= k - i) pows[i].push_back(ipoly_pow(pows[i].back(), static_cast<unsigned>(p_)));
        acc = ipoly_add(acc, ipoly_scale(pows[i][k - i], -pi));
        pi *= p_;
      }
      IntPoly q;
      q.reserve(acc.size());
      for (auto& [key, c] : acc) {
        if (!mpz_divisible_p(c.get_mpz_t(), pi.get_mpz_t()))
          fail(ErrorKind::Internal, "ghost inversion produced a non-integral coefficient");
        mpz_class d;
        mpz_divexact(d.get_mpz_t(), c.get_mpz_t(), pi.get_mpz_t());
        q.emplace(key, d);
      }
      polys.push_back(q);
      pows.push_back({q});

      ModPoly mp;
      for (const auto& [key, c] : q) {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p_));
        if (r == 0) continue;
        ModTerm t;
        t.coef = static_cast<int>(r.get_si());
        for (int v = 0; v < layout_.nvars(); ++v) {
          const int e = layout_.exponent(key, v);
          if (e) t.factors.emplace_back(v, e);
        }
        mp.terms.push_back(std::move(t));
      }
      // deterministic term order
      std::sort(mp.terms.begin(), mp.terms.end(),
                [](const ModTerm& a, const ModTerm& b) { return a.factors < b.factors; });
      mod_[f].push_back(std::move(mp));
    }
  }
}

const IntPoly& WittPolyCache::poly(WittFamily fam, int n) const {
  std::lock_guard<std::mutex> lock(mu_);
  ensure(n);
  return polys_[static_cast<int>(fam)][n];
}

const ModPoly& WittPolyCache::modp(WittFamily fam, int n) const {
  std::lock_guard<std::mutex> lock(mu_);
  ensure(n);
  return mod_[static_cast<int>(fam)][n];
}

bool WittPolyCache::verify_ghost(WittFamily fam, int n) const {
  std::vector<IntPoly> fams;
  for (int i = 0; i <= n; ++i) fams.push_back(poly(fam, i));
  IntPoly lhs;
  mpz_class pi = 1;
  for (int i = 0; i <= n; ++i) {
    IntPoly pw = ipoly_pow(fams[i], static_cast<unsigned>(ipow(p_, n - i)));
    lhs = ipoly_add(lhs, ipoly_scale(pw, pi));
    pi *= p_;
  }
  return ipoly_equal(lhs, target(fam, n));
}

RingElem eval_modp(const ModPoly& poly, const ExpLayout& layout, const std::vector<RingElem>& xs,
                   const std::vector<RingElem>& ys) {
  const Ring& R = xs.empty() ? ys.front().ring : xs.front().ring;
  std::vector<std::vector<RingElem>> pw(layout.nvars());
  auto value = [&](int var, int e) -> const RingElem& {
    auto& t = pw[var];
    if (t.empty()) {
      const int side = var <= layout.levels() ? 0 : 1;
      const int idx = side == 0 ? var : var - layout.levels() - 1;
      const auto& src = side == 0 ? xs : ys;
      if (idx >= static_cast<int>(src.size())) fail(ErrorKind::Internal, "Witt polynomial variable out of range");
      t.push_back(ring_one(R));
      t.push_back(src[idx]);
    }
    while (static_cast<int>(t.size()) <= e) t.push_back(ring_mul(t.back(), t[1]));
    return t[e];
  };
  RingElem acc = ring_zero(R);
  for (const auto& term : poly.terms) {
    RingElem v = ring_from_int(R, term.coef);
    for (const auto& [var, e] : term.factors) {
      v = ring_mul(v, value(var, e));
      if (v.is_zero()) break;
    }
    acc = ring_add(acc, v);
  }
  return acc;
}

}  // namespace hdisp
