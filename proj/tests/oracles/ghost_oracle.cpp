#include "oracles/ghost_oracle.hpp"

#include <gmpxx.h>

#include <stdexcept>

namespace oracle {

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

namespace {

using Big = std::vector<mpz_class>;

mpz_class pw(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Big ghosts(int p, const Big& x, std::size_t count) {
  Big w(count);
  for (std::size_t n = 0; n < count; ++n) {
    mpz_class s = 0;
    for (std::size_t i = 0; i <= n; ++i) s += pw(p, i) * pw(x[i], static_cast<unsigned long>(ipow(p, static_cast<int>(n - i))));
    w[n] = s;
  }
  return w;
}

Big invert_ghosts(int p, const Big& w) {
  Big x(w.size());
  for (std::size_t n = 0; n < w.size(); ++n) {
    mpz_class s = w[n];
    for (std::size_t i = 0; i < n; ++i) s -= pw(p, i) * pw(x[i], static_cast<unsigned long>(ipow(p, static_cast<int>(n - i))));
    const mpz_class d = pw(p, n);
    if (!mpz_divisible_p(s.get_mpz_t(), d.get_mpz_t())) throw std::runtime_error("ghost inversion not integral");
    x[n] = s / d;
  }
  return x;
}

Big lift(const Comps& x) {
  Big r;
  for (long long v : x) r.emplace_back(static_cast<long>(v));
  return r;
}

Comps reduce(int p, const Big& x) {
  Comps r;
  for (const auto& v : x) {
    mpz_class m;
    mpz_fdiv_r_ui(m.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
    r.push_back(m.get_si());
  }
  return r;
}

}  // namespace

Comps ghost_add(int p, const Comps& x, const Comps& y) {
  Big wx = ghosts(p, lift(x), x.size()), wy = ghosts(p, lift(y), y.size());
  for (std::size_t i = 0; i < wx.size(); ++i) wx[i] += wy[i];
  return reduce(p, invert_ghosts(p, wx));
}

Comps ghost_mul(int p, const Comps& x, const Comps& y) {
  Big wx = ghosts(p, lift(x), x.size()), wy = ghosts(p, lift(y), y.size());
  for (std::size_t i = 0; i < wx.size(); ++i) wx[i] *= wy[i];
  return reduce(p, invert_ghosts(p, wx));
}

Comps ghost_frobenius(int p, const Comps& x) {
  Big w = ghosts(p, lift(x), x.size());
  Big shifted(w.begin() + 1, w.end());
  return reduce(p, invert_ghosts(p, shifted));
}

long long witt_to_integer(int p, const Comps& x) {
  const int m = static_cast<int>(x.size());
  const long long mod = ipow(p, m);
  long long acc = 0;
  for (int i = 0; i < m; ++i) {
    mpz_class t = pw(mpz_class(static_cast<long>(x[i])), static_cast<unsigned long>(ipow(p, m - 1)));
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(mod));
    acc = (acc + ipow(p, i) * r.get_si()) % mod;
  }
  return acc;
}

}  // namespace oracle
