#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

// Orbits of GL_2 displays of type (1,0) over the zip frame of F_p, computed from raw
// tuples (a11, a12, a21, a22): tau = [[a11, a12], [0, a22]], sigma = [[a11^p, 0], [a21, a22^p]].
namespace oracle {

using M2 = std::array<int, 4>;

inline int md(long long a, int p) { return static_cast<int>(((a % p) + p) % p); }

inline int powmod(int a, int e, int p) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r = r * a % p;
  return static_cast<int>(r);
}

inline M2 mul2(const M2& x, const M2& y, int p) {
  return {md(1LL * x[0] * y[0] + 1LL * x[1] * y[2], p), md(1LL * x[0] * y[1] + 1LL * x[1] * y[3], p),
          md(1LL * x[2] * y[0] + 1LL * x[3] * y[2], p), md(1LL * x[2] * y[1] + 1LL * x[3] * y[3], p)};
}

inline int det2(const M2& x, int p) { return md(1LL * x[0] * x[3] - 1LL * x[1] * x[2], p); }

inline M2 inv2(const M2& x, int p) {
  const int d = powmod(det2(x, p), p - 2, p);
  return {md(1LL * x[3] * d, p), md(-1LL * x[1] * d, p), md(-1LL * x[2] * d, p), md(1LL * x[0] * d, p)};
}

inline int code(const M2& x, int p) { return ((x[0] * p + x[1]) * p + x[2]) * p + x[3]; }

struct ConjOrbits {
  std::size_t count = 0;
  std::vector<std::uint64_t> sizes;  // sorted
};

inline ConjOrbits conj_orbits_gl2(int p) {
  const int N = p * p * p * p;
  std::vector<int> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::vector<M2> invertible;
  for (int c = 0; c < N; ++c) {
    M2 x{c / (p * p * p), (c / (p * p)) % p, (c / p) % p, c % p};
    if (det2(x, p) != 0) invertible.push_back(x);
  }
  for (int a11 = 1; a11 < p; ++a11)
    for (int a22 = 1; a22 < p; ++a22)
      for (int a12 = 0; a12 < p; ++a12)
        for (int a21 = 0; a21 < p; ++a21) {
          const M2 tau{a11, a12, 0, a22};
          const M2 sig{powmod(a11, p, p), 0, a21, powmod(a22, p, p)};
          const M2 ti = inv2(tau, p);
          for (const auto& x : invertible) {
            const int a = find(code(x, p)), b = find(code(mul2(mul2(ti, x, p), sig, p), p));
            if (a != b) parent[a] = b;
          }
        }
  std::vector<std::uint64_t> size(N, 0);
  for (const auto& x : invertible) ++size[find(code(x, p))];
  ConjOrbits out;
  for (auto s : size)
    if (s) out.sizes.push_back(s);
  std::sort(out.sizes.begin(), out.sizes.end());
  out.count = out.sizes.size();
  return out;
}

}  // namespace oracle
