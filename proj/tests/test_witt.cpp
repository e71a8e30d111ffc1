#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <random>

#include "hdisp/witt.hpp"
#include "oracles/ghost_oracle.hpp"

using namespace hdisp;

namespace {

Ring fp(int p) { return ArtinRing::field_ring(FiniteField(p, 1, {})); }
Ring f9() { return ArtinRing::field_ring(FiniteField(3, 2, {1, 0, 1})); }
Ring f3eps() { return ArtinRing::make(FiniteField(3, 1, {}), {"e"}, {"e^2"}); }

WittVec wv(const Ring& r, const std::vector<long long>& comps) {
  std::vector<RingElem> c;
  for (auto v : comps) c.push_back(ring_from_int(r, v));
  return witt_from_components(r, c);
}

oracle::Comps comps_of(const WittVec& x) {
  oracle::Comps out;
  for (const auto& a : x.c) out.push_back(static_cast<long long>(a.constant()));
  return out;
}

}  // namespace

TEST_CASE("ghost identities hold symbolically") {
  for (int p : {2, 3}) {
    const auto& cache = WittPolyCache::get(p);
    for (int n = 0; n <= 4; ++n)
      for (auto fam : {WittFamily::Sum, WittFamily::Product, WittFamily::Negation, WittFamily::Frobenius})
        CHECK(cache.verify_ghost(fam, n));
  }
}

TEST_CASE("polynomial cache build time for p = 3, n <= 4") {
  auto t0 = std::chrono::steady_clock::now();
  const auto& cache = WittPolyCache::get(3);
  for (int n = 0; n <= 4; ++n) cache.modp(WittFamily::Product, n);
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("p=3 cache up to n=4: " << s << " s");
  CHECK(s < 30.0);
}

TEST_CASE("witt_add / witt_mul examples") {
  auto F3 = fp(3);
  CHECK(witt_add(wv(F3, {1, 0}), wv(F3, {2, 0})) == wv(F3, {0, 0}));
  CHECK(oracle::ghost_add(3, {1, 0}, {2, 0}) == oracle::Comps{0, 0});
  CHECK(witt_mul(wv(F3, {1, 1}), wv(F3, {1, 1})) == wv(F3, {1, 2}));
  CHECK(oracle::ghost_mul(3, {1, 1}, {1, 1}) == oracle::Comps{1, 2});
  auto x = wv(F3, {2, 1, 1});
  CHECK(witt_add(x, witt_zero(F3, 3)) == x);
  CHECK_THROWS_AS(witt_add(wv(F3, {1, 0}), wv(F3, {1, 0, 0})), Error);
  CHECK_THROWS_AS(witt_add(wv(F3, {1}), wv(fp(2), {1})), Error);
}

TEST_CASE("witt arithmetic against the ghost oracle") {
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {3, 3}, {5, 2}}) {
    auto R = fp(p);
    for (auto x : enumerate_witt(R, m))
      for (auto y : enumerate_witt(R, m)) {
        auto cx = comps_of(x), cy = comps_of(y);
        REQUIRE(comps_of(witt_add(x, y)) == oracle::ghost_add(p, cx, cy));
        REQUIRE(comps_of(witt_mul(x, y)) == oracle::ghost_mul(p, cx, cy));
        // also through the isomorphism to Z/p^m
        const long long mod = oracle::ipow(p, m);
        REQUIRE(oracle::witt_to_integer(p, comps_of(witt_mul(x, y))) ==
                oracle::witt_to_integer(p, cx) * oracle::witt_to_integer(p, cy) % mod);
      }
  }
}

TEST_CASE("witt ring axioms") {
  for (auto [R, m] : std::vector<std::pair<Ring, int>>{{fp(3), 2}, {f3eps(), 2}, {fp(2), 3}, {f9(), 2}}) {
    auto all = enumerate_witt(R, m);
    auto zero = witt_zero(R, m), one = witt_one(R, m);
    std::mt19937_64 rng(11);
    const bool full = all.size() <= 81;
    const std::uint64_t n = full ? all.size() : 40;
    auto pick = [&](std::uint64_t i) { return full ? all[i] : random_witt(R, m, rng); };
    for (std::uint64_t i = 0; i < n; ++i) {
      auto a = pick(i);
      REQUIRE(witt_add(a, zero) == a);
      REQUIRE(witt_mul(a, one) == a);
      REQUIRE(witt_add(a, witt_neg(a)) == zero);
      for (std::uint64_t j = 0; j < n; ++j) {
        auto b = pick(j);
        REQUIRE(witt_add(a, b) == witt_add(b, a));
        REQUIRE(witt_mul(a, b) == witt_mul(b, a));
        auto c = full ? all[(i * 7 + j * 3) % all.size()] : random_witt(R, m, rng);
        REQUIRE(witt_add(witt_add(a, b), c) == witt_add(a, witt_add(b, c)));
        REQUIRE(witt_mul(witt_mul(a, b), c) == witt_mul(a, witt_mul(b, c)));
        REQUIRE(witt_mul(a, witt_add(b, c)) == witt_add(witt_mul(a, b), witt_mul(a, c)));
      }
    }
  }
}

TEST_CASE("verschiebung") {
  auto F3 = fp(3);
  CHECK(verschiebung(witt_zero(F3, 2)).is_zero());
  CHECK(verschiebung(wv(F3, {2})) == wv(F3, {0, 2}));
  for (auto a : enumerate_witt(F3, 2))
    for (auto b : enumerate_witt(F3, 2)) REQUIRE(witt_add(verschiebung(a), verschiebung(b)) == verschiebung(witt_add(a, b)));
}

TEST_CASE("witt_frobenius") {
  auto F3 = fp(3);
  for (auto a : enumerate_witt(F3, 2)) REQUIRE(witt_frobenius(verschiebung(a)) == witt_mul_int(a, 3));
  auto x = wv(F3, {1, 1, 1});
  CHECK(witt_frobenius(x) == wv(F3, {1, 1}));
  CHECK(comps_of(witt_frobenius(x)) == oracle::ghost_frobenius(3, {1, 1, 1}));
  CHECK_THROWS_AS(witt_frobenius(wv(F3, {1})), Error);
  for (auto a : enumerate_ring(f9()))
    CHECK(witt_frobenius(teichmuller(a, 3)) == teichmuller(frobenius(a), 2));
  // char p: the universal polynomial agrees with componentwise p-th powers
  auto R = f3eps();
  for (auto a : enumerate_witt(R, 3)) REQUIRE(witt_frobenius(a) == truncate(witt_frobenius_fixed(a), 2));
  for (auto a : enumerate_witt(fp(2), 3)) REQUIRE(comps_of(witt_frobenius(a)) == oracle::ghost_frobenius(2, comps_of(a)));
}

TEST_CASE("teichmuller") {
  for (std::size_t m : {1, 3}) CHECK(teichmuller(ring_one(f9()), m) == witt_one(f9(), m));
  CHECK(teichmuller(ring_zero(f9()), 2).is_zero());
  auto F = f9();
  for (auto a : enumerate_ring(F))
    for (auto b : enumerate_ring(F)) REQUIRE(teichmuller(a * b, 2) == witt_mul(teichmuller(a, 2), teichmuller(b, 2)));
}

TEST_CASE("divided_frobenius") {
  auto F3 = fp(3);
  for (auto a : enumerate_witt(F3, 2)) {
    auto x = verschiebung(a);
    REQUIRE(divided_frobenius(x) == a);
    REQUIRE(witt_mul_int(divided_frobenius(x), 3) == witt_frobenius(x));
  }
  CHECK(divided_frobenius(witt_zero(F3, 2)).is_zero());
  CHECK_THROWS_AS(divided_frobenius(wv(F3, {1, 0})), Error);
}

TEST_CASE("x * v(y) = v(F(x) * y)") {
  for (auto R : {fp(3), f3eps()}) {
    for (auto x : enumerate_witt(R, 2))
      for (auto y : enumerate_witt(R, 1)) {
        auto lhs = witt_mul(x, verschiebung(y));
        auto rhs = verschiebung(witt_mul(witt_frobenius(x), y));
        REQUIRE(lhs == rhs);
      }
    for (auto x : enumerate_witt(R, 2))
      for (auto y : enumerate_witt(R, 2)) {
        auto lhs = witt_mul(x, truncate(verschiebung(y), 2));
        auto rhs = truncate(verschiebung(witt_mul(witt_frobenius_fixed(x), y)), 2);
        REQUIRE(lhs == rhs);
      }
  }
}

TEST_CASE("additive order of 1 in W_m(F_p)") {
  for (auto [p, m] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {3, 3}, {2, 3}}) {
    auto R = fp(p);
    auto one = witt_one(R, m), acc = witt_zero(R, m);
    long long order = 0;
    do {
      acc = witt_add(acc, one);
      ++order;
    } while (!acc.is_zero());
    CHECK(order == oracle::ipow(p, m));
    CHECK(witt_size(R, m) == static_cast<std::uint64_t>(oracle::ipow(p, m)));
  }
}

TEST_CASE("p times equals v after F") {
  for (auto a : enumerate_witt(f3eps(), 2)) REQUIRE(witt_p_times(a) == witt_mul_int(a, 3));
  for (auto a : enumerate_witt(fp(2), 3)) REQUIRE(witt_p_times(a) == witt_mul_int(a, 2));
}

TEST_CASE("inverse") {
  for (auto a : enumerate_witt(f3eps(), 2)) {
    if (!witt_is_unit(a)) {
      CHECK_THROWS_AS(witt_inverse(a), Error);
      continue;
    }
    REQUIRE(witt_mul(a, witt_inverse(a)) == witt_one(a.ring, 2));
  }
}

TEST_CASE("enumeration order") {
  auto e = enumerate_witt(f3eps(), 2);
  CHECK(e.size() == 81);
  for (std::uint64_t i = 0; i < e.size(); ++i) REQUIRE(witt_index(e[i]) == i);
  for (std::uint64_t i = 1; i < e.size(); ++i) REQUIRE(e[i - 1] < e[i]);
}

TEST_CASE("log_shift") {
  auto B = f3eps();
  auto ext = std::make_shared<const SquareZeroExtension>(SquareZeroExtension::make(B, {"e"}));
  auto eps = ring_elem(B, {{"e", 1}});
  auto x = log_coords(ext, witt_from_components(B, {eps, ring_zero(B)}));
  auto s = log_shift(x);
  CHECK(log_to_witt(s).is_zero());
  for (std::size_t m : {1, 2, 3}) {
    std::vector<RingElem> c;
    for (std::size_t i = 0; i < m; ++i) c.push_back(ring_scale(eps, static_cast<Coef>(1 + i % 2)));
    auto y = log_coords(ext, witt_from_components(B, c));
    for (std::size_t k = 0; k < m; ++k) y = log_shift(y);
    CHECK(log_to_witt(y).is_zero());
  }
  // Frobenius on W_m(J) versus p times the shift
  for (std::size_t m : {2, 3}) {
    for (auto a : enumerate_witt(B, m)) {
      bool inJ = true;
      for (const auto& comp : a.c) inJ = inJ && ext->in_J(comp);
      if (!inJ) continue;
      auto lc = log_coords(ext, a);
      auto lhs = witt_mul_int(log_to_witt(log_shift(lc)), 3);
      auto rhs = witt_frobenius_fixed(a);
      REQUIRE(lhs == rhs);
      REQUIRE(witt_frobenius(a) == truncate(rhs, m - 1));
    }
  }
  CHECK_THROWS_AS(log_coords(ext, witt_one(B, 2)), Error);
}

TEST_CASE("matrix inverse") {
  auto R = f3eps();
  std::mt19937_64 rng(5);
  int tested = 0;
  while (tested < 30) {
    WMat a = wmat_zero(R, 2, 3, 3);
    for (auto& e : a.e) e = random_witt(R, 2, rng);
    if (!wmat_is_invertible(a)) continue;
    ++tested;
    CHECK(wmat_mul(a, wmat_inverse(a)) == wmat_identity(R, 2, 3));
    CHECK(wmat_mul(wmat_inverse(a), a) == wmat_identity(R, 2, 3));
  }
}
