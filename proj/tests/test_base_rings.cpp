#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "hdisp/base_rings.hpp"

using namespace hdisp;

namespace {

Ring f3() { return ArtinRing::field_ring(FiniteField(3, 1, {})); }
Ring f9() { return ArtinRing::field_ring(FiniteField(3, 2, {1, 0, 1})); }
Ring f3x2() { return ArtinRing::make(FiniteField(3, 1, {}), {"x"}, {"x^2"}); }
Ring f9x2() { return ArtinRing::make(FiniteField(3, 2, {1, 0, 1}), {"x"}, {"x^2"}); }

// Schoolbook product of coefficient lists followed by long division by t^2 + 1 over F_3.
std::vector<int> naive_f9_mul(std::vector<int> a, std::vector<int> b) {
  std::vector<int> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  for (int k = static_cast<int>(prod.size()) - 1; k >= 2; --k) {
    prod[k - 2] -= prod[k];
    prod[k] = 0;
  }
  prod.resize(2);
  for (auto& c : prod) c = ((c % 3) + 3) % 3;
  return prod;
}

void check_ring_axioms(const Ring& R, std::uint64_t exhaustive_limit, int samples) {
  auto all = enumerate_ring(R);
  const RingElem zero = ring_zero(R), one = ring_one(R);
  if (all.size() <= exhaustive_limit) {
    for (auto a : all)
      for (auto b : all) {
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        for (auto c : all) {
          REQUIRE((a + b) + c == a + (b + c));
          REQUIRE((a * b) * c == a * (b * c));
          REQUIRE(a * (b + c) == a * b + a * c);
        }
      }
  } else {
    std::mt19937_64 rng(7);
    for (int i = 0; i < samples; ++i) {
      auto a = random_elem(R, rng), b = random_elem(R, rng), c = random_elem(R, rng);
      REQUIRE(a + b == b + a);
      REQUIRE(a * b == b * a);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
    }
  }
  for (auto a : all) {
    REQUIRE(a + zero == a);
    REQUIRE(a * one == a);
    REQUIRE(a + (-a) == zero);
  }
}

}  // namespace

TEST_CASE("field construction rejects bad input") {
  CHECK_THROWS_AS(FiniteField(4, 1, {}), Error);
  CHECK_THROWS_AS(FiniteField(3, 2, {2, 0, 1}), Error);  // t^2 + 2 = (t-1)(t+1)
  CHECK(FiniteField::is_irreducible(3, {1, 0, 1}));
  CHECK_FALSE(FiniteField::is_irreducible(2, {1, 0, 1}));
  CHECK(FiniteField::default_modulus(2, 2) == std::vector<int>{1, 1, 1});
}

TEST_CASE("ring construction") {
  auto R = ArtinRing::make(FiniteField(3, 1, {}), {"x", "y"}, {"x^2", "x*y", "y^3"});
  CHECK(R->dim() == 4);
  CHECK(R->monomial_name(0) == "1");
  CHECK(R->nilpotency() == 3);
  CHECK_THROWS_AS(ArtinRing::make(FiniteField(3, 1, {}), {"x", "y"}, {"x^2"}), Error);
}

TEST_CASE("ring_add / ring_mul / ring_neg examples") {
  auto R = f3x2();
  auto x = ring_elem(R, {{"x", 1}});
  CHECK((x * x).is_zero());
  auto a = ring_elem(R, {{"1", 2}, {"x", 1}});
  CHECK(a + ring_zero(R) == a);

  // t * t in F_9, expected value from the remainder oracle
  auto F = f9();
  auto expected = naive_f9_mul({0, 1}, {0, 1});
  CHECK(expected == std::vector<int>{2, 0});
  RingElem t = ring_from_coef(F, F->field().from_digits({0, 1}));
  CHECK((t * t) == ring_from_coef(F, F->field().from_digits(expected)));
  CHECK((t * t) == ring_from_int(F, -1));

  // whole F_9 multiplication table against the oracle
  for (Coef u = 0; u < 9; ++u)
    for (Coef v = 0; v < 9; ++v) {
      auto du = F->field().digits(u), dv = F->field().digits(v);
      CHECK(F->field().mul(u, v) == F->field().from_digits(naive_f9_mul(du, dv)));
    }

  auto other = f9x2();
  CHECK_THROWS_AS(ring_add(x, ring_zero(other)), Error);
}

TEST_CASE("frobenius examples") {
  auto R = f3x2();
  CHECK(frobenius(ring_one(R)) == ring_one(R));
  CHECK(frobenius(ring_elem(R, {{"x", 1}})).is_zero());
  auto F = f9();
  RingElem t = ring_from_coef(F, F->field().from_digits({0, 1}));
  RingElem naive = t * t * t;
  CHECK(frobenius(t) == naive);
  CHECK(frobenius(t) == ring_from_coef(F, F->field().from_digits({0, 2})));
}

TEST_CASE("is_unit / invert examples") {
  auto R = f3x2();
  auto a = ring_elem(R, {{"1", 1}, {"x", 1}});
  auto inv = invert(a);
  CHECK(inv == ring_elem(R, {{"1", 1}, {"x", 2}}));
  CHECK(a * inv == ring_one(R));
  auto x = ring_elem(R, {{"x", 1}});
  CHECK_FALSE(is_unit(x));
  CHECK_THROWS_AS(invert(x), Error);
  auto F3 = f3();
  CHECK(invert(ring_from_int(F3, 2)) == ring_from_int(F3, 2));
}

TEST_CASE("enumerate_ring sizes and order") {
  CHECK(enumerate_ring(f3()).size() == 3);
  CHECK(enumerate_ring(f3x2()).size() == 9);
  CHECK(enumerate_ring(f9x2()).size() == 81);
  auto e = enumerate_ring(f9x2());
  for (std::uint64_t i = 0; i < e.size(); ++i) CHECK(elem_index(e[i]) == i);
  for (std::uint64_t i = 1; i < e.size(); ++i) CHECK(e[i - 1] < e[i]);
  auto big = ArtinRing::make(FiniteField(3, 1, {}), {"x", "y"}, {"x^8", "y^8"});
  CHECK_THROWS_AS(enumerate_ring(big), Error);
  CHECK(enumerate_ring(big, ~0ULL).size() > kDefaultEnumCap);
}

TEST_CASE("ring axioms") {
  check_ring_axioms(f3(), 100, 0);
  check_ring_axioms(f9(), 100, 0);
  check_ring_axioms(f3x2(), 100, 0);
  check_ring_axioms(f9x2(), 100, 0);
  check_ring_axioms(ArtinRing::make(FiniteField(3, 1, {}), {"x"}, {"x^3"}), 100, 0);
  check_ring_axioms(ArtinRing::make(FiniteField(2, 2, {}), {"x", "y"}, {"x^2", "y^2"}), 100, 2000);
  check_ring_axioms(ArtinRing::make(FiniteField(3, 2, {1, 0, 1}), {"x", "y"}, {"x^2", "x*y", "y^2"}), 100, 2000);
}

TEST_CASE("frobenius is a ring endomorphism; units vs maximal ideal") {
  for (auto R : {f3x2(), f9x2(), ArtinRing::make(FiniteField(2, 1, {}), {"x"}, {"x^4"})}) {
    auto all = enumerate_ring(R);
    for (auto a : all) {
      CHECK(is_unit(a) != in_max_ideal(a));
      for (auto b : all) {
        REQUIRE(frobenius(a + b) == frobenius(a) + frobenius(b));
        REQUIRE(frobenius(a * b) == frobenius(a) * frobenius(b));
      }
    }
  }
}

TEST_CASE("square-zero extension") {
  auto B = ArtinRing::make(FiniteField(3, 1, {}), {"e"}, {"e^2"});
  auto ext = SquareZeroExtension::make(B, {"e"});
  CHECK(ext.A->size() == 3);
  CHECK(ext.J_size() == 3);
  for (auto a : enumerate_ring(ext.A)) CHECK(ext.proj(ext.section(a)) == a);
  for (auto j : ext.enumerate_J())
    for (auto k : ext.enumerate_J()) CHECK((j * k).is_zero());
  auto B2 = ArtinRing::make(FiniteField(3, 1, {}), {"x"}, {"x^3"});
  auto ext2 = SquareZeroExtension::make(B2, {"x^2"});
  CHECK(ext2.A->size() == 9);
  CHECK_THROWS_AS(SquareZeroExtension::make(B2, {"x"}), Error);
}
