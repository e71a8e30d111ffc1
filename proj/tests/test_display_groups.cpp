#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hdisp/display_groups.hpp"
#include "oracles/zip_oracle.hpp"

using namespace hdisp;

namespace {

Ring fp(int p) { return ArtinRing::field_ring(FiniteField(p, 1, {})); }
Ext f3eps() {
  return std::make_shared<const SquareZeroExtension>(
      SquareZeroExtension::make(ArtinRing::make(FiniteField(3, 1, {}), {"e"}, {"e^2"}), {"e"}));
}

GradedMatrix random_group(const FramePtr& f, const std::vector<int>& mu, std::mt19937_64& rng) {
  for (;;) {
    GradedMatrix g = gm_random(f, mu, rng);
    if (in_display_group(g)) return g;
  }
}

std::vector<int> as_ints(const Frame& f, const GradedMatrix& a) {
  std::vector<int> out;
  for (const auto& e : a.e) out.push_back(static_cast<int>(e.deg >= 1 ? e.x.a.c[0].constant() : e.s.c[0].constant()));
  (void)f;
  return out;
}

std::vector<int> as_ints(const WMat& a) {
  std::vector<int> out;
  for (const auto& e : a.e) out.push_back(static_cast<int>(e.c[0].constant()));
  return out;
}

void check_shape(const WeightDecomposition& d) {
  const auto& q = d.pminus;
  const auto& h = d.uplus;
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) {
      if (q.degree(i, j) >= 1) CHECK(g_is_zero(*q.frame, q.at(i, j)));
      if (h.degree(i, j) <= 0) CHECK(g_eq(h.at(i, j), i == j ? g_one(*h.frame) : g_zero(*h.frame, h.degree(i, j))));
    }
}

GradedMatrix perturbed_gram(const FramePtr& f, const std::vector<int>& mu, std::mt19937_64& rng, bool eps_only,
                            const Ext& ext) {
  GradedMatrix B = gram_J(f, mu);
  const std::size_t n = mu.size();
  const WittVec teps = witt_from_components(f->ring, {ext->J_elem({1}), ring_zero(f->ring)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      GradedElem d = B.at(i, j);
      if (d.deg >= 1) {
        PElem x = f->random_P(rng);
        if (eps_only) x.a = witt_mul(x.a, teps);
        d = g_add(*f, d, g_pos(d.deg, x));
      } else {
        WittVec s = f->random_S0(rng);
        if (eps_only)
          s = witt_mul(s, teps);
        else
          s.c[0] = ring_sub(s.c[0], ring_from_int(f->ring, s.c[0].constant()));
        d = g_add(*f, d, g_scalar(d.deg, s));
      }
      B.at(i, j) = d;
      B.at(j, i) = d;
    }
  return B;
}

}  // namespace

TEST_CASE("orthogonal types") {
  CHECK(is_orth_type({1, 0, 0, -1}));
  CHECK(is_orth_type({1, -1}));
  CHECK_FALSE(is_orth_type({1, 0}));
  CHECK(is_one_bounded({1, 0, 0, -1}, GroupKind::O));
  CHECK_FALSE(is_one_bounded({2, 0, -2}, GroupKind::O));
  CHECK(is_one_bounded({1, 1, 0}, GroupKind::GL));
  CHECK_FALSE(is_one_bounded({2, 1, 0}, GroupKind::GL));
  CHECK_THROWS_AS(require_orth(*build_zip_frame(fp(2)), {1, -1}), Error);
}

TEST_CASE("verify_orth") {
  auto f = build_truncated_witt_frame(fp(3), 2);
  CHECK(verify_orth(wmat_identity(f->ring, 2, 4)).ok);
  CHECK(verify_orth(antidiag(f->ring, 2, 4)).ok);
  std::mt19937_64 rng(1);
  int rejected = 0;
  for (int s = 0; s < 50; ++s) {
    WMat U = wmat_zero(f->ring, 2, 3, 3);
    for (auto& e : U.e) e = f->random_S0(rng);
    auto r = verify_orth(U);
    if (r.ok) continue;
    ++rejected;
    CHECK(!r.witness.empty());
    // direct evaluation of psi(U e_i, U e_j)
    WittVec acc = f->s_zero();
    for (std::size_t k = 0; k < 3; ++k) acc = witt_add(acc, witt_mul(U.at(k, r.i), U.at(2 - k, r.j)));
    CHECK(acc != (r.j == 2 - r.i ? f->s_one() : f->s_zero()));
  }
  CHECK(rejected > 40);
}

TEST_CASE("orthogonal unipotent elements") {
  auto f = build_truncated_witt_frame(fp(3), 2);
  const std::vector<int> mu = {1, 0, 0, -1};
  CHECK(in_orth_group(gm_identity(f, mu)));
  for (const auto& x1 : f->enumerate_P())
    for (const auto& x2 : f->enumerate_P()) {
      GradedMatrix h = exp_plus(f, mu, {x1, x2}, GroupKind::O);
      CHECK(in_orth_group(h));
      auto back = log_plus(h, GroupKind::O);
      REQUIRE(back.size() == 2);
      CHECK(back[0] == x1);
      CHECK(back[1] == x2);
    }
  GradedMatrix h = exp_plus(f, mu, {f->p_at(1), f->p_at(2)}, GroupKind::O);
  h.at(3, 0) = g_add(*f, h.at(3, 0), g_pos(2, f->p_at(1)));
  CHECK_FALSE(in_orth_group(h));
}

TEST_CASE("weight two part of the orthogonal Lie algebra vanishes") {
  auto f = build_zip_frame(fp(3));
  const std::vector<int> mu = {1, 0, 0, -1};
  for (const auto& z : f->enumerate_P()) {
    GradedMatrix h = gm_identity(f, mu);
    h.at(3, 0) = g_pos(2, z);
    CHECK(in_orth_group(h) == f->p_is_zero(z));
  }
}

TEST_CASE("log+ is a homomorphism") {
  auto f = build_truncated_witt_frame(fp(3), 2);
  std::mt19937_64 rng(2);
  const std::vector<int> mu = {1, 0, 0, -1};
  for (int s = 0; s < 200; ++s) {
    std::vector<PElem> a = {f->random_P(rng), f->random_P(rng)}, b = {f->random_P(rng), f->random_P(rng)};
    auto h = gm_mul(exp_plus(f, mu, a, GroupKind::O), exp_plus(f, mu, b, GroupKind::O));
    auto l = log_plus(h, GroupKind::O);
    CHECK(l[0] == f->p_add(a[0], b[0]));
    CHECK(l[1] == f->p_add(a[1], b[1]));
    CHECK(h == exp_plus(f, mu, l, GroupKind::O));
  }
  const std::vector<int> gl = {1, 1, 0};
  for (int s = 0; s < 200; ++s) {
    std::vector<PElem> a = {f->random_P(rng), f->random_P(rng)}, b = {f->random_P(rng), f->random_P(rng)};
    auto l = log_plus(gm_mul(exp_plus(f, gl, a, GroupKind::GL), exp_plus(f, gl, b, GroupKind::GL)), GroupKind::GL);
    CHECK(l == std::vector<PElem>{f->p_add(a[0], b[0]), f->p_add(a[1], b[1])});
  }
  CHECK(log_plus(gm_identity(f, mu), GroupKind::O) == std::vector<PElem>{f->p_zero(), f->p_zero()});
  CHECK_THROWS_AS(log_plus(gm_identity(f, {2, 1, 0}), GroupKind::GL), Error);
}

TEST_CASE("decomposition of random GL_2 elements over W_2(F_3)") {
  auto f = build_truncated_witt_frame(fp(3), 2);
  std::mt19937_64 rng(200);
  for (int s = 0; s < 200; ++s) {
    GradedMatrix g = random_group(f, {1, 0}, rng);
    auto d = decompose(g);
    CHECK(gm_mul(d.pminus, d.uplus) == g);
    check_shape(d);
  }
  for (const auto& mu : std::vector<std::vector<int>>{{2, 1, 1, 0}, {1, 0, -1}})
    for (int s = 0; s < 30; ++s) {
      GradedMatrix g = random_group(f, mu, rng);
      auto d = decompose(g);
      CHECK(gm_mul(d.pminus, d.uplus) == g);
      check_shape(d);
      const GradedMatrix gi = gm_inverse(g);
      CHECK(gm_mul(g, gi) == gm_identity(f, mu));
    }
}

TEST_CASE("decomposition is bijective at n = 2 over W_2(F_3)") {
  auto f = build_truncated_witt_frame(fp(3), 2);
  const std::vector<int> mu = {1, 0};
  auto G = enumerate_display_group(f, mu);
  CHECK(G.size() == 6 * 6 * 9 * 9);
  for (const auto& g : G) CHECK(gm_mul(decompose(g).pminus, decompose(g).uplus) == g);
  std::size_t pairs = 0;
  for (const auto& g : G) {
    // g with zero degree-one entry is in P-; g with trivial degree <= 0 part is in U+
    if (!g_is_zero(*f, g.at(1, 0))) continue;
    for (const auto& x : f->enumerate_P()) {
      GradedMatrix h = exp_plus(f, mu, {x}, GroupKind::GL);
      auto d = decompose(gm_mul(g, h));
      CHECK(d.pminus == g);
      CHECK(d.uplus == h);
      ++pairs;
    }
  }
  CHECK(pairs == 6 * 6 * 9 * 9);
}

TEST_CASE("decomposition of trivial cases") {
  auto f = build_truncated_witt_frame(fp(3), 2);
  GradedMatrix u = exp_plus(f, {1, 0}, {f->p_at(5)}, GroupKind::GL);
  CHECK(decompose(u).pminus == gm_identity(f, {1, 0}));
  CHECK(decompose(u).uplus == u);
  GradedMatrix q = gm_identity(f, {1, 0});
  q.at(0, 1) = g_scalar(-1, f->s_int(4));
  CHECK(decompose(q).pminus == q);
  CHECK(decompose(q).uplus == gm_identity(f, {1, 0}));
  CHECK_THROWS_AS(decompose(gm_zero(f, {1, 0}, {1, 0})), Error);
}

TEST_CASE("orthogonal display group at n = 4 over the F_3 zip frame") {
  auto f = build_zip_frame(fp(3));
  const std::vector<int> mu = {1, 0, 0, -1};
  auto G = enumerate_orth_group(f, mu);
  oracle::ZipGraded z{3, mu};
  auto O = z.orth_group();
  CHECK(G.size() == O.size());
  std::vector<std::vector<int>> mine;
  for (const auto& g : G) {
    CHECK(in_orth_group(g));
    mine.push_back(as_ints(*f, g));
    auto d = decompose(g);
    CHECK(gm_mul(d.pminus, d.uplus) == g);
    check_shape(d);
    CHECK(in_orth_group(d.pminus));
    CHECK(in_orth_group(d.uplus));
  }
  std::sort(mine.begin(), mine.end());
  std::sort(O.begin(), O.end());
  CHECK(mine == O);
  MESSAGE("|O(psi) display group| = " << G.size());
}

TEST_CASE("orthogonal group is closed under products and inverses") {
  auto f = build_truncated_witt_frame(fp(3), 2);
  const std::vector<int> mu = {1, 0, 0, -1};
  std::mt19937_64 rng(9);
  auto Gz = enumerate_orth_group(build_zip_frame(fp(3)), mu);
  // lift a few elements: Teichmuller payloads of the degree <= 0 part times exp+
  std::vector<GradedMatrix> G;
  for (int s = 0; s < 20; ++s) {
    GradedMatrix h = exp_plus(f, mu, {f->random_P(rng), f->random_P(rng)}, GroupKind::O);
    GradedMatrix t = gm_identity(f, mu);
    const WittVec u = f->s_int(2);
    t.at(0, 0) = g_scalar(0, u);
    t.at(3, 3) = g_scalar(0, witt_inverse(u));
    G.push_back(gm_mul(t, h));
    if (s % 2) G.back() = gm_mul(h, t);
  }
  for (const auto& a : G) {
    CHECK(in_orth_group(a));
    CHECK(in_orth_group(gm_inverse(a)));
    for (const auto& b : G) CHECK(in_orth_group(gm_mul(a, b)));
  }
  for (std::size_t i = 0; i < Gz.size(); i += 37)
    for (std::size_t j = 0; j < Gz.size(); j += 41) CHECK(in_orth_group(gm_mul(Gz[i], Gz[j])));
}

TEST_CASE("orthogonal matrices match the oracle") {
  auto f = build_zip_frame(fp(3));
  for (std::size_t n : {2u, 3u, 4u}) {
    auto U = enumerate_orth_matrices(f, n);
    auto O = oracle::orth_matrices(n, 3);
    REQUIRE(U.size() == O.size());
    std::vector<std::vector<int>> mine;
    for (const auto& u : U) {
      CHECK(verify_orth(u).ok);
      mine.push_back(as_ints(u));
    }
    std::sort(mine.begin(), mine.end());
    std::sort(O.begin(), O.end());
    CHECK(mine == O);
  }
}

TEST_CASE("orthogonal orbits match the oracle") {
  auto f = build_zip_frame(fp(3));
  for (const auto& mu : std::vector<std::vector<int>>{{1, -1}, {0, 0}, {1, 0, -1}, {1, 0, 0, -1}}) {
    INFO("n = " << mu.size());
    auto r = classify_orth_orbits(f, mu);
    oracle::ZipGraded z{3, mu};
    auto sizes = oracle::orbit_sizes(z, oracle::orth_matrices(mu.size(), 3), z.orth_group());
    CHECK(r.size_multiset() == sizes);
    CHECK(r.total == oracle::orth_matrices(mu.size(), 3).size());
  }
}

TEST_CASE("orbit sizes of U and JUJ") {
  auto f = build_zip_frame(fp(3));
  for (const auto& mu : std::vector<std::vector<int>>{{1, -1}, {1, 0, 0, -1}}) {
    auto X = enumerate_orth_matrices(f, mu.size());
    auto G = enumerate_orth_group(f, mu);
    auto r = orbits_on(f, mu, X, G);
    const WMat J = antidiag(f->ring, 1, mu.size());
    std::vector<WMat> Y;
    for (const auto& x : X) Y.push_back(wmat_mul(J, wmat_mul(x, J)));
    std::sort(Y.begin(), Y.end(), [](const WMat& a, const WMat& b) { return wmat_index(a) < wmat_index(b); });
    auto s = orbits_on(f, mu, Y, G);
    CHECK(s.size_multiset() == r.size_multiset());
    // orbit of U versus orbit of JUJ
    std::size_t same = 0;
    for (std::size_t i = 0; i < r.reps.size(); ++i) {
      const WMat y = wmat_mul(J, wmat_mul(r.reps[i], J));
      std::uint64_t sz = 0;
      std::vector<std::uint64_t> seen;
      for (const auto& g : G) seen.push_back(wmat_index(display_act(Display{f, mu, y}, g).phi));
      std::sort(seen.begin(), seen.end());
      sz = std::unique(seen.begin(), seen.end()) - seen.begin();
      same += sz == r.sizes[i];
    }
    MESSAGE("n = " << mu.size() << ": " << same << " of " << r.reps.size() << " orbits keep their size under JUJ");
    CHECK(same == (mu.size() == 2 ? 4u : 8u));
    CHECK(r.reps.size() == (mu.size() == 2 ? 4u : 20u));
  }
}

TEST_CASE("normalize_gram of J is the identity") {
  auto f = build_relative_frame(f3eps(), 2);
  for (const auto& mu : std::vector<std::vector<int>>{{1, -1}, {1, 0, 0, -1}, {0, 0}}) {
    auto r = normalize_gram(gram_J(f, mu));
    CHECK(r.A == gm_identity(f, mu));
  }
}

TEST_CASE("normalize_gram handles epsilon perturbations") {
  auto e = f3eps();
  auto f = build_relative_frame(e, 2);
  std::mt19937_64 rng(100);
  for (const auto& mu : std::vector<std::vector<int>>{{1, -1}, {1, 0, 0, -1}})
    for (int s = 0; s < 100; ++s) {
      GradedMatrix B = perturbed_gram(f, mu, rng, true, e);
      auto r = normalize_gram(B);
      CHECK(gram_transform(B, r.A) == gram_J(f, mu));
      CHECK(in_display_group(r.A));
    }
}

TEST_CASE("normalize_gram handles perturbations by the radical") {
  auto e = f3eps();
  std::mt19937_64 rng(101);
  for (const auto& f : {build_relative_frame(e, 2), build_truncated_witt_frame(e->B, 2)})
    for (const auto& mu : std::vector<std::vector<int>>{{1, -1}, {1, 0, -1}, {1, 0, 0, -1}, {2, 1, -1, -2}, {0, 0, 0}})
      for (int s = 0; s < 20; ++s) {
        GradedMatrix B = perturbed_gram(f, mu, rng, false, e);
        auto r = normalize_gram(B);
        CHECK(gram_transform(B, r.A) == gram_J(f, mu));
      }
}

TEST_CASE("normalize_gram errors") {
  auto e = f3eps();
  auto f = build_relative_frame(e, 2);
  const std::vector<int> mu = {1, 0, 0, -1};
  GradedMatrix B = gram_J(f, mu);
  B.at(1, 2) = g_scalar(0, f->s_int(2));
  B.at(2, 1) = g_scalar(0, f->s_int(2));
  CHECK_THROWS_WITH_AS(normalize_gram(B), doctest::Contains("residue Gram matrix"), Error);
  B.at(2, 1) = g_scalar(0, f->s_int(1));
  CHECK_THROWS_AS(normalize_gram(B), Error);
  try {
    GradedMatrix C = gram_J(f, mu);
    C.at(1, 2) = g_scalar(0, f->s_int(2));
    C.at(2, 1) = g_scalar(0, f->s_int(2));
    normalize_gram(C);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NeedsResidueNormalization);
  }
  auto z2 = build_zip_frame(fp(2));
  CHECK_THROWS_AS(normalize_gram(gram_J(z2, {1, -1})), Error);
}

TEST_CASE("residue normalizer search") {
  const FiniteField F3(3, 1, {});
  // diag(1, 2): -det = 1 is a square, so the plane is hyperbolic
  auto P = find_residue_normalizer(F3, {1, 0, 0, 2}, 2);
  REQUIRE(P.has_value());
  const auto& m = *P;
  auto form = [&](std::size_t i, std::size_t j) {
    return F3.add(F3.mul(m[0 * 2 + i], m[0 * 2 + j]), F3.mul(F3.from_int(2), F3.mul(m[1 * 2 + i], m[1 * 2 + j])));
  };
  CHECK(form(0, 0) == 0);
  CHECK(form(1, 1) == 0);
  CHECK(form(0, 1) == 1);
  // diag(1, 1) is anisotropic over F_3
  CHECK_FALSE(find_residue_normalizer(F3, {1, 0, 0, 1}, 2).has_value());
}
