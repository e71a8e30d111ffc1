#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hdisp/displays.hpp"

namespace hdisp {

enum class GroupKind { GL, O };

bool is_orth_type(const std::vector<int>& mu);
bool is_one_bounded(const std::vector<int>& mu, GroupKind g);
void require_orth(const Frame& f, const std::vector<int>& mu);

// Antidiagonal J over S_0.
WMat antidiag(const Ring& r, std::size_t m, std::size_t n);
// Gram matrices have entry (i, j) of degree mu_i + mu_j (row type -mu, column type mu).
GradedMatrix gram_J(const FramePtr& f, const std::vector<int>& mu);
// A^t B A for a Gram matrix B and A of type mu.
GradedMatrix gram_transform(const GradedMatrix& B, const GradedMatrix& A);

bool in_orth_group(const GradedMatrix& a);

struct OrthCheck {
  bool ok = true;
  std::size_t i = 0, j = 0;
  std::string witness;
};
// U^t J U = J over S_0.
OrthCheck verify_orth(const WMat& U);

struct WeightDecomposition {
  GradedMatrix pminus, uplus;
};

WeightDecomposition decompose(const GradedMatrix& g);
GradedMatrix gm_inverse(const GradedMatrix& g);

// 1-bounded unipotent part <-> its degree-one coordinates. For O these are the entries
// (i, 0), 0 < i < n - 1.
std::vector<PElem> log_plus(const GradedMatrix& h, GroupKind g);
GradedMatrix exp_plus(const FramePtr& f, const std::vector<int>& mu, const std::vector<PElem>& x, GroupKind g);

struct GramNormalization {
  GradedMatrix A;
  int iterations = 0;
};
GramNormalization normalize_gram(const GradedMatrix& B);
// Exhaustive search for P over F_q with P^t B P = J.
std::optional<std::vector<Coef>> find_residue_normalizer(const FiniteField& F, const std::vector<Coef>& B, std::size_t n,
                                                         std::uint64_t budget = 10'000'000ULL);

// O(psi)(S_0) and the orthogonal display group, by column backtracking.
std::vector<WMat> enumerate_orth_matrices(const FramePtr& f, std::size_t n, std::uint64_t budget = kDefaultOrbitBudget);
std::vector<GradedMatrix> enumerate_orth_group(const FramePtr& f, const std::vector<int>& mu,
                                               std::uint64_t budget = kDefaultOrbitBudget);
OrbitReport classify_orth_orbits(const FramePtr& f, const std::vector<int>& mu,
                                 std::uint64_t budget = kDefaultOrbitBudget);

}  // namespace hdisp
