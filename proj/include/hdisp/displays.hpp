#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hdisp/graded.hpp"

namespace hdisp {

struct Display {
  FramePtr frame;
  std::vector<int> mu;
  WMat phi;
};

bool operator==(const Display& a, const Display& b);
inline bool operator!=(const Display& a, const Display& b) { return !(a == b); }

Display make_display(const FramePtr& f, const std::vector<int>& mu, const WMat& phi);
// tau(A)^{-1} phi sigma(A)
Display display_act(const Display& d, const GradedMatrix& a);
Display display_tensor(const Display& a, const Display& b);
Display display_dual(const Display& d);
Display display_twist(const Display& d, int k);
// U(d): rank one, type (d), phi = 1.
Display unit_display(const FramePtr& f, int d);
// t^n : M_0 -> M_{-n} bijective for n >= 1, i.e. all weights are >= 0.
bool display_is_effective(const Display& d);

// Matrices over a plain ring R are WMat with m = 1.
WMat rmat_zero(const Ring& R, std::size_t rows, std::size_t cols);
WMat rmat_from_s0(const Frame& f, const WMat& m);  // entrywise to_R

// E_n for lo <= n < lo + E.size(); E_n = everything below lo and 0 beyond.
struct HodgeFiltration {
  Ring R;
  std::size_t n = 0;
  int lo = 0;
  std::vector<WMat> E;  // column bases, n x r_n

  std::size_t rank(int k) const;
  WMat basis(int k) const;
};

HodgeFiltration hodge_filtration(const Display& d);

// C^i spanned by the C-columns of weight >= i, D_i by the D-columns of weight <= i;
// alpha[w] maps the Frobenius twist of gr^w_C to gr_w^D in these bases.
struct FZip {
  Ring R;
  std::size_t n = 0;
  std::vector<int> c_weights, d_weights;
  WMat C, D;
  std::vector<std::pair<int, WMat>> alpha;

  const WMat* alpha_at(int w) const;
};

FZip to_fzip(const Display& d);
Display from_fzip(const FZip& z, const FramePtr& zip_frame);
// Checks that the linear map f (columns in z2's coordinates) is an isomorphism z1 -> z2.
bool fzip_iso_via(const FZip& z1, const FZip& z2, const WMat& f);
bool fzip_valid(const FZip& z);

struct OrbitReport {
  std::string label = "presheaf orbits over the given ring";
  std::uint64_t total = 0;
  std::uint64_t group_order = 0;
  std::vector<WMat> reps;
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint64_t> size_multiset() const;
};

inline constexpr std::uint64_t kDefaultOrbitBudget = 20'000'000ULL;

// Enumerates the display group of type mu over f; empty result if over budget.
std::vector<GradedMatrix> enumerate_display_group(const FramePtr& f, const std::vector<int>& mu,
                                                  std::uint64_t budget = kDefaultOrbitBudget);
OrbitReport classify_orbits(const FramePtr& f, const std::vector<int>& mu, const std::string& group = "GL",
                            std::uint64_t budget = kDefaultOrbitBudget);
// Orbits of the given group elements on the given matrices (indexed by WMat index).
OrbitReport orbits_on(const FramePtr& f, const std::vector<int>& mu, const std::vector<WMat>& X,
                      const std::vector<GradedMatrix>& G);

std::uint64_t wmat_index(const WMat& a);
WMat wmat_at(const Ring& r, std::size_t m, std::size_t rows, std::size_t cols, std::uint64_t idx);

}  // namespace hdisp
