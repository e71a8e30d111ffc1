#pragma once

#include <map>
#include <vector>

#include "hdisp/display_groups.hpp"

namespace hdisp {

// G(K0) = I + M(K0) inside GL_n(W_m(B)).
bool in_GK0(const Thickening& th, const WMat& y);
WMat gk0_identity(const Thickening& th, std::size_t n);
// I + kappa with kappa entries K0_at(idx) (mixed radix, last entry least significant).
WMat gk0_at(const Thickening& th, std::size_t n, std::uint64_t idx);
std::uint64_t gk0_count(const Thickening& th, std::size_t n);

// sigma(tau^{-1}(y)) computed weight by weight.
WMat theta(const Thickening& th, const std::vector<int>& mu, const WMat& y);
// g Theta(y) g^{-1}
WMat U_g(const Thickening& th, const std::vector<int>& mu, const WMat& g, const WMat& y);

struct Descent {
  WMat y;
  int factors = 0;
};
// The y with U_g(y)^{-1} y = h.
Descent solve_descent(const Thickening& th, const std::vector<int>& mu, const WMat& g, const WMat& h);

// The element z of the source display group with tau(z) = y and sigma(z) = Theta(y).
GradedMatrix tau_inverse_K(const Thickening& th, const std::vector<int>& mu, const WMat& y);

Display reduce_display(const Thickening& th, const Display& d);
// Entrywise lift along the monomial section; for O the lift is corrected to stay orthogonal.
Display lift_display(const Thickening& th, const Display& d, GroupKind g = GroupKind::GL);
// z with tau(z)^{-1} g sigma(z) = g2 for two lifts g, g2 of the same display.
GradedMatrix lift_uniqueness_witness(const Thickening& th, const std::vector<int>& mu, const WMat& g, const WMat& g2);

// Chain of graphs E'_n = span [[I], [X_n]] over B, one X_n per weight level.
struct HodgeLift {
  Ring B;
  std::vector<int> mu;
  std::map<int, WMat> X;  // level -> (N - r) x r matrix over B with entries in J

  std::size_t rank(int n) const;
  WMat basis(int n) const;  // N x r_n over B
  std::vector<RingElem> coordinates() const;
};

bool hodge_lift_selfdual(const HodgeLift& l);
std::vector<HodgeLift> enumerate_hodge_lifts(const HodgeFiltration& E, const Ext& ext, bool selfdual = false,
                                             std::uint64_t budget = 10'000'000ULL);

struct AppliedLift {
  Display display;  // over W_m(B)
  WMat w;           // adapted basis over S_0
  GradedMatrix z;   // over the relative frame, tau(z) = w, sigma(z) = 1
};
AppliedLift apply_hodge_lift(const HodgeThickening& h, const Display& d, const HodgeLift& lift);

struct K3Deformation {
  Display base;    // unique lift over the relative frame
  std::vector<HodgeLift> lifts;
  std::vector<Display> displays;  // over W_m(B), one per self-dual lift
};
K3Deformation k3_deform(const Display& d, const Ext& ext, std::size_t m);

// Entrywise reduction W_m(B) -> W_m(A).
WMat reduce_mat(const Ext& ext, const WMat& a);

}  // namespace hdisp
