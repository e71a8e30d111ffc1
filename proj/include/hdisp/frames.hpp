#pragma once

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hdisp/witt.hpp"

namespace hdisp {

// Element of the positive part. a lives in W_m of the frame ring; x is the J-part of a
// relative frame (v(a) + [x]) and is unset for the other kinds.
struct PElem {
  WittVec a;
  RingElem x;
};

bool operator==(const PElem& u, const PElem& v);
inline bool operator!=(const PElem& u, const PElem& v) { return !(u == v); }
bool operator<(const PElem& u, const PElem& v);
std::string to_string(const PElem& u);

enum class FrameKind { Witt, Zip, Relative, Tautological };
const char* frame_kind_name(FrameKind k);

// S_0 = W_m(ring) and S_n = P for every n >= 1.
struct Frame {
  FrameKind kind = FrameKind::Witt;
  int p = 0;
  std::size_t m = 1;
  Ring ring;
  Ring R;  // S_0 / t(S_1)
  Ext ext;

  std::function<WittVec(const PElem&)> t1;
  std::function<PElem(const PElem&)> tP;
  std::function<PElem(const PElem&, const PElem&)> nu;
  std::function<PElem(const WittVec&, const PElem&)> act;
  std::function<WittVec(const WittVec&)> sigma0;
  std::function<WittVec(const PElem&)> sigmadot;
  std::function<RingElem(const WittVec&)> to_R;

  WittVec s_zero() const { return witt_zero(ring, m); }
  WittVec s_one() const { return witt_one(ring, m); }
  WittVec s_int(long long n) const { return witt_from_int(ring, m, n); }
  std::uint64_t s_size() const { return witt_size(ring, m); }
  Enumeration<WittVec> enumerate_S0(std::uint64_t cap = kDefaultEnumCap) const { return enumerate_witt(ring, m, cap); }
  WittVec random_S0(std::mt19937_64& rng) const { return random_witt(ring, m, rng); }
  Coef residue(const WittVec& s) const { return s.c[0].constant(); }

  PElem p_zero() const;
  PElem p_add(const PElem& u, const PElem& v) const;
  PElem p_neg(const PElem& u) const;
  PElem p_sub(const PElem& u, const PElem& v) const { return p_add(u, p_neg(v)); }
  bool p_is_zero(const PElem& u) const { return u == p_zero(); }
  std::uint64_t p_size() const;
  PElem p_at(std::uint64_t idx) const;
  std::uint64_t p_index(const PElem& u) const;
  Enumeration<PElem> enumerate_P(std::uint64_t cap = kDefaultEnumCap) const;
  PElem random_P(std::mt19937_64& rng) const;

  // t^n : S_n -> S_0.
  WittVec t_pow(const PElem& u, int n) const;
  bool same_as(const Frame& o) const;
};

using FramePtr = std::shared_ptr<const Frame>;

FramePtr build_truncated_witt_frame(const Ring& R, std::size_t m);
FramePtr build_zip_frame(const Ring& R);
FramePtr build_relative_frame(const Ext& ext, std::size_t m);
FramePtr build_tautological_frame(const Ring& A);

struct AxiomResult {
  std::string name;
  std::uint64_t checked = 0;
  bool ok = true;
  std::string witness;
};

struct AxiomReport {
  bool exhaustive = false;
  std::vector<AxiomResult> results;
  bool ok() const;
  const AxiomResult* find(const std::string& name) const;
};

inline constexpr std::uint64_t kDefaultAxiomBudget = 1'000'000ULL;

AxiomReport frame_axiom_check(const Frame& f, std::uint64_t budget = kDefaultAxiomBudget, std::uint64_t seed = 1);

// The canonical map to the zip frame of R commutes with every structure map.
AxiomReport zip_projection_check(const Frame& f, std::uint64_t budget = kDefaultAxiomBudget, std::uint64_t seed = 1);

// Structural equality of two frames on every (or sampled) input.
AxiomReport frame_compare(const Frame& f, const Frame& g, std::uint64_t budget = kDefaultAxiomBudget,
                          std::uint64_t seed = 1);

// Relative frame of B/A over the Witt frame of A, with K_0 = W_m(J) in log coordinates.
struct Thickening {
  FramePtr source, target;
  Ext ext;
  std::size_t m = 2;
  int nilpotency_index = 2;

  WittVec eps0(const WittVec& s) const;
  PElem epsP(const PElem& u) const;
  bool in_K0(const WittVec& s) const;
  std::uint64_t K0_size() const;
  WittVec K0_at(std::uint64_t idx) const;
  Enumeration<WittVec> enumerate_K0(std::uint64_t cap = kDefaultEnumCap) const;
  WittVec sdotK(const WittVec& k) const;
  // Coefficientwise lift along the monomial section of B -> A.
  WittVec lift0(const WittVec& s) const;
};

Thickening build_thickening(const Ext& ext, std::size_t m);
AxiomReport thickening_check(const Thickening& th, std::uint64_t budget = kDefaultAxiomBudget, std::uint64_t seed = 1);

// W_m(B) -> W_m(B/A), identity on S_0 and a -> (a, 0) on positive parts.
struct HodgeThickening {
  FramePtr Sprime, S;
  Ext ext;
  PElem alphaP(const PElem& u) const;
};

HodgeThickening build_hodge_thickening(const Ext& ext, std::size_t m);
AxiomReport hodge_hypothesis_check(const HodgeThickening& h, std::uint64_t budget = kDefaultAxiomBudget);

}  // namespace hdisp
