#pragma once

#include <memory>
#include <random>
#include <vector>

#include "hdisp/base_rings.hpp"
#include "hdisp/witt_poly.hpp"

namespace hdisp {

// Element of W_m(R), components 0..m-1.
struct WittVec {
  Ring ring;
  std::vector<RingElem> c;

  std::size_t length() const { return c.size(); }
  bool is_zero() const;
};

WittVec witt_zero(const Ring& r, std::size_t m);
WittVec witt_one(const Ring& r, std::size_t m);
WittVec witt_from_int(const Ring& r, std::size_t m, long long n);
WittVec witt_from_components(const Ring& r, std::vector<RingElem> comps);

WittVec witt_add(const WittVec& x, const WittVec& y);
WittVec witt_sub(const WittVec& x, const WittVec& y);
WittVec witt_neg(const WittVec& x);
WittVec witt_mul(const WittVec& x, const WittVec& y);
WittVec witt_mul_int(const WittVec& x, long long n);
WittVec witt_pow(const WittVec& x, unsigned long long e);

WittVec verschiebung(const WittVec& x);
// Length m -> m-1, from the universal Frobenius polynomials.
WittVec witt_frobenius(const WittVec& x);
// Fixed-length Frobenius on W_m of an F_p-algebra: componentwise p-th power.
WittVec witt_frobenius_fixed(const WittVec& x);
WittVec teichmuller(const RingElem& a, std::size_t m);
// x = v(a) of length m -> a of length m-1.
WittVec divided_frobenius(const WittVec& x);
WittVec truncate(const WittVec& x, std::size_t m);
// p * x for an F_p-algebra, computed as v(F(x)) truncated.
WittVec witt_p_times(const WittVec& x);

bool witt_is_unit(const WittVec& x);
WittVec witt_inverse(const WittVec& x);

bool operator==(const WittVec& a, const WittVec& b);
inline bool operator!=(const WittVec& a, const WittVec& b) { return !(a == b); }
bool operator<(const WittVec& a, const WittVec& b);

std::uint64_t witt_size(const Ring& r, std::size_t m);
std::uint64_t witt_index(const WittVec& x);
WittVec witt_at(const Ring& r, std::size_t m, std::uint64_t idx);
Enumeration<WittVec> enumerate_witt(const Ring& r, std::size_t m, std::uint64_t cap = kDefaultEnumCap);
WittVec random_witt(const Ring& r, std::size_t m, std::mt19937_64& rng);
std::string to_string(const WittVec& x);

using Ext = std::shared_ptr<const SquareZeroExtension>;

// W_m(J) in logarithmic coordinates; with J^2 = 0 these are the Witt components.
struct LogCoords {
  Ext ext;
  std::vector<RingElem> comps;
};

LogCoords log_coords(const Ext& ext, const WittVec& x);
WittVec log_to_witt(const LogCoords& x);
LogCoords log_shift(const LogCoords& x);

// Matrices over W_m(R), row-major.
struct WMat {
  Ring ring;
  std::size_t m = 1;
  std::size_t rows = 0, cols = 0;
  std::vector<WittVec> e;

  WittVec& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
  const WittVec& at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }
};

WMat wmat_zero(const Ring& r, std::size_t m, std::size_t rows, std::size_t cols);
WMat wmat_identity(const Ring& r, std::size_t m, std::size_t n);
WMat wmat_mul(const WMat& a, const WMat& b);
WMat wmat_add(const WMat& a, const WMat& b);
WMat wmat_sub(const WMat& a, const WMat& b);
WMat wmat_transpose(const WMat& a);
WMat wmat_map(const WMat& a, WittVec (*f)(const WittVec&));
bool operator==(const WMat& a, const WMat& b);
inline bool operator!=(const WMat& a, const WMat& b) { return !(a == b); }
bool operator<(const WMat& a, const WMat& b);
std::string to_string(const WMat& a);

// Residue matrix over F_q (constant coefficients of the 0-th components).
std::vector<Coef> wmat_residue(const WMat& a);
// Inverse over F_q by Gaussian elimination; empty if singular.
std::vector<Coef> fq_mat_inverse(const FiniteField& F, const std::vector<Coef>& a, std::size_t n);
bool wmat_is_invertible(const WMat& a);
// Residue inverse lifted by Teichmüller, refined by Newton steps on the nilpotent error.
WMat wmat_inverse(const WMat& a);

}  // namespace hdisp
