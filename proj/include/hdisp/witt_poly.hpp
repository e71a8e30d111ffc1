#pragma once

#include <gmpxx.h>

#include <array>
#include <deque>
#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "hdisp/base_rings.hpp"

namespace hdisp {

using ExpKey = unsigned __int128;

struct ExpKeyHash {
  std::size_t operator()(const ExpKey& k) const noexcept {
    const std::uint64_t lo = static_cast<std::uint64_t>(k);
    const std::uint64_t hi = static_cast<std::uint64_t>(k >> 64);
    return static_cast<std::size_t>(lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL + (lo << 6)));
  }
};

// Packed exponent vectors in X_0..X_{L}, Y_0..Y_{L}.
class ExpLayout {
 public:
  ExpLayout(int p, int levels);
  int nvars() const { return static_cast<int>(shift_.size()); }
  int x(int i) const { return i; }
  int y(int i) const { return levels_ + 1 + i; }
  int levels() const { return levels_; }
  int exponent(const ExpKey& k, int var) const {
    return static_cast<int>((k >> shift_[var]) & ((ExpKey(1) << width_[var]) - 1));
  }
  ExpKey single(int var, int e) const { return ExpKey(static_cast<unsigned>(e)) << shift_[var]; }
  int max_exponent(int var) const { return max_[var]; }

 private:
  int levels_;
  std::vector<int> shift_, width_, max_;
};

using IntPoly = std::unordered_map<ExpKey, mpz_class, ExpKeyHash>;

IntPoly ipoly_add(const IntPoly& a, const IntPoly& b);
IntPoly ipoly_scale(const IntPoly& a, const mpz_class& s);
IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b);
IntPoly ipoly_pow(const IntPoly& a, unsigned e);
bool ipoly_equal(const IntPoly& a, const IntPoly& b);

// A polynomial with coefficients reduced mod p, ready for evaluation.
struct ModTerm {
  int coef;
  std::vector<std::pair<int, int>> factors;  // (variable, exponent)
};
struct ModPoly {
  std::vector<ModTerm> terms;
};

enum class WittFamily { Sum = 0, Product = 1, Negation = 2, Frobenius = 3 };

// Universal Witt polynomials over Z for a fixed prime, built lazily by ghost inversion.
class WittPolyCache {
 public:
  static const WittPolyCache& get(int p);

  int p() const { return p_; }
  const ExpLayout& layout() const { return layout_; }
  // Largest index n for which every family can be represented.
  int max_index() const { return layout_.levels() - 1; }

  const IntPoly& poly(WittFamily fam, int n) const;
  const ModPoly& modp(WittFamily fam, int n) const;

  // Ghost polynomial w_n in the X (side 0) or Y (side 1) variables.
  IntPoly ghost(int n, int side) const;
  // Recomputes w_n of the family by fresh substitution and compares with the ghost-side operation.
  bool verify_ghost(WittFamily fam, int n) const;

  explicit WittPolyCache(int p);

 private:
  void ensure(int n) const;
  IntPoly target(WittFamily fam, int n) const;

  int p_;
  ExpLayout layout_;
  mutable std::mutex mu_;
  mutable std::array<std::deque<IntPoly>, 4> polys_;
  mutable std::array<std::vector<std::vector<IntPoly>>, 4> powers_;  // powers_[fam][i][k] = poly_i^(p^k)
  mutable std::array<std::deque<ModPoly>, 4> mod_;
};

// xs and ys are the X and Y inputs; ys may be empty for one-sided families.
RingElem eval_modp(const ModPoly& poly, const ExpLayout& layout, const std::vector<RingElem>& xs,
                   const std::vector<RingElem>& ys);

}  // namespace hdisp
