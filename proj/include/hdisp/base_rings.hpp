#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hdisp/errors.hpp"

namespace hdisp {

// Elements of F_q are encoded as integers sum c_k p^k, c_k the coefficient of t^k.
using Coef = std::uint32_t;

class FiniteField {
 public:
  FiniteField(int p, int f, std::vector<int> modulus);

  // Lexicographically smallest monic irreducible of degree f over F_p.
  static std::vector<int> default_modulus(int p, int f);
  static bool is_irreducible(int p, const std::vector<int>& poly);

  int p() const { return p_; }
  int f() const { return f_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Coef add(Coef a, Coef b) const { return add_[a * q_ + b]; }
  Coef mul(Coef a, Coef b) const { return mul_[a * q_ + b]; }
  Coef neg(Coef a) const { return neg_[a]; }
  Coef sub(Coef a, Coef b) const { return add_[a * q_ + neg_[b]]; }
  Coef inv(Coef a) const;
  Coef frob(Coef a) const { return frob_[a]; }
  Coef from_int(long long n) const;
  std::vector<int> digits(Coef a) const;
  Coef from_digits(const std::vector<int>& d) const;

  bool operator==(const FiniteField& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }
  bool operator!=(const FiniteField& o) const { return !(*this == o); }

 private:
  int p_, f_, q_;
  std::vector<int> modulus_;
  std::vector<Coef> add_, mul_, neg_, inv_, frob_;
};

using Monomial = std::vector<int>;

// F_q[x_1..x_r] / I for a cofinite monomial ideal I.
class ArtinRing {
 public:
  ArtinRing(FiniteField field, std::vector<std::string> vars, std::vector<Monomial> ideal_gens);

  static std::shared_ptr<const ArtinRing> make(FiniteField field, std::vector<std::string> vars,
                                               const std::vector<std::string>& ideal_gens);
  static std::shared_ptr<const ArtinRing> field_ring(FiniteField field);

  const FiniteField& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<Monomial>& ideal_gens() const { return gens_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  int p() const { return field_.p(); }

  int basis_index(const Monomial& m) const;
  int mul_index(int i, int j) const { return mul_[i * basis_.size() + j]; }
  std::string monomial_name(int i) const;
  std::string monomial_name(const Monomial& m) const;
  Monomial parse_monomial(const std::string& s) const;
  bool in_ideal(const Monomial& m) const;

  // q^dim, saturating at UINT64_MAX.
  std::uint64_t size() const;
  // Smallest N with (max ideal)^N = 0.
  int nilpotency() const { return nilpotency_; }

  bool same_as(const ArtinRing& o) const;

 private:
  FiniteField field_;
  std::vector<std::string> vars_;
  std::vector<Monomial> gens_;
  std::vector<Monomial> basis_;
  std::vector<int> mul_;
  int nilpotency_ = 1;
};

using Ring = std::shared_ptr<const ArtinRing>;

void check_same_ring(const Ring& a, const Ring& b);

struct RingElem {
  Ring ring;
  std::vector<Coef> c;  // dense, indexed by basis position

  RingElem() = default;
  RingElem(Ring r, std::vector<Coef> coeffs) : ring(std::move(r)), c(std::move(coeffs)) {}

  bool is_zero() const;
  Coef constant() const { return c[0]; }
};

RingElem ring_zero(const Ring& r);
RingElem ring_one(const Ring& r);
RingElem ring_from_int(const Ring& r, long long n);
RingElem ring_from_coef(const Ring& r, Coef a);
RingElem ring_monomial(const Ring& r, int basis_idx, Coef a = 1);
// Sum of coefficient * monomial, monomials by name ("1", "x", "x*y^2").
RingElem ring_elem(const Ring& r, const std::vector<std::pair<std::string, Coef>>& terms);

RingElem ring_add(const RingElem& a, const RingElem& b);
RingElem ring_sub(const RingElem& a, const RingElem& b);
RingElem ring_neg(const RingElem& a);
RingElem ring_mul(const RingElem& a, const RingElem& b);
RingElem ring_scale(const RingElem& a, Coef s);
RingElem ring_pow(const RingElem& a, unsigned long long e);
RingElem frobenius(const RingElem& a);
bool is_unit(const RingElem& a);
RingElem invert(const RingElem& a);
bool in_max_ideal(const RingElem& a);

bool operator==(const RingElem& a, const RingElem& b);
inline bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }
bool operator<(const RingElem& a, const RingElem& b);
inline RingElem operator+(const RingElem& a, const RingElem& b) { return ring_add(a, b); }
inline RingElem operator-(const RingElem& a, const RingElem& b) { return ring_sub(a, b); }
inline RingElem operator-(const RingElem& a) { return ring_neg(a); }
inline RingElem operator*(const RingElem& a, const RingElem& b) { return ring_mul(a, b); }

// Position in the deterministic order; the first basis monomial is most significant.
std::uint64_t elem_index(const RingElem& a);
RingElem elem_at(const Ring& r, std::uint64_t idx);
RingElem random_elem(const Ring& r, std::mt19937_64& rng);
// "2 + x + (1+t)*x*y"; F_q coefficients as polynomials in t.
std::string to_string(const RingElem& a);
std::string coef_string(const FiniteField& F, Coef c);

template <class T>
class Enumeration {
 public:
  Enumeration(std::uint64_t n, std::function<T(std::uint64_t)> at) : n_(n), at_(std::move(at)) {}
  std::uint64_t size() const { return n_; }
  T operator[](std::uint64_t i) const { return at_(i); }

  class iterator {
   public:
    iterator(const Enumeration* e, std::uint64_t i) : e_(e), i_(i) {}
    T operator*() const { return (*e_)[i_]; }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    bool operator!=(const iterator& o) const { return i_ != o.i_; }

   private:
    const Enumeration* e_;
    std::uint64_t i_;
  };
  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, n_); }

 private:
  std::uint64_t n_;
  std::function<T(std::uint64_t)> at_;
};

inline constexpr std::uint64_t kDefaultEnumCap = 10'000'000ULL;

Enumeration<RingElem> enumerate_ring(const Ring& r, std::uint64_t cap = kDefaultEnumCap);

// B -> A = B/J with J spanned by basis monomials of B and J^2 = 0.
struct SquareZeroExtension {
  Ring B, A;
  std::vector<int> J_basis;    // indices into B's basis
  std::vector<int> b_to_a;     // B basis index -> A basis index or -1
  std::vector<int> a_to_b;     // A basis index -> B basis index

  static SquareZeroExtension make(const Ring& B, const std::vector<std::string>& J_gens);

  RingElem proj(const RingElem& b) const;
  RingElem section(const RingElem& a) const;
  bool in_J(const RingElem& b) const;
  RingElem J_elem(const std::vector<Coef>& coords) const;
  std::uint64_t J_size() const;
  Enumeration<RingElem> enumerate_J() const;
  bool trivial() const { return J_basis.empty(); }
};

}  // namespace hdisp
