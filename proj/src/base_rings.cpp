#include "hdisp/base_rings.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace hdisp {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DescriptorMismatch: return "descriptor-mismatch";
    case ErrorKind::NotAUnit: return "not-a-unit";
    case ErrorKind::EnumerationTooLarge: return "enumeration-too-large";
    case ErrorKind::TruncationUnderflow: return "truncation-underflow";
    case ErrorKind::NotInIdeal: return "not-in-ideal";
    case ErrorKind::UnsupportedCharacteristic: return "unsupported-characteristic";
    case ErrorKind::TypeMismatch: return "type-mismatch";
    case ErrorKind::NotInGroup: return "not-in-group";
    case ErrorKind::NeedsResidueNormalization: return "needs-residue-normalization";
    case ErrorKind::UnsupportedType: return "unsupported-type";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m over F_p.
Poly poly_rem(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int lead = a.back();
    for (int i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - lead * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

}  // namespace

bool FiniteField::is_irreducible(int p, const std::vector<int>& poly) {
  Poly m = poly;
  trim(m);
  const int d = static_cast<int>(m.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  for (int dg = 1; dg <= d / 2; ++dg) {
    long long count = 1;
    for (int i = 0; i < dg; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      Poly g(dg + 1, 0);
      long long c = code;
      for (int i = 0; i < dg; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[dg] = 1;
      if (poly_rem(m, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<int> FiniteField::default_modulus(int p, int f) {
  if (f == 1) return {0, 1};
  long long count = 1;
  for (int i = 0; i < f; ++i) count *= p;
  for (long long code = 0; code < count; ++code) {
    Poly g(f + 1, 0);
    long long c = code;
    for (int i = 0; i < f; ++i) {
      g[i] = static_cast<int>(c % p);
      c /= p;
    }
    g[f] = 1;
    if (is_irreducible(p, g)) return g;
  }
  fail(ErrorKind::Internal, "no irreducible polynomial found");
}

FiniteField::FiniteField(int p, int f, std::vector<int> modulus) : p_(p), f_(f), modulus_(std::move(modulus)) {
  if (!is_prime(p)) fail(ErrorKind::Precondition, "p = " + std::to_string(p) + " is not prime");
  if (f < 1) fail(ErrorKind::Precondition, "extension degree must be >= 1");
  if (modulus_.empty()) modulus_ = default_modulus(p, f);
  for (int& c : modulus_) c = ((c % p) + p) % p;
  if (static_cast<int>(modulus_.size()) != f + 1 || modulus_.back() != 1)
    fail(ErrorKind::Precondition, "modulus must be monic of degree f");
  if (!is_irreducible(p, modulus_)) fail(ErrorKind::Precondition, "modulus is reducible over F_p");
  q_ = 1;
  for (int i = 0; i < f; ++i) {
    q_ *= p;
    if (q_ > 4096) fail(ErrorKind::Precondition, "field too large (q > 4096)");
  }
  const std::size_t q = static_cast<std::size_t>(q_);
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  frob_.resize(q);
  std::vector<Poly> polys(q);
  for (std::size_t a = 0; a < q; ++a) {
    polys[a] = digits(static_cast<Coef>(a));
    trim(polys[a]);
  }
  auto encode = [&](Poly a) {
    a.resize(f_, 0);
    return from_digits(a);
  };
  for (std::size_t a = 0; a < q; ++a) {
    auto da = digits(static_cast<Coef>(a));
    std::vector<int> dn(f_);
    for (int i = 0; i < f_; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = from_digits(dn);
    for (std::size_t b = 0; b < q; ++b) {
      auto db = digits(static_cast<Coef>(b));
      std::vector<int> ds(f_);
      for (int i = 0; i < f_; ++i) ds[i] = (da[i] + db[i]) % p;
      add_[a * q + b] = from_digits(ds);
      mul_[a * q + b] = encode(poly_rem(poly_mul(polys[a], polys[b], p), modulus_, p));
    }
  }
  for (std::size_t a = 1; a < q; ++a)
    for (std::size_t b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = static_cast<Coef>(b);
  for (std::size_t a = 0; a < q; ++a) {
    Coef r = 1;
    for (int i = 0; i < p; ++i) r = mul_[r * q + a];
    frob_[a] = r;
  }
}

Coef FiniteField::inv(Coef a) const {
  if (a == 0) fail(ErrorKind::NotAUnit, "0 has no inverse in F_q");
  return inv_[a];
}

Coef FiniteField::from_int(long long n) const {
  long long r = ((n % p_) + p_) % p_;
  return static_cast<Coef>(r);
}

std::vector<int> FiniteField::digits(Coef a) const {
  std::vector<int> d(f_);
  for (int i = 0; i < f_; ++i) {
    d[i] = static_cast<int>(a % p_);
    a /= p_;
  }
  return d;
}

Coef FiniteField::from_digits(const std::vector<int>& d) const {
  Coef r = 0;
  for (int i = f_ - 1; i >= 0; --i) {
    const int di = i < static_cast<int>(d.size()) ? ((d[i] % p_) + p_) % p_ : 0;
    r = r * p_ + di;
  }
  return r;
}

// ---------------------------------------------------------------------------

ArtinRing::ArtinRing(FiniteField field, std::vector<std::string> vars, std::vector<Monomial> gens)
    : field_(std::move(field)), vars_(std::move(vars)), gens_(std::move(gens)) {
  const std::size_t r = vars_.size();
  for (const auto& g : gens_) {
    if (g.size() != r) fail(ErrorKind::Precondition, "ideal generator has wrong number of exponents");
    if (std::all_of(g.begin(), g.end(), [](int e) { return e == 0; }))
      fail(ErrorKind::Precondition, "ideal contains 1");
  }
  std::vector<int> bound(r, -1);
  for (const auto& g : gens_) {
    int nz = -1, cnt = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (g[i] > 0) {
        nz = static_cast<int>(i);
        ++cnt;
      }
    if (cnt == 1 && (bound[nz] < 0 || g[nz] < bound[nz])) bound[nz] = g[nz];
  }
  for (std::size_t i = 0; i < r; ++i)
    if (bound[i] < 0) fail(ErrorKind::Precondition, "ideal is not cofinite: no pure power of " + vars_[i]);

  Monomial cur(r, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == r) {
      if (!in_ideal(cur)) basis_.push_back(cur);
      return;
    }
    for (int e = 0; e < bound[i]; ++e) {
      cur[i] = e;
      rec(i + 1);
    }
    cur[i] = 0;
  };
  rec(0);
  auto deg = [](const Monomial& m) {
    int s = 0;
    for (int e : m) s += e;
    return s;
  };
  std::sort(basis_.begin(), basis_.end(), [&](const Monomial& a, const Monomial& b) {
    if (deg(a) != deg(b)) return deg(a) < deg(b);
    return a > b;
  });
  const std::size_t n = basis_.size();
  mul_.assign(n * n, -1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Monomial s(r);
      for (std::size_t k = 0; k < r; ++k) s[k] = basis_[i][k] + basis_[j][k];
      mul_[i * n + j] = basis_index(s);
    }
  nilpotency_ = deg(basis_.back()) + 1;
}

std::shared_ptr<const ArtinRing> ArtinRing::make(FiniteField field, std::vector<std::string> vars,
                                                 const std::vector<std::string>& ideal_gens) {
  std::vector<Monomial> gens;
  for (const auto& s : ideal_gens) {
    Monomial m(vars.size(), 0);
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '*')) {
      if (tok.empty() || tok == "1") continue;
      std::string name = tok;
      int e = 1;
      auto caret = tok.find('^');
      if (caret != std::string::npos) {
        name = tok.substr(0, caret);
        try {
          e = std::stoi(tok.substr(caret + 1));
        } catch (...) {
          fail(ErrorKind::Schema, "bad exponent in monomial '" + s + "'");
        }
      }
      auto it = std::find(vars.begin(), vars.end(), name);
      if (it == vars.end()) fail(ErrorKind::Schema, "unknown variable '" + name + "' in '" + s + "'");
      m[it - vars.begin()] += e;
    }
    gens.push_back(m);
  }
  return std::make_shared<const ArtinRing>(std::move(field), std::move(vars), std::move(gens));
}

std::shared_ptr<const ArtinRing> ArtinRing::field_ring(FiniteField field) {
  return std::make_shared<const ArtinRing>(std::move(field), std::vector<std::string>{}, std::vector<Monomial>{});
}

bool ArtinRing::in_ideal(const Monomial& m) const {
  for (const auto& g : gens_) {
    bool div = true;
    for (std::size_t k = 0; k < g.size(); ++k)
      if (m[k] < g[k]) {
        div = false;
        break;
      }
    if (div) return true;
  }
  return false;
}

int ArtinRing::basis_index(const Monomial& m) const {
  // basis_ is small; a linear scan keeps the class trivially copyable in spirit
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i] == m) return static_cast<int>(i);
  return -1;
}

std::string ArtinRing::monomial_name(const Monomial& m) const {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars_[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string ArtinRing::monomial_name(int i) const { return monomial_name(basis_[i]); }

Monomial ArtinRing::parse_monomial(const std::string& s) const {
  Monomial m(vars_.size(), 0);
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, '*')) {
    if (tok.empty() || tok == "1") continue;
    std::string name = tok;
    int e = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      try {
        e = std::stoi(tok.substr(caret + 1));
      } catch (...) {
        fail(ErrorKind::Schema, "bad exponent in monomial '" + s + "'");
      }
    }
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) fail(ErrorKind::Schema, "unknown variable '" + name + "'");
    m[it - vars_.begin()] += e;
  }
  return m;
}

std::uint64_t ArtinRing::size() const {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (s > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(field_.q()))
      return std::numeric_limits<std::uint64_t>::max();
    s *= static_cast<std::uint64_t>(field_.q());
  }
  return s;
}

bool ArtinRing::same_as(const ArtinRing& o) const {
  if (this == &o) return true;
  if (field_ != o.field_ || basis_.size() != o.basis_.size()) return false;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (monomial_name(static_cast<int>(i)) != o.monomial_name(static_cast<int>(i))) return false;
  return true;
}

void check_same_ring(const Ring& a, const Ring& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !a->same_as(*b)) fail(ErrorKind::DescriptorMismatch, "ring elements over different rings");
}

// ---------------------------------------------------------------------------

bool RingElem::is_zero() const {
  for (Coef x : c)
    if (x) return false;
  return true;
}

RingElem ring_zero(const Ring& r) { return RingElem(r, std::vector<Coef>(r->dim(), 0)); }

RingElem ring_one(const Ring& r) { return ring_from_coef(r, 1); }

RingElem ring_from_int(const Ring& r, long long n) { return ring_from_coef(r, r->field().from_int(n)); }

RingElem ring_from_coef(const Ring& r, Coef a) {
  RingElem e = ring_zero(r);
  e.c[0] = a;
  return e;
}

RingElem ring_monomial(const Ring& r, int idx, Coef a) {
  RingElem e = ring_zero(r);
  e.c.at(idx) = a;
  return e;
}

RingElem ring_elem(const Ring& r, const std::vector<std::pair<std::string, Coef>>& terms) {
  RingElem e = ring_zero(r);
  const auto& F = r->field();
  for (const auto& [name, coef] : terms) {
    const Monomial m = r->parse_monomial(name);
    const int idx = r->basis_index(m);
    if (idx < 0) {
      if (!r->in_ideal(m)) fail(ErrorKind::Schema, "monomial '" + name + "' out of range");
      continue;
    }
    e.c[idx] = F.add(e.c[idx], coef % static_cast<Coef>(F.q()));
  }
  return e;
}

RingElem ring_add(const RingElem& a, const RingElem& b) {
  check_same_ring(a.ring, b.ring);
  const auto& F = a.ring->field();
  RingElem r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.add(r.c[i], b.c[i]);
  return r;
}

RingElem ring_sub(const RingElem& a, const RingElem& b) {
  check_same_ring(a.ring, b.ring);
  const auto& F = a.ring->field();
  RingElem r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.sub(r.c[i], b.c[i]);
  return r;
}

RingElem ring_neg(const RingElem& a) {
  const auto& F = a.ring->field();
  RingElem r = a;
  for (auto& x : r.c) x = F.neg(x);
  return r;
}

RingElem ring_mul(const RingElem& a, const RingElem& b) {
  check_same_ring(a.ring, b.ring);
  const auto& R = *a.ring;
  const auto& F = R.field();
  const std::size_t n = R.dim();
  RingElem r = ring_zero(a.ring);
  for (std::size_t i = 0; i < n; ++i) {
    if (!a.c[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!b.c[j]) continue;
      const int k = R.mul_index(static_cast<int>(i), static_cast<int>(j));
      if (k >= 0) r.c[k] = F.add(r.c[k], F.mul(a.c[i], b.c[j]));
    }
  }
  return r;
}

RingElem ring_scale(const RingElem& a, Coef s) {
  const auto& F = a.ring->field();
  RingElem r = a;
  for (auto& x : r.c) x = F.mul(x, s);
  return r;
}

RingElem ring_pow(const RingElem& a, unsigned long long e) {
  RingElem result = ring_one(a.ring);
  RingElem base = a;
  while (e) {
    if (e & 1) result = ring_mul(result, base);
    e >>= 1;
    if (e) base = ring_mul(base, base);
  }
  return result;
}

RingElem frobenius(const RingElem& a) { return ring_pow(a, static_cast<unsigned long long>(a.ring->p())); }

bool is_unit(const RingElem& a) { return a.c[0] != 0; }

bool in_max_ideal(const RingElem& a) { return a.c[0] == 0; }

RingElem invert(const RingElem& a) {
  if (!is_unit(a)) fail(ErrorKind::NotAUnit, "element has zero constant term");
  const auto& F = a.ring->field();
  const Coef c0inv = F.inv(a.c[0]);
  // a = c0 (1 + n) with n nilpotent
  RingElem n = ring_sub(ring_scale(a, c0inv), ring_one(a.ring));
  RingElem mn = ring_neg(n);
  RingElem term = ring_one(a.ring);
  RingElem sum = term;
  for (int k = 1; k < a.ring->nilpotency() + 1; ++k) {
    term = ring_mul(term, mn);
    if (term.is_zero()) break;
    sum = ring_add(sum, term);
  }
  RingElem inv = ring_scale(sum, c0inv);
  if (ring_mul(inv, a) != ring_one(a.ring)) fail(ErrorKind::Internal, "geometric series did not invert");
  return inv;
}

bool operator==(const RingElem& a, const RingElem& b) {
  check_same_ring(a.ring, b.ring);
  return a.c == b.c;
}

bool operator<(const RingElem& a, const RingElem& b) { return a.c < b.c; }

std::uint64_t elem_index(const RingElem& a) {
  const std::uint64_t q = static_cast<std::uint64_t>(a.ring->field().q());
  std::uint64_t idx = 0;
  for (Coef x : a.c) idx = idx * q + x;
  return idx;
}

RingElem elem_at(const Ring& r, std::uint64_t idx) {
  const std::uint64_t q = static_cast<std::uint64_t>(r->field().q());
  RingElem e = ring_zero(r);
  for (std::size_t k = e.c.size(); k-- > 0;) {
    e.c[k] = static_cast<Coef>(idx % q);
    idx /= q;
  }
  return e;
}

RingElem random_elem(const Ring& r, std::mt19937_64& rng) {
  RingElem e = ring_zero(r);
  std::uniform_int_distribution<int> d(0, r->field().q() - 1);
  for (auto& x : e.c) x = static_cast<Coef>(d(rng));
  return e;
}

Enumeration<RingElem> enumerate_ring(const Ring& r, std::uint64_t cap) {
  const std::uint64_t n = r->size();
  if (n > cap)
    fail(ErrorKind::EnumerationTooLarge, "ring has " + std::to_string(n) + " elements, cap " + std::to_string(cap));
  return Enumeration<RingElem>(n, [r](std::uint64_t i) { return elem_at(r, i); });
}

// ---------------------------------------------------------------------------

SquareZeroExtension SquareZeroExtension::make(const Ring& B, const std::vector<std::string>& J_gens) {
  SquareZeroExtension e;
  e.B = B;
  std::vector<Monomial> jg;
  for (const auto& s : J_gens) jg.push_back(B->parse_monomial(s));
  std::vector<std::string> all_gens;
  for (const auto& g : B->ideal_gens()) all_gens.push_back(B->monomial_name(g));
  for (const auto& s : J_gens) all_gens.push_back(s);
  e.A = ArtinRing::make(B->field(), B->vars(), all_gens);
  for (std::size_t i = 0; i < B->dim(); ++i) {
    const auto& m = B->basis()[i];
    bool inJ = false;
    for (const auto& g : jg) {
      bool div = true;
      for (std::size_t k = 0; k < g.size(); ++k)
        if (m[k] < g[k]) div = false;
      if (div) inJ = true;
    }
    if (inJ) e.J_basis.push_back(static_cast<int>(i));
  }
  for (int i : e.J_basis)
    for (int j : e.J_basis)
      if (B->mul_index(i, j) >= 0) fail(ErrorKind::Precondition, "J^2 != 0: " + B->monomial_name(i) + " * " + B->monomial_name(j));
  e.b_to_a.assign(B->dim(), -1);
  e.a_to_b.assign(e.A->dim(), -1);
  for (std::size_t i = 0; i < B->dim(); ++i) {
    const int a = e.A->basis_index(B->basis()[i]);
    e.b_to_a[i] = a;
    if (a >= 0) e.a_to_b[a] = static_cast<int>(i);
  }
  for (int x : e.a_to_b)
    if (x < 0) fail(ErrorKind::Internal, "projection not surjective");
  // proj is multiplicative on basis pairs, hence a ring map
  for (std::size_t i = 0; i < B->dim(); ++i)
    for (std::size_t j = 0; j < B->dim(); ++j) {
      RingElem lhs = e.proj(ring_mul(ring_monomial(B, static_cast<int>(i)), ring_monomial(B, static_cast<int>(j))));
      RingElem rhs = ring_mul(e.proj(ring_monomial(B, static_cast<int>(i))), e.proj(ring_monomial(B, static_cast<int>(j))));
      if (lhs != rhs) fail(ErrorKind::Internal, "projection is not multiplicative");
    }
  return e;
}

RingElem SquareZeroExtension::proj(const RingElem& b) const {
  check_same_ring(b.ring, B);
  RingElem a = ring_zero(A);
  for (std::size_t i = 0; i < b.c.size(); ++i)
    if (b_to_a[i] >= 0) a.c[b_to_a[i]] = b.c[i];
  return a;
}

RingElem SquareZeroExtension::section(const RingElem& a) const {
  check_same_ring(a.ring, A);
  RingElem b = ring_zero(B);
  for (std::size_t i = 0; i < a.c.size(); ++i) b.c[a_to_b[i]] = a.c[i];
  return b;
}

bool SquareZeroExtension::in_J(const RingElem& b) const {
  for (std::size_t i = 0; i < b.c.size(); ++i)
    if (b_to_a[i] >= 0 && b.c[i]) return false;
  return true;
}

RingElem SquareZeroExtension::J_elem(const std::vector<Coef>& coords) const {
  RingElem b = ring_zero(B);
  for (std::size_t k = 0; k < J_basis.size(); ++k) b.c[J_basis[k]] = coords[k];
  return b;
}

std::uint64_t SquareZeroExtension::J_size() const {
  std::uint64_t s = 1;
  for (std::size_t k = 0; k < J_basis.size(); ++k) s *= static_cast<std::uint64_t>(B->field().q());
  return s;
}

Enumeration<RingElem> SquareZeroExtension::enumerate_J() const {
  const std::uint64_t q = static_cast<std::uint64_t>(B->field().q());
  const SquareZeroExtension self = *this;
  return Enumeration<RingElem>(J_size(), [self, q](std::uint64_t idx) {
    std::vector<Coef> coords(self.J_basis.size());
    for (std::size_t k = coords.size(); k-- > 0;) {
      coords[k] = static_cast<Coef>(idx % q);
      idx /= q;
    }
    return self.J_elem(coords);
  });
}

}  // namespace hdisp

namespace hdisp {

std::string coef_string(const FiniteField& F, Coef c) {
  if (F.f() == 1) return std::to_string(c);
  auto d = F.digits(c);
  std::string out;
  for (int k = static_cast<int>(d.size()) - 1; k >= 0; --k) {
    if (d[k] == 0) continue;
    if (!out.empty()) out += "+";
    if (k == 0 || d[k] != 1) out += std::to_string(d[k]);
    if (k >= 1) out += "t";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : "(" + out + ")";
}

std::string to_string(const RingElem& a) {
  std::string out;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    if (!out.empty()) out += " + ";
    const std::string mono = a.ring->monomial_name(static_cast<int>(i));
    const std::string cs = coef_string(a.ring->field(), a.c[i]);
    if (mono == "1")
      out += cs;
    else if (a.c[i] == 1)
      out += mono;
    else
      out += cs + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

}  // namespace hdisp
