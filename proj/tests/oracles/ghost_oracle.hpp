#pragma once

#include <vector>

// Independent arithmetic on W_m(F_p): integer lifts, ghost components over Z, ghost inversion.
namespace oracle {

using Comps = std::vector<long long>;

Comps ghost_add(int p, const Comps& x, const Comps& y);
Comps ghost_mul(int p, const Comps& x, const Comps& y);
// Length m -> m-1 using w_n(F x) = w_{n+1}(x).
Comps ghost_frobenius(int p, const Comps& x);
// The ring isomorphism W_m(F_p) -> Z/p^m, sum of p^i times the Teichmüller lift of x_i.
long long witt_to_integer(int p, const Comps& x);
long long ipow(long long b, int e);

}  // namespace oracle
