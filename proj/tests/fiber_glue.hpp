#pragma once

// Conversion between library matrices over W_2(F_3[e]) or W_2(F_3) and oracle codes.

#include <stdexcept>

#include "hdisp/deformation.hpp"
#include "oracles/fiber_oracle.hpp"

namespace glue {

inline int b_code(const hdisp::RingElem& b) {
  int c = static_cast<int>(b.c[0] % 3);
  if (b.c.size() > 1) c += 3 * static_cast<int>(b.c[1] % 3);
  return c;
}

inline oracle::w2e::u8 w_code(const hdisp::WittVec& w) {
  if (w.length() != 2) throw std::logic_error("expected length 2");
  return static_cast<oracle::w2e::u8>(b_code(w.c[0]) + 9 * b_code(w.c[1]));
}

inline oracle::w2e::Mat codes(const hdisp::WMat& a) {
  oracle::w2e::Mat out;
  for (const auto& e : a.e) out.push_back(w_code(e));
  return out;
}

inline hdisp::RingElem b_elem(const hdisp::Ring& r, int c) {
  std::vector<hdisp::Coef> v(r->dim(), 0);
  v[0] = static_cast<hdisp::Coef>(c % 3);
  if (c / 3) {
    if (r->dim() < 2) throw std::logic_error("e in the residue ring");
    v[1] = static_cast<hdisp::Coef>(c / 3);
  }
  return hdisp::RingElem(r, v);
}

inline hdisp::WMat wmat(const hdisp::Ring& r, const oracle::w2e::Mat& m, std::size_t n) {
  hdisp::WMat out = hdisp::wmat_zero(r, 2, n, n);
  for (std::size_t i = 0; i < m.size(); ++i)
    out.e[i] = hdisp::witt_from_components(r, {b_elem(r, m[i] % 9), b_elem(r, m[i] / 9)});
  return out;
}

}  // namespace glue
