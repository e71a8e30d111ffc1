#pragma once

#include <vector>

#include "hdisp/frames.hpp"

namespace hdisp {

// Homogeneous element of S. Degree d >= 1 carries x in P = S_d; degree -k <= 0 carries the
// payload s standing for s * t^k, so that tau of the element is s.
struct GradedElem {
  int deg = 0;
  WittVec s;
  PElem x;
};

GradedElem g_zero(const Frame& f, int deg);
GradedElem g_one(const Frame& f);
GradedElem g_scalar(int deg, const WittVec& s);
GradedElem g_pos(int deg, const PElem& x);
GradedElem g_add(const Frame& f, const GradedElem& a, const GradedElem& b);
GradedElem g_neg(const Frame& f, const GradedElem& a);
GradedElem g_sub(const Frame& f, const GradedElem& a, const GradedElem& b);
GradedElem g_mul(const Frame& f, const GradedElem& a, const GradedElem& b);
WittVec g_tau(const Frame& f, const GradedElem& a);
WittVec g_sigma(const Frame& f, const GradedElem& a);
bool g_eq(const GradedElem& a, const GradedElem& b);
bool g_is_zero(const Frame& f, const GradedElem& a);
std::string to_string(const GradedElem& a);

struct DisplayType {
  std::vector<int> mu;
  std::size_t n() const { return mu.size(); }
  int degree() const;
  bool valid() const;
  // Blocks of equal weight as [begin, end) index ranges, weights decreasing.
  std::vector<std::pair<std::size_t, std::size_t>> blocks() const;
};

// Entry (i, j) has degree col[j] - row[i].
struct GradedMatrix {
  FramePtr frame;
  std::vector<int> row, col;
  std::vector<GradedElem> e;

  std::size_t rows() const { return row.size(); }
  std::size_t cols() const { return col.size(); }
  GradedElem& at(std::size_t i, std::size_t j) { return e[i * col.size() + j]; }
  const GradedElem& at(std::size_t i, std::size_t j) const { return e[i * col.size() + j]; }
  int degree(std::size_t i, std::size_t j) const { return col[j] - row[i]; }
};

GradedMatrix gm_zero(const FramePtr& f, const std::vector<int>& row, const std::vector<int>& col);
GradedMatrix gm_identity(const FramePtr& f, const std::vector<int>& mu);
GradedMatrix gm_mul(const GradedMatrix& a, const GradedMatrix& b);
GradedMatrix gm_add(const GradedMatrix& a, const GradedMatrix& b);
GradedMatrix gm_sub(const GradedMatrix& a, const GradedMatrix& b);
WMat gm_sigma(const GradedMatrix& a);
WMat gm_tau(const GradedMatrix& a);
bool operator==(const GradedMatrix& a, const GradedMatrix& b);
inline bool operator!=(const GradedMatrix& a, const GradedMatrix& b) { return !(a == b); }
std::string to_string(const GradedMatrix& a);

// Square graded matrices of type mu with every entry ranging over S_0 or P.
std::uint64_t gm_count(const FramePtr& f, const std::vector<int>& mu);
GradedMatrix gm_at(const FramePtr& f, const std::vector<int>& mu, std::uint64_t idx);
GradedMatrix gm_random(const FramePtr& f, const std::vector<int>& mu, std::mt19937_64& rng);
// Degree <= 0 entries from an S_0 matrix, positive entries zero.
GradedMatrix gm_from_payloads(const FramePtr& f, const std::vector<int>& mu, const WMat& m);

bool in_display_group(const GradedMatrix& a);

}  // namespace hdisp
