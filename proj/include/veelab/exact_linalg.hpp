#pragma once

#include <optional>
#include <vector>

#include "veelab/exact.hpp"

namespace veelab {

using ExactMatrix = std::vector<std::vector<ExactScalar>>;

/// In-place reduced row echelon form over Q(sqrt2,sqrt3); returns pivot columns.
inline std::vector<int> exact_rref(ExactMatrix& rows) {
  std::vector<int> pivots;
  if (rows.empty()) return pivots;
  const int ncols = static_cast<int>(rows[0].size());
  int r = 0;
  for (int col = 0; col < ncols && r < static_cast<int>(rows.size()); ++col) {
    int sel = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (!rows[static_cast<size_t>(i)][static_cast<size_t>(col)].is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[static_cast<size_t>(sel)], rows[static_cast<size_t>(r)]);
    ExactScalar inv = rows[static_cast<size_t>(r)][static_cast<size_t>(col)].inverse();
    for (int j = col; j < ncols; ++j) rows[static_cast<size_t>(r)][static_cast<size_t>(j)] *= inv;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r) continue;
      ExactScalar f = rows[static_cast<size_t>(i)][static_cast<size_t>(col)];
      if (f.is_zero()) continue;
      for (int j = col; j < ncols; ++j)
        rows[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * rows[static_cast<size_t>(r)][static_cast<size_t>(j)];
    }
    pivots.push_back(col);
    ++r;
  }
  rows.resize(static_cast<size_t>(r), std::vector<ExactScalar>(static_cast<size_t>(ncols)));
  return pivots;
}

/// Membership of v in the row space of an already-reduced matrix.
inline bool exact_in_span(const ExactMatrix& rref_rows, const std::vector<int>& pivots,
                          const std::vector<ExactScalar>& v) {
  std::vector<ExactScalar> w = v;
  for (size_t r = 0; r < rref_rows.size(); ++r) {
    ExactScalar f = w[static_cast<size_t>(pivots[r])];
    if (f.is_zero()) continue;
    for (size_t j = 0; j < w.size(); ++j) w[j] -= f * rref_rows[r][j];
  }
  for (const auto& comp : w)
    if (!comp.is_zero()) return false;
  return true;
}

/// Basis of the solution space of rows * x = 0 (plain, non-conjugated system).
inline std::vector<std::vector<ExactScalar>> exact_nullspace(ExactMatrix rows, int ncols) {
  std::vector<int> pivots = exact_rref(rows);
  std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
  for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<std::vector<ExactScalar>> basis;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    std::vector<ExactScalar> v(static_cast<size_t>(ncols));
    v[static_cast<size_t>(free)] = ExactScalar(1);
    for (size_t r = 0; r < rows.size(); ++r)
      v[static_cast<size_t>(pivots[r])] = -rows[r][static_cast<size_t>(free)];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace veelab
