// Copyright 2026 The Adaptive Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Zero-sum matrix games: the row player picks a mixture over rows to minimize
// and the column player a mixture over columns to maximize.

#ifndef ADAPTIVE_ORACLE_MATRIX_GAME_HPP_
#define ADAPTIVE_ORACLE_MATRIX_GAME_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptive/core/distribution.hpp"

namespace adaptive {

inline constexpr double kMatrixGameTolerance = 1e-9;

struct MatrixGameSolution {
  double value = 0.0;
  Distribution row_mix;  // minimizer
  Distribution col_mix;  // maximizer
  double gap = 0.0;      // max_y (q^T M)_y - min_d (M p)_d
};

namespace detail {

// max 1^T w subject to A w <= 1, w >= 0, with A > 0 entrywise (cols x rows,
// A[y][d]). Dense tableau in long double with Bland's rule. Returns w and the
// dual solution u.
inline void solve_packing_lp(const std::vector<long double>& a, std::size_t rows, std::size_t cols,
                             std::vector<long double>& w, std::vector<long double>& u) {
  const std::size_t nv = rows + cols;
  const std::size_t width = nv + 1;
  std::vector<long double> t(cols * width, 0.0L);
  std::vector<long double> obj(width, 0.0L);
  std::vector<std::size_t> basis(cols);
  for (std::size_t y = 0; y < cols; ++y) {
    for (std::size_t d = 0; d < rows; ++d) t[y * width + d] = a[y * rows + d];
    t[y * width + rows + y] = 1.0L;
    t[y * width + nv] = 1.0L;
    basis[y] = rows + y;
  }
  for (std::size_t d = 0; d < rows; ++d) obj[d] = -1.0L;
  constexpr long double eps = 1e-16L;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > 50 * (nv + 1) * (cols + 1)) throw std::runtime_error("matrix game: simplex did not terminate");
    std::size_t enter = nv;
    for (std::size_t j = 0; j < nv; ++j) {
      if (obj[j] < -eps) {
        enter = j;
        break;
      }
    }
    if (enter == nv) break;
    std::size_t leave = cols;
    long double best = 0.0L;
    for (std::size_t i = 0; i < cols; ++i) {
      const long double piv = t[i * width + enter];
      if (piv <= eps) continue;
      const long double ratio = t[i * width + nv] / piv;
      if (leave == cols || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == cols) throw std::runtime_error("matrix game: unbounded program");
    const long double piv = t[leave * width + enter];
    for (std::size_t j = 0; j < width; ++j) t[leave * width + j] /= piv;
    for (std::size_t i = 0; i < cols; ++i) {
      if (i == leave) continue;
      const long double f = t[i * width + enter];
      if (f == 0.0L) continue;
      for (std::size_t j = 0; j < width; ++j) t[i * width + j] -= f * t[leave * width + j];
    }
    const long double f = obj[enter];
    for (std::size_t j = 0; j < width; ++j) obj[j] -= f * t[leave * width + j];
    basis[leave] = enter;
  }
  w.assign(rows, 0.0L);
  for (std::size_t i = 0; i < cols; ++i) {
    if (basis[i] < rows) w[basis[i]] = t[i * width + nv];
  }
  u.assign(cols, 0.0L);
  for (std::size_t y = 0; y < cols; ++y) u[y] = obj[rows + y];
}

inline Distribution clipped_mix(const std::vector<long double>& x, long double scale) {
  std::vector<double> m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) m[i] = static_cast<double>(std::max(0.0L, x[i] * scale));
  return Distribution::from_mass(std::move(m));
}

}  // namespace detail

// Value and optimal strategies of the game with row-major payoff m (rows x cols).
inline MatrixGameSolution matrix_game_value(std::span<const double> m, std::size_t rows,
                                            std::size_t cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("matrix game: empty matrix");
  if (m.size() != rows * cols) throw std::invalid_argument("matrix game: size != rows * cols");
  double lo = kInf, hi = kNegInf;
  for (double v : m) {
    if (std::isnan(v)) throw std::invalid_argument("matrix game: NaN entry");
    if (!std::isfinite(v)) throw std::invalid_argument("matrix game: infinite entry");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  MatrixGameSolution s;
  if (rows == 1 || cols == 1 || lo == hi) {
    // One player has no choice: the other best-responds with a pure strategy.
    std::size_t br = 0, bc = 0;
    if (rows == 1) {
      for (std::size_t y = 1; y < cols; ++y) if (m[y] > m[bc]) bc = y;
    } else if (cols == 1) {
      for (std::size_t d = 1; d < rows; ++d) if (m[d] < m[br]) br = d;
    }
    s.value = m[br * cols + bc];
    s.row_mix = lo == hi && rows > 1 ? Distribution::uniform(rows) : Distribution::point_mass(rows, br);
    s.col_mix = lo == hi && cols > 1 ? Distribution::uniform(cols) : Distribution::point_mass(cols, bc);
    return s;
  }
  // Shift to a positive matrix; the row player's program is a packing LP
  // whose optimum is 1 / value and whose dual gives the column strategy.
  const long double shift = 1.0L - static_cast<long double>(lo);
  std::vector<long double> a(rows * cols);
  for (std::size_t d = 0; d < rows; ++d) {
    for (std::size_t y = 0; y < cols; ++y) a[y * rows + d] = m[d * cols + y] + shift;
  }
  std::vector<long double> w, u;
  detail::solve_packing_lp(a, rows, cols, w, u);
  long double total = 0.0L;
  for (long double x : w) total += x;
  const long double v = 1.0L / total;
  s.row_mix = detail::clipped_mix(w, v);
  s.col_mix = detail::clipped_mix(u, v);

  long double upper = -1e300L, lower = 1e300L;
  for (std::size_t y = 0; y < cols; ++y) {
    long double acc = 0.0L;
    for (std::size_t d = 0; d < rows; ++d) acc += s.row_mix[d] * static_cast<long double>(m[d * cols + y]);
    upper = std::max(upper, acc);
  }
  for (std::size_t d = 0; d < rows; ++d) {
    long double acc = 0.0L;
    for (std::size_t y = 0; y < cols; ++y) acc += s.col_mix[y] * static_cast<long double>(m[d * cols + y]);
    lower = std::min(lower, acc);
  }
  s.gap = static_cast<double>(upper - lower);
  s.value = static_cast<double>(0.5L * (upper + lower));
  if (s.gap > kMatrixGameTolerance * std::max(1.0, hi - lo)) {
    throw std::runtime_error("matrix game: duality gap " + std::to_string(s.gap) + " above tolerance");
  }
  return s;
}

inline MatrixGameSolution matrix_game_value(const std::vector<std::vector<double>>& m) {
  if (m.empty() || m.front().empty()) throw std::invalid_argument("matrix game: empty matrix");
  std::vector<double> flat;
  flat.reserve(m.size() * m.front().size());
  for (const auto& row : m) {
    if (row.size() != m.front().size()) throw std::invalid_argument("matrix game: ragged rows");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return matrix_game_value(flat, m.size(), m.front().size());
}

}  // namespace adaptive

#endif  // ADAPTIVE_ORACLE_MATRIX_GAME_HPP_
