#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "fgq/errors.hpp"
#include "fgq/rational.hpp"

// Small exact linear algebra over the rationals: just enough for Gram
// matrices, witness compatibility systems and pointed-cone certificates.

namespace fgq {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

inline RatMat ratIdentity(std::size_t n) {
  RatMat m(n, RatVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Rational(1);
  return m;
}

inline Rational ratDot(const RatVec& a, const RatVec& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <typename Int>
inline Rational ratDotInt(const RatVec& a, const std::vector<Int>& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rational(b[i]);
  return s;
}

// Gauss-Jordan inverse. The matrices we invert (Cartan blocks) are always
// nonsingular; a singular input is a programming error.
inline RatMat ratInverse(RatMat m) {
  const std::size_t n = m.size();
  RatMat inv = ratIdentity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == Rational(0)) ++pivot;
    if (pivot == n) fail(errs::ParseError, "singular matrix in ratInverse");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational p = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == Rational(0)) continue;
      const Rational f = m[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[row][j] -= f * m[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// Any solution x of A x = b, or nullopt when inconsistent. A is rows x cols;
// free variables are set to 0.
inline std::optional<RatVec> ratSolve(RatMat a, RatVec b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivotCol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == Rational(0)) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    std::swap(b[pivot], b[r]);
    const Rational p = a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] /= p;
    b[r] /= p;
    for (std::size_t row = 0; row < rows; ++row) {
      if (row == r || a[row][c] == Rational(0)) continue;
      const Rational f = a[row][c];
      for (std::size_t j = c; j < cols; ++j) a[row][j] -= f * a[r][j];
      b[row] -= f * b[r];
    }
    pivotCol.push_back(c);
    ++r;
  }
  for (std::size_t row = r; row < rows; ++row)
    if (b[row] != Rational(0)) return std::nullopt;
  RatVec x(cols, Rational(0));
  for (std::size_t i = 0; i < pivotCol.size(); ++i) x[pivotCol[i]] = b[i];
  return x;
}

namespace detail {

// One constraint sum_i coeff[i]*x_i >= rhs.
struct LinIneq {
  RatVec coeff;
  Rational rhs;
};

inline bool ineqLess(const LinIneq& a, const LinIneq& b) {
  if (a.rhs != b.rhs) return a.rhs < b.rhs;
  return std::lexicographical_compare(a.coeff.begin(), a.coeff.end(),
                                      b.coeff.begin(), b.coeff.end());
}

}  // namespace detail

// Fourier-Motzkin feasibility for <xi, column_j> >= 1 for every column.
// Returns an interior functional of the dual cone when the columns span an
// open half-space, nullopt otherwise. Column/variable counts here are tiny
// (rank <= 8, a handful of weights), so the elimination blowup is harmless.
template <typename Int>
inline std::optional<RatVec> findInteriorFunctional(
    const std::vector<std::vector<Int>>& columns) {
  if (columns.empty()) return RatVec{};
  const std::size_t dim = columns[0].size();
  std::vector<detail::LinIneq> sys;
  for (const auto& col : columns) {
    detail::LinIneq q;
    q.coeff.reserve(dim);
    for (auto v : col) q.coeff.push_back(Rational(v));
    q.rhs = Rational(1);
    sys.push_back(std::move(q));
  }

  // Eliminate variables from the back, remembering each stage's system so we
  // can back-substitute a concrete solution.
  std::vector<std::vector<detail::LinIneq>> stages;
  for (std::size_t var = dim; var-- > 0;) {
    stages.push_back(sys);
    std::vector<detail::LinIneq> lower, upper, rest;
    for (auto& q : sys) {
      const Rational c = q.coeff[var];
      if (c > Rational(0)) lower.push_back(q);       // x_var >= (rhs - ...)/c
      else if (c < Rational(0)) upper.push_back(q);  // x_var <= ...
      else rest.push_back(q);
    }
    std::vector<detail::LinIneq> next = rest;
    for (const auto& lo : lower) {
      for (const auto& up : upper) {
        // lo: c1 x + a >= r1 (c1>0), up: c2 x + b >= r2 (c2<0);
        // combine to eliminate x: c1*(r2 - b) <= -c2*(r1 - a) rearranged as
        // a linear inequality in the remaining variables.
        detail::LinIneq q;
        q.coeff.assign(dim, Rational(0));
        const Rational c1 = lo.coeff[var];
        const Rational c2 = -up.coeff[var];
        for (std::size_t j = 0; j < dim; ++j)
          q.coeff[j] = c2 * lo.coeff[j] + c1 * up.coeff[j];
        q.coeff[var] = Rational(0);
        q.rhs = c2 * lo.rhs + c1 * up.rhs;
        next.push_back(std::move(q));
      }
    }
    std::sort(next.begin(), next.end(), detail::ineqLess);
    next.erase(std::unique(next.begin(), next.end(),
                           [](const detail::LinIneq& a, const detail::LinIneq& b) {
                             return a.rhs == b.rhs && a.coeff == b.coeff;
                           }),
               next.end());
    sys = std::move(next);
  }
  for (const auto& q : sys)
    if (q.rhs > Rational(0)) return std::nullopt;  // 0 >= rhs > 0

  // Back-substitute: at each stage pick the midpoint of the feasible interval
  // for the variable being restored (or a finite endpoint + 1).
  RatVec x(dim, Rational(0));
  for (std::size_t var = 0; var < dim; ++var) {
    const auto& stage = stages[stages.size() - 1 - var];  // stage for variable `var`
    bool haveLo = false, haveHi = false;
    Rational lo(0), hi(0);
    for (const auto& q : stage) {
      const Rational c = q.coeff[var];
      if (c == Rational(0)) continue;
      Rational bound = q.rhs;
      for (std::size_t j = 0; j < dim; ++j)
        if (j != var) bound -= q.coeff[j] * x[j];
      bound /= c;
      if (c > Rational(0)) {
        if (!haveLo || bound > lo) lo = bound;
        haveLo = true;
      } else {
        if (!haveHi || bound < hi) hi = bound;
        haveHi = true;
      }
    }
    if (haveLo && haveHi) x[var] = (lo + hi) / Rational(2);
    else if (haveLo) x[var] = lo + Rational(1);
    else if (haveHi) x[var] = hi - Rational(1);
  }
  return x;
}

}  // namespace fgq
