#pragma once

// Small scalar-generic helpers shared by the double and Q(sqrt 2) code paths.

#include "transition/exact.hpp"

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <vector>

namespace transition {

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

inline bool near_zero(double x, double tol) { return std::abs(x) <= tol; }
inline bool near_zero(const QSqrt2& x, double /*tol*/) { return x.is_zero(); }

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const QSqrt2& x) { return std::abs(x.to_double()); }

inline double abs_of(double x) { return std::abs(x); }
inline QSqrt2 abs_of(const QSqrt2& x) { return abs(x); }

inline int sign_of(double x, double tol) { return x > tol ? 1 : (x < -tol ? -1 : 0); }
inline int sign_of(const QSqrt2& x, double /*tol*/) { return x.sign(); }

inline double as_double(double x) { return x; }
inline double as_double(const QSqrt2& x) { return x.to_double(); }

/// Index of the entry with the largest magnitude (first one on ties).
template <class S>
Eigen::Index argmax_magnitude(const Vec<S>& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (magnitude(v[i]) > magnitude(v[best])) best = i;
  }
  return best;
}

/// Reduced row echelon data of a matrix, computed by Gaussian elimination
/// with partial pivoting. Rows are scaled to unit max-norm first so that the
/// tolerance is relative.
template <class S>
struct Echelon {
  Mat<S> reduced;
  std::vector<Eigen::Index> pivot_cols;
};

template <class S>
Echelon<S> row_reduce(Mat<S> a, double tol) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  for (Eigen::Index r = 0; r < rows; ++r) {
    Vec<S> row = a.row(r).transpose();
    if (row.size() == 0) continue;
    S scale = abs_of(row[argmax_magnitude<S>(row)]);
    if (!near_zero(scale, 0.0)) a.row(r) /= scale;
  }
  Echelon<S> out;
  Eigen::Index pivot_row = 0;
  for (Eigen::Index c = 0; c < cols && pivot_row < rows; ++c) {
    Eigen::Index best = pivot_row;
    for (Eigen::Index r = pivot_row + 1; r < rows; ++r) {
      if (magnitude(a(r, c)) > magnitude(a(best, c))) best = r;
    }
    if (near_zero(a(best, c), tol)) {
      for (Eigen::Index r = pivot_row; r < rows; ++r) a(r, c) = S(0);
      continue;
    }
    a.row(best).swap(a.row(pivot_row));
    S p = a(pivot_row, c);
    a.row(pivot_row) /= p;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == pivot_row || near_zero(a(r, c), 0.0)) continue;
      S f = a(r, c);
      a.row(r) -= f * a.row(pivot_row);
    }
    out.pivot_cols.push_back(c);
    ++pivot_row;
  }
  out.reduced = std::move(a);
  return out;
}

template <class S>
int matrix_rank(const Mat<S>& a, double tol) {
  return static_cast<int>(row_reduce<S>(a, tol).pivot_cols.size());
}

/// Generator of the kernel when it is one-dimensional, otherwise nullopt.
template <class S>
std::optional<Vec<S>> kernel_line(const Mat<S>& a, double tol) {
  Echelon<S> e = row_reduce<S>(a, tol);
  const Eigen::Index cols = a.cols();
  if (static_cast<Eigen::Index>(e.pivot_cols.size()) != cols - 1) return std::nullopt;
  Eigen::Index free_col = 0;
  for (Eigen::Index c = 0, k = 0; c < cols; ++c) {
    if (k < static_cast<Eigen::Index>(e.pivot_cols.size()) && e.pivot_cols[k] == c) {
      ++k;
    } else {
      free_col = c;
      break;
    }
  }
  Vec<S> x = Vec<S>::Zero(cols);
  x[free_col] = S(1);
  for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) {
    x[e.pivot_cols[k]] = -e.reduced(static_cast<Eigen::Index>(k), free_col);
  }
  return x;
}

/// Divides by the largest-magnitude entry's absolute value (a positive scalar).
template <class S>
Vec<S> scale_to_unit_max(const Vec<S>& v) {
  S m = abs_of(v[argmax_magnitude<S>(v)]);
  if (near_zero(m, 0.0)) return v;
  return v / m;
}

/// True when b = s * a for some s > 0 (entrywise tolerance after unit-max scaling).
template <class S>
bool same_ray(const Vec<S>& a, const Vec<S>& b, double tol) {
  if (a.size() != b.size()) return false;
  Vec<S> ca = scale_to_unit_max<S>(a);
  Vec<S> cb = scale_to_unit_max<S>(b);
  for (Eigen::Index i = 0; i < ca.size(); ++i) {
    if (!near_zero(S(ca[i] - cb[i]), tol)) return false;
  }
  return true;
}

}  // namespace transition
