#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "exterior.hpp"

namespace spinforms {

/// Result of testing a 2-form on an oriented 4-plane for anti-self-duality
/// with respect to the induced metric.
struct AsdVerdict {
  bool anti_self_dual = false;
  /// |alpha_+| in the induced metric, evaluated in doubles. Exact mode decides
  /// `anti_self_dual` without rounding; float mode thresholds this value.
  double self_dual_norm = 0;
};

namespace detail {

/// |alpha_+| from A_ij = alpha(u_i, u_j) and the Gram matrix, via a
/// Gram-Schmidt orthonormal frame (which keeps the frame's orientation).
template <FieldScalar S>
double self_dual_norm_double(const Matrix<S> &A, const Matrix<S> &G, int orientation) {
  double a[4][4], g[4][4], c[4][4] = {};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      a[i][j] = ScalarTraits<S>::to_double(A(i, j));
      g[i][j] = ScalarTraits<S>::to_double(G(i, j));
    }
  // rows of c: coefficients of the orthonormal vectors in the frame
  for (int i = 0; i < 4; ++i) {
    double w[4] = {};
    w[i] = 1;
    for (int k = 0; k < i; ++k) {
      double proj = 0;
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) proj += c[k][p] * g[p][q] * w[q];
      for (int p = 0; p < 4; ++p) w[p] -= proj * c[k][p];
    }
    double nn = 0;
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) nn += w[p] * g[p][q] * w[q];
    nn = std::sqrt(nn);
    for (int p = 0; p < 4; ++p) c[i][p] = w[p] / nn;
  }
  auto on = [&](int i, int j) {
    double s = 0;
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) s += c[i][p] * c[j][q] * a[p][q];
    return s;
  };
  const double o = orientation;
  const double s1 = on(0, 1) + o * on(2, 3);
  const double s2 = on(0, 2) - o * on(1, 3);
  const double s3 = on(0, 3) + o * on(1, 2);
  return std::sqrt(0.5 * (s1 * s1 + s2 * s2 + s3 * s3));
}

} // namespace detail

/// ASD test from A_ij = alpha(u_i, u_j) and the Gram matrix G of the frame.
template <FieldScalar S>
AsdVerdict intrinsic_asd_matrices(const Matrix<S> &A, const Matrix<S> &G, int orientation) {
  require(A.size() == 4 && G.size() == 4, "intrinsic_asd: expected 4x4 matrices");
  require(orientation == 1 || orientation == -1, "intrinsic_asd: orientation must be +-1");
  const S detG = determinant(G);
  auto Ginv = try_inverse(G);
  if (!Ginv || is_zero(detG)) throw GeometryError("intrinsic_asd: frame is degenerate");
  const Matrix<S> raised = (*Ginv) * A * (*Ginv);
  S norm2(0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) norm2 = norm2 + A(i, j) * raised(i, j);
  norm2 = norm2 / S(2);
  const S pf = A(0, 1) * A(2, 3) - A(0, 2) * A(1, 3) + A(0, 3) * A(1, 2);
  const S oriented_pf = orientation > 0 ? S(pf) : S(-pf);

  AsdVerdict v;
  v.self_dual_norm = detail::self_dual_norm_double(A, G, orientation);
  if constexpr (is_exact_v<S>) {
    v.anti_self_dual = sgn(oriented_pf) <= 0 && S(4) * pf * pf == norm2 * norm2 * detG;
  } else {
    double scale = std::sqrt(std::max(0.0, ScalarTraits<S>::to_double(norm2)));
    v.anti_self_dual = v.self_dual_norm <= 1e-9 * (1.0 + scale);
  }
  return v;
}

/// Intrinsic anti-self-duality test. `frame` spans the plane U; `orientation`
/// is +1 if the frame is positively oriented and -1 otherwise. alpha is read
/// only through its values alpha(u_i, u_j).
///
/// With A_ij = alpha(u_i, u_j) and Gram matrix G, alpha ^ alpha =
/// 2 Pf(A) du^{0123} = (|alpha_+|^2 - |alpha_-|^2) vol_G and vol_G =
/// sqrt(det G) du^{0123}. So alpha is ASD iff
/// orientation * 2 Pf(A) = -|alpha|^2 sqrt(det G).
template <FieldScalar S>
AsdVerdict intrinsic_asd(std::span<const Vector<S>> frame, const Form<S> &alpha, int orientation) {
  require(frame.size() == 4, "intrinsic_asd: expected a 4-vector frame");
  require(alpha.grade() == 2, "intrinsic_asd: expected a 2-form");
  Matrix<S> A(4), G(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      G(i, j) = dot(frame[i], frame[j]);
      A(i, j) = i == j ? S(0) : evaluate(alpha, {frame[i], frame[j]});
    }
  return intrinsic_asd_matrices(A, G, orientation);
}

template <FieldScalar S>
AsdVerdict intrinsic_asd(const std::array<Vector<S>, 4> &frame, const Form<S> &alpha, int orientation) {
  return intrinsic_asd(std::span<const Vector<S>>(frame), alpha, orientation);
}

/// Orthogonal projector onto span(frame): B (B^T B)^{-1} B^T.
template <FieldScalar S> Matrix<S> orthogonal_projector(std::span<const Vector<S>> frame) {
  require(!frame.empty(), "orthogonal_projector: empty frame");
  const int n = frame[0].dim();
  const int k = static_cast<int>(frame.size());
  Matrix<S> gram(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gram(i, j) = dot(frame[i], frame[j]);
  auto ginv = try_inverse(gram);
  if (!ginv) throw GeometryError("orthogonal_projector: frame is degenerate");
  Matrix<S> P(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      S acc(0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) acc = acc + frame[i][r] * (*ginv)(i, j) * frame[j][c];
      P(r, c) = acc;
    }
  return P;
}

/// True when i(v) alpha = 0 for every v orthogonal to span(frame), i.e.
/// alpha equals its pullback by the orthogonal projector onto the span.
template <FieldScalar S> bool supported_on(std::span<const Vector<S>> frame, const Form<S> &alpha) {
  const Form<S> restricted = pullback_linear(orthogonal_projector(frame), alpha);
  if constexpr (is_exact_v<S>) {
    return restricted == alpha;
  } else {
    return (restricted - alpha).max_abs() <= Tolerance{}.bound(std::max(1.0, alpha.max_abs())) * 1e3;
  }
}

/// Basis of the null space of the linear map whose images of the unit vectors
/// are `columns` (each a vector of the same length). Reduced row echelon
/// form; float mode drops pivots below tolerance.
template <FieldScalar S> std::vector<std::vector<S>> null_space(const std::vector<std::vector<S>> &columns) {
  const int n = static_cast<int>(columns.size());
  if (n == 0) return {};
  const int m = static_cast<int>(columns[0].size());
  std::vector<std::vector<S>> a(m, std::vector<S>(n));
  double scale = 1;
  for (int c = 0; c < n; ++c) {
    require(static_cast<int>(columns[c].size()) == m, "null_space: ragged columns");
    for (int r = 0; r < m; ++r) {
      a[r][c] = columns[c][r];
      scale = std::max(scale, ScalarTraits<S>::magnitude(a[r][c]));
    }
  }
  std::vector<int> pivot_col;
  int row = 0;
  for (int c = 0; c < n && row < m; ++c) {
    int piv = -1;
    double best = 0;
    for (int r = row; r < m; ++r) {
      if constexpr (is_exact_v<S>) {
        if (!is_zero(a[r][c])) {
          piv = r;
          break;
        }
      } else if (std::abs(a[r][c]) > best) {
        best = std::abs(a[r][c]);
        piv = r;
      }
    }
    if (piv < 0) continue;
    if constexpr (!is_exact_v<S>) {
      if (best <= Tolerance{}.bound(scale) * 1e3) continue;
    }
    std::swap(a[piv], a[row]);
    const S inv = S(1) / a[row][c];
    for (int k = 0; k < n; ++k) a[row][k] = a[row][k] * inv;
    for (int r = 0; r < m; ++r) {
      if (r == row || is_zero(a[r][c])) continue;
      const S factor = a[r][c];
      for (int k = 0; k < n; ++k) a[r][k] = a[r][k] - factor * a[row][k];
    }
    pivot_col.push_back(c);
    ++row;
  }
  std::vector<std::vector<S>> basis;
  for (int free = 0; free < n; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    std::vector<S> v(n, S(0));
    v[free] = S(1);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// The six 2-forms u_i^b ^ u_j^b (i < j) spanning the 2-forms supported on a 4-plane.
template <FieldScalar S> std::array<Form<S>, 6> plane_two_forms(const std::array<Vector<S>, 4> &u) {
  std::array<Form<S>, 6> out;
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) out[k++] = wedge(flat(u[i]), flat(u[j]));
  return out;
}

} // namespace spinforms
