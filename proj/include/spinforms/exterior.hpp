#pragma once

#include <optional>
#include <span>

#include "form.hpp"

namespace spinforms {

template <Scalar S> Form<S> wedge(const Form<S> &a, const Form<S> &b) {
  require(a.dim() == b.dim(), "wedge: dimension mismatch");
  const int n = a.dim();
  if (a.grade() + b.grade() > n) return Form<S>(n, n); // zero top form
  Form<S> out(n, a.grade() + b.grade());
  for (const auto &e : wedge_table(n, a.grade(), b.grade())) {
    const S &ca = a[e.a];
    if (is_zero(ca)) continue;
    const S &cb = b[e.b];
    if (is_zero(cb)) continue;
    if (e.sign > 0)
      out[e.out] = out[e.out] + ca * cb;
    else
      out[e.out] = out[e.out] - ca * cb;
  }
  return out;
}

/// Wedge of several forms, left to right.
template <Scalar S> Form<S> wedge(std::initializer_list<Form<S>> forms) {
  require(forms.size() > 0, "wedge: empty product");
  auto it = forms.begin();
  Form<S> acc = *it++;
  for (; it != forms.end(); ++it) acc = wedge(acc, *it);
  return acc;
}

/// a^k = a ^ ... ^ a (k factors); a^0 is the constant 1.
template <Scalar S> Form<S> power(const Form<S> &a, int k) {
  Form<S> acc = Form<S>::scalar(a.dim(), S(1));
  for (int i = 0; i < k; ++i) acc = wedge(acc, a);
  return acc;
}

/// Interior product with the i-th standard basis vector (0-based position).
template <Scalar S> Form<S> interior_basis(int position, const Form<S> &a) {
  const int n = a.dim();
  if (a.grade() == 0) return Form<S>(n, 0);
  Form<S> out(n, a.grade() - 1);
  const auto &ta = a.table();
  const auto &to = out.table();
  const Mask bit = static_cast<Mask>(1u << position);
  for (int r = 0; r < ta.size(); ++r) {
    Mask m = ta.mask(r);
    if (!(m & bit) || is_zero(a[r])) continue;
    int before = std::popcount(static_cast<unsigned>(m & (bit - 1)));
    int dst = to.rank(static_cast<Mask>(m & ~bit));
    if (before % 2 == 0)
      out[dst] = out[dst] + a[r];
    else
      out[dst] = out[dst] - a[r];
  }
  return out;
}

/// i(v) a = a(v, ...). A 0-form maps to the zero 0-form.
template <Scalar S> Form<S> interior(const Vector<S> &v, const Form<S> &a) {
  require(v.dim() == a.dim(), "interior: dimension mismatch");
  if (a.grade() == 0) return Form<S>(a.dim(), 0);
  Form<S> out(a.dim(), a.grade() - 1);
  for (int i = 0; i < v.dim(); ++i) {
    if (is_zero(v[i])) continue;
    out += v[i] * interior_basis(i, a);
  }
  return out;
}

/// Hodge star for the Euclidean metric and orientation e^{1..n} (e^{0..7}).
template <Scalar S> Form<S> hodge(const Form<S> &a) {
  const int n = a.dim();
  Form<S> out(n, n - a.grade());
  const auto &ta = a.table();
  const auto &to = out.table();
  const Mask full = static_cast<Mask>((1u << n) - 1);
  for (int r = 0; r < ta.size(); ++r) {
    if (is_zero(a[r])) continue;
    Mask m = ta.mask(r);
    Mask c = static_cast<Mask>(full & ~m);
    int dst = to.rank(c);
    out[dst] = merge_sign(m, c) > 0 ? S(a[r]) : S(-a[r]);
  }
  return out;
}

/// Induced inner product; the index-tuple basis is orthonormal.
template <Scalar S> S inner(const Form<S> &a, const Form<S> &b) {
  require(a.dim() == b.dim() && a.grade() == b.grade(), "inner: dimension or grade mismatch");
  S acc(0);
  for (int r = 0; r < a.size(); ++r)
    if (!is_zero(a[r]) && !is_zero(b[r])) acc = acc + a[r] * b[r];
  return acc;
}

template <Scalar S> S norm_squared(const Form<S> &a) { return inner(a, a); }

/// The single coefficient of a top-degree form (relative to the volume form).
template <Scalar S> S top_coefficient(const Form<S> &a) {
  require(a.grade() == a.dim(), "top_coefficient: form is not of top degree");
  return a[0];
}

template <Scalar S> Form<S> flat(const Vector<S> &v) {
  Form<S> f(v.dim(), 1);
  for (int i = 0; i < v.dim(); ++i) f[i] = v[i];
  return f;
}

template <Scalar S> Vector<S> sharp(const Form<S> &alpha) {
  require(alpha.grade() == 1, "sharp: expected a 1-form");
  Vector<S> v(alpha.dim());
  for (int i = 0; i < alpha.dim(); ++i) v[i] = alpha[i];
  return v;
}

/// a(v_1, ..., v_k) = i(v_k) ... i(v_1) a.
template <Scalar S> S evaluate(const Form<S> &a, std::span<const Vector<S>> vs) {
  require(static_cast<int>(vs.size()) == a.grade(), "evaluate: wrong number of vectors");
  Form<S> cur = a;
  for (const auto &v : vs) cur = interior(v, cur);
  return cur[0];
}

template <Scalar S> S evaluate(const Form<S> &a, std::initializer_list<Vector<S>> vs) {
  std::vector<Vector<S>> tmp(vs);
  return evaluate(a, std::span<const Vector<S>>(tmp));
}

/// Skew-symmetric endomorphism of R^n.
template <Scalar S> class SkewEndo {
public:
  explicit SkewEndo(Matrix<S> m) : m_(std::move(m)) {
    for (int r = 0; r < m_.size(); ++r)
      for (int c = 0; c <= r; ++c) {
        S sum = m_(r, c) + m_(c, r);
        if constexpr (is_exact_v<S>) {
          require(is_zero(sum), "skew endomorphism: matrix is not antisymmetric");
        } else {
          double scale = std::max(ScalarTraits<S>::magnitude(m_(r, c)), 1.0);
          require(ScalarTraits<S>::magnitude(sum) <= Tolerance{}.bound(scale),
                  "skew endomorphism: matrix is not antisymmetric");
        }
      }
  }
  [[nodiscard]] const Matrix<S> &matrix() const { return m_; }
  [[nodiscard]] int dim() const { return m_.size(); }

private:
  Matrix<S> m_;
};

/// F -> F^sharp with <M u, v> = F(u, v).
template <Scalar S> SkewEndo<S> sharp_two_form(const Form<S> &F) {
  require(F.grade() == 2, "sharp_two_form: expected a 2-form");
  const int n = F.dim();
  Matrix<S> m(n);
  const auto &t = F.table();
  for (int r = 0; r < t.size(); ++r) {
    auto pos = mask_positions(t.mask(r));
    int i = pos[0], j = pos[1];
    // <M e_i, e_j> = M(j, i) = F(e_i, e_j) = F_ij
    m(j, i) = F[r];
    m(i, j) = -F[r];
  }
  return SkewEndo<S>(std::move(m));
}

/// Determinant by Gaussian elimination. Exact mode pivots on the first
/// nonzero entry; float mode uses partial pivoting.
template <FieldScalar S> S determinant(Matrix<S> a) {
  const int n = a.size();
  S det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    if constexpr (is_exact_v<S>) {
      for (int r = col; r < n; ++r)
        if (!is_zero(a(r, col))) {
          piv = r;
          break;
        }
    } else {
      double best = 0;
      for (int r = col; r < n; ++r)
        if (std::abs(a(r, col)) > best) {
          best = std::abs(a(r, col));
          piv = r;
        }
    }
    if (piv < 0) return S(0);
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
      det = -det;
    }
    const S p = a(col, col);
    det = det * p;
    for (int r = col + 1; r < n; ++r) {
      if (is_zero(a(r, col))) continue;
      const S factor = a(r, col) / p;
      for (int c = col; c < n; ++c) a(r, c) = a(r, c) - factor * a(col, c);
    }
  }
  return det;
}

/// Gauss-Jordan inverse; nullopt when the matrix is singular (exactly, or to
/// within float tolerance relative to its largest entry).
template <FieldScalar S> std::optional<Matrix<S>> try_inverse(Matrix<S> a) {
  const int n = a.size();
  Matrix<S> inv = Matrix<S>::identity(n);
  double scale = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) scale = std::max(scale, ScalarTraits<S>::magnitude(a(r, c)));
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = 0;
    for (int r = col; r < n; ++r) {
      double m = ScalarTraits<S>::magnitude(a(r, col));
      if constexpr (is_exact_v<S>) {
        if (!is_zero(a(r, col))) {
          piv = r;
          break;
        }
      } else if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (piv < 0) return std::nullopt;
    if constexpr (!is_exact_v<S>) {
      if (best <= Tolerance{}.bound(scale)) return std::nullopt;
    }
    for (int c = 0; c < n; ++c) {
      std::swap(a(piv, c), a(col, c));
      std::swap(inv(piv, c), inv(col, c));
    }
    const S p = a(col, col);
    for (int c = 0; c < n; ++c) {
      a(col, c) = a(col, c) / p;
      inv(col, c) = inv(col, c) / p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || is_zero(a(r, col))) continue;
      const S factor = a(r, col);
      for (int c = 0; c < n; ++c) {
        a(r, c) = a(r, c) - factor * a(col, c);
        inv(r, c) = inv(r, c) - factor * inv(col, c);
      }
    }
  }
  return inv;
}

template <FieldScalar S> Matrix<S> inverse(const Matrix<S> &a) {
  auto inv = try_inverse(a);
  if (!inv) throw GeometryError("inverse: matrix is singular");
  return *inv;
}

/// det(id + M) for skew M; equals the product of (1 + mu_i^2) over the
/// eigenvalue pairs +-sqrt(-1) mu_i, hence >= 1.
template <FieldScalar S> S det_id_plus_skew(const SkewEndo<S> &m) {
  return determinant(Matrix<S>::identity(m.dim()) + m.matrix());
}

/// Pullback T^*a, (T^*a)(v_1..v_k) = a(T v_1, ..., T v_k). Computed by
/// expanding each basis term as a wedge of pulled-back 1-forms, where
/// T^* e^j = sum_i T(j, i) e^i.
template <Scalar S> Form<S> pullback_linear(const Matrix<S> &T, const Form<S> &a) {
  const int n = a.dim();
  require(T.size() == n, "pullback_linear: dimension mismatch");
  std::vector<Form<S>> rows;
  rows.reserve(n);
  for (int j = 0; j < n; ++j) {
    Form<S> r(n, 1);
    for (int i = 0; i < n; ++i) r[i] = T(j, i);
    rows.push_back(std::move(r));
  }
  Form<S> out(n, a.grade());
  const auto &t = a.table();
  for (int r = 0; r < t.size(); ++r) {
    if (is_zero(a[r])) continue;
    Form<S> term = Form<S>::scalar(n, a[r]);
    for (int p : mask_positions(t.mask(r))) term = wedge(term, rows[p]);
    out += term;
  }
  return out;
}

/// Pullback by the inverse of T; singular T raises GeometryError.
template <FieldScalar S> Form<S> pullback_inverse(const Matrix<S> &T, const Form<S> &a) {
  return pullback_linear(inverse(T), a);
}

/// Squared norm of u_1 ^ ... ^ u_k, the Gram determinant.
template <FieldScalar S> S wedge_norm_squared(std::span<const Vector<S>> vs) {
  const int k = static_cast<int>(vs.size());
  Matrix<S> g(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = dot(vs[i], vs[j]);
  return determinant(std::move(g));
}

/// Copies a form on R^7 = span{e_1..e_7} into R^8 (labels preserved).
template <Scalar S> Form<S> embed_in_8(const Form<S> &a) {
  require(a.dim() == 7, "embed_in_8: expected a form on R^7");
  Form<S> out(8, a.grade());
  const auto &t = a.table();
  const auto &to = out.table();
  for (int r = 0; r < t.size(); ++r) out[to.rank(static_cast<Mask>(t.mask(r) << 1))] = a[r];
  return out;
}

template <Scalar S> Vector<S> embed_in_8(const Vector<S> &v) {
  require(v.dim() == 7, "embed_in_8: expected a vector of R^7");
  Vector<S> out(8);
  for (int i = 0; i < 7; ++i) out[i + 1] = v[i];
  return out;
}

/// Writes a form on R^8 as e^0 ^ first + second with first, second supported on
/// span{e_1..e_7}; both are returned as forms on R^7.
template <Scalar S> std::pair<Form<S>, Form<S>> split_e0(const Form<S> &a) {
  require(a.dim() == 8, "split_e0: expected a form on R^8");
  const int k = a.grade();
  Form<S> with_e0(7, k > 0 ? k - 1 : 0), without(7, k < 8 ? k : 7);
  const auto &t = a.table();
  for (int r = 0; r < t.size(); ++r) {
    Mask m = t.mask(r);
    if (m & 1u) {
      with_e0[with_e0.table().rank(static_cast<Mask>(m >> 1))] = a[r];
    } else if (k < 8) {
      without[without.table().rank(static_cast<Mask>(m >> 1))] = a[r];
    }
  }
  return {with_e0, without};
}

/// True when a form on R^8 has no e^0 component.
template <Scalar S> bool supported_on_v(const Form<S> &a) {
  require(a.dim() == 8, "supported_on_v: expected a form on R^8");
  const auto &t = a.table();
  for (int r = 0; r < t.size(); ++r)
    if ((t.mask(r) & 1u) && !is_zero(a[r])) return false;
  return true;
}

template <Scalar S> Form<S> restrict_to_v(const Form<S> &a) {
  require(supported_on_v(a), "restrict_to_v: form has an e^0 component");
  return split_e0(a).second;
}

/// Dimension of the span of a family of same-shape forms (row reduction on the
/// coefficient vectors; float mode drops pivots below tolerance).
template <FieldScalar S> int span_rank(std::span<const Form<S>> forms) {
  if (forms.empty()) return 0;
  std::vector<std::vector<S>> rows;
  double scale = 0;
  for (const auto &f : forms) {
    require(f.dim() == forms[0].dim() && f.grade() == forms[0].grade(), "span_rank: shape mismatch");
    rows.push_back(f.coefficients());
    scale = std::max(scale, f.max_abs());
  }
  const int cols = forms[0].size();
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    double best = 0;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if constexpr (is_exact_v<S>) {
        if (!is_zero(rows[r][c])) {
          piv = r;
          break;
        }
      } else if (std::abs(rows[r][c]) > best) {
        best = std::abs(rows[r][c]);
        piv = r;
      }
    }
    if (piv < 0) continue;
    if constexpr (!is_exact_v<S>) {
      if (best <= Tolerance{}.bound(std::max(scale, 1.0)) * 1e3) continue;
    }
    std::swap(rows[piv], rows[rank]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (is_zero(rows[r][c])) continue;
      const S factor = rows[r][c] / rows[rank][c];
      for (int k = c; k < cols; ++k) rows[r][k] = rows[r][k] - factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

} // namespace spinforms
