#pragma once

#include <array>

#include "fm_transform.hpp"
#include "random.hpp"

namespace spinforms {

/// A complex number as a pair of scalars; only what the constructions need.
template <FieldScalar S> struct ComplexPair {
  S re = S(0);
  S im = S(0);
};

namespace detail {

template <FieldScalar S> Polynomial<S> linear(const std::vector<std::pair<int, S>> &terms) {
  Polynomial<S> p;
  for (const auto &[var, c] : terms) p += Polynomial<S>(c) * Polynomial<S>::variable(var);
  return p;
}

/// Writes w = c z with z = x_re + i x_im into (out_re, out_im).
template <FieldScalar S>
void complex_multiply(const ComplexPair<S> &c, int x_re, int x_im, Polynomial<S> &out_re, Polynomial<S> &out_im) {
  out_re += linear<S>({{x_re, c.re}, {x_im, -c.im}});
  out_im += linear<S>({{x_re, c.im}, {x_im, c.re}});
}

} // namespace detail

/// Graph of a complex-linear map C^2 -> C^2 in R^8, with z1 = x^0 + i x^1,
/// z2 = x^2 + i x^3, w1 = y^4 + i y^5, w2 = y^6 + i y^7 and
/// (w1, w2) = (a z1 + b z2, c z1 + d z2). Complex subspaces are Cayley.
template <FieldScalar S>
GraphSection<S> complex_linear_cayley(const ComplexPair<S> &a, const ComplexPair<S> &b, const ComplexPair<S> &c,
                                      const ComplexPair<S> &d) {
  auto s = GraphSection<S>::zero(Case::spin7);
  detail::complex_multiply(a, 0, 1, s.f[0], s.f[1]);
  detail::complex_multiply(b, 2, 3, s.f[0], s.f[1]);
  detail::complex_multiply(c, 0, 1, s.f[2], s.f[3]);
  detail::complex_multiply(d, 2, 3, s.f[2], s.f[3]);
  return s;
}

/// Coassociative graph over (y^4..y^7): x^1 = const, x^2 + i x^3 = a z1 + b z2
/// with z1 = y^4 + i y^5, z2 = y^6 + i y^7.
template <FieldScalar S>
GraphSection<S> complex_linear_coassociative(const S &x1, const ComplexPair<S> &a, const ComplexPair<S> &b) {
  auto s = GraphSection<S>::zero(Case::g2_coassoc);
  s.f[0] = Polynomial<S>(x1);
  detail::complex_multiply(a, 0, 1, s.f[1], s.f[2]);
  detail::complex_multiply(b, 2, 3, s.f[1], s.f[2]);
  return s;
}

/// Associative graph over (x^1, x^2, x^3): y^4 + i y^5 = a z and
/// y^6 + i y^7 = b z with z = x^2 + i x^3, plus constants.
template <FieldScalar S>
GraphSection<S> complex_linear_associative(const ComplexPair<S> &a, const ComplexPair<S> &b,
                                           const std::array<S, 4> &offset) {
  auto s = GraphSection<S>::zero(Case::g2_assoc);
  for (int k = 0; k < 4; ++k) s.f[k] = Polynomial<S>(offset[k]);
  detail::complex_multiply(a, 1, 2, s.f[0], s.f[1]);
  detail::complex_multiply(b, 1, 2, s.f[2], s.f[3]);
  return s;
}

template <FieldScalar S> ComplexPair<S> random_complex(Sampler<S> &rng) {
  ComplexPair<S> c;
  c.re = rng.scalar();
  c.im = rng.scalar();
  return c;
}

/// Tangent frame of a section with constant Jacobian (any linear section).
template <FieldScalar S> std::array<Vector<S>, 4> linear_frame(const GraphSection<S> &s) {
  const Layout L = s.layout();
  require(L.base_dim == 4, "linear_frame: needs a 4-dimensional base");
  const auto pot = fm_connection(s);
  const std::vector<S> origin(4, S(0));
  std::vector<Vector<S>> f = tangent_frame(L, curvature_at(pot, std::span<const S>(origin)));
  return {f[0], f[1], f[2], f[3]};
}

/// Random graph-shaped 2-forms.
template <FieldScalar S> Form<S> random_graph_two_form(Sampler<S> &rng, Case c) {
  const Layout L = layout_for(c);
  Form<S> G(L.dim, 2);
  const int base = label_base(L.dim);
  for (int j = 0; j < L.base_dim; ++j)
    for (int a = 0; a < L.fiber_dim; ++a) {
      const int p = std::min(L.base[j], L.fiber[a]) + base, q = std::max(L.base[j], L.fiber[a]) + base;
      G += Form<S>::basis(L.dim, {p, q}, rng.scalar());
    }
  return G;
}

/// Real (1,1)-forms on C^4 with z^k = x^{2k} + i x^{2k+1}: a basis of 16.
template <FieldScalar S> std::vector<Form<S>> real_11_basis() {
  std::vector<Form<S>> out;
  for (int k = 0; k < 4; ++k) out.push_back(Form<S>::basis(8, {2 * k, 2 * k + 1}));
  for (int k = 0; k < 4; ++k)
    for (int l = k + 1; l < 4; ++l) {
      out.push_back(Form<S>::basis(8, {2 * k, 2 * l}) + Form<S>::basis(8, {2 * k + 1, 2 * l + 1}));
      out.push_back(Form<S>::basis(8, {2 * k, 2 * l + 1}) - Form<S>::basis(8, {2 * k + 1, 2 * l}));
    }
  return out;
}

template <FieldScalar S> Form<S> random_11_form(Sampler<S> &rng) {
  Form<S> G(8, 2);
  for (const auto &b : real_11_basis<S>()) G += rng.scalar() * b;
  return G;
}

} // namespace spinforms
