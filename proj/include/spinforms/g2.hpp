#pragma once

#include <array>

#include "exterior.hpp"

namespace spinforms {

/// Constant tensors of the flat G2 model on R^7. Base coordinates x^1..x^3,
/// fiber coordinates y^4..y^7; the same labels index e^1..e^7.
template <FieldScalar S> struct G2Data {
  Form<S> phi;
  Form<S> star_phi;
  Form<S> vol;
  std::array<Form<S>, 3> omega;

  static Form<S> standard_phi() {
    Form<S> p(7, 3);
    p += Form<S>::basis(7, {1, 2, 3});
    p += Form<S>::basis(7, {1, 4, 5});
    p += Form<S>::basis(7, {1, 6, 7});
    p += Form<S>::basis(7, {2, 4, 6});
    p -= Form<S>::basis(7, {2, 5, 7});
    p -= Form<S>::basis(7, {3, 4, 7});
    p -= Form<S>::basis(7, {3, 5, 6});
    return p;
  }

  /// The model built on an arbitrary 3-form; used to inject faults. Every
  /// derived tensor follows from `p`, except the fiber 2-forms, which are the
  /// standard ones.
  static G2Data from_phi(Form<S> p) {
    require(p.dim() == 7 && p.grade() == 3, "g2: phi must be a 3-form on R^7");
    G2Data d;
    d.star_phi = hodge(p);
    d.phi = std::move(p);
    d.vol = Form<S>::volume(7);
    d.omega[0] = Form<S>::basis(7, {4, 5}) + Form<S>::basis(7, {6, 7});
    d.omega[1] = Form<S>::basis(7, {4, 6}) - Form<S>::basis(7, {5, 7});
    d.omega[2] = -(Form<S>::basis(7, {4, 7}) + Form<S>::basis(7, {5, 6}));
    return d;
  }

  static const G2Data &standard() {
    static const G2Data d = from_phi(standard_phi());
    return d;
  }
};

/// g_phi(u, v) vol = (1/6) i(u)phi ^ i(v)phi ^ phi.
template <FieldScalar S> S g2_metric(const G2Data<S> &g2, const Vector<S> &u, const Vector<S> &v) {
  require(u.dim() == 7 && v.dim() == 7, "g2_metric: expected vectors of R^7");
  return top_coefficient(wedge({interior(u, g2.phi), interior(v, g2.phi), g2.phi})) / S(6);
}

template <FieldScalar S> struct G2Split2 {
  Form<S> p7;
  Form<S> p14;
};

/// Lambda^2 = Lambda^2_7 + Lambda^2_14 from the eigenvalues 2 and -1 of
/// a -> *(phi ^ a).
template <FieldScalar S> G2Split2<S> g2_project2(const G2Data<S> &g2, const Form<S> &a) {
  require(a.dim() == 7 && a.grade() == 2, "g2_project2: expected a 2-form on R^7");
  const Form<S> t = hodge(wedge(g2.phi, a));
  return {(a + t) / S(3), (S(2) * a - t) / S(3)};
}

/// pi^2_7 a = (1/3) sum_i <a, i(e_i)phi> i(e_i)phi, the expansion over the
/// orthogonal family {i(e_i)phi}, each of squared norm 3.
template <FieldScalar S> Form<S> g2_project7_expansion(const G2Data<S> &g2, const Form<S> &a) {
  require(a.dim() == 7 && a.grade() == 2, "g2_project7_expansion: expected a 2-form on R^7");
  Form<S> out(7, 2);
  for (int i = 0; i < 7; ++i) {
    const Form<S> b = interior_basis(i, g2.phi);
    out += inner(a, b) * b;
  }
  return out / S(3);
}

template <FieldScalar S> struct G2IdentityResiduals {
  Form<S> wedge_star;  // phi ^ i(u)*phi + 4 *u
  Form<S> star_wedge;  // *phi ^ i(u)phi - 3 *u
  Form<S> wedge_self;  // phi ^ i(u)phi - 2 *(i(u)phi)
};

/// The three contraction identities of phi; every residual vanishes on the
/// standard model.
template <FieldScalar S> G2IdentityResiduals<S> g2_identities(const G2Data<S> &g2, const Vector<S> &u) {
  require(u.dim() == 7, "g2_identities: expected a vector of R^7");
  const Form<S> star_u = hodge(flat(u));
  const Form<S> iphi = interior(u, g2.phi);
  return {wedge(g2.phi, interior(u, g2.star_phi)) + S(4) * star_u,
          wedge(g2.star_phi, iphi) - S(3) * star_u, wedge(g2.phi, iphi) - S(2) * hodge(iphi)};
}

/// *phi(v1, v2, v3, .), zero exactly on associative triples.
template <FieldScalar S>
Form<S> associative_residual(const G2Data<S> &g2, const Vector<S> &v1, const Vector<S> &v2, const Vector<S> &v3) {
  return interior(v3, interior(v2, interior(v1, g2.star_phi)));
}

/// phi on the four 3-subsets of (v1..v4), ordered (123, 124, 134, 234).
template <FieldScalar S>
std::array<S, 4> coassociative_residual(const G2Data<S> &g2, const std::array<Vector<S>, 4> &v) {
  return {evaluate(g2.phi, {v[0], v[1], v[2]}), evaluate(g2.phi, {v[0], v[1], v[3]}),
          evaluate(g2.phi, {v[0], v[2], v[3]}), evaluate(g2.phi, {v[1], v[2], v[3]})};
}

} // namespace spinforms
