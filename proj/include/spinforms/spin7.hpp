#pragma once

#include <array>
#include <cmath>

#include "g2.hpp"
#include "subspace.hpp"

namespace spinforms {

/// Constant tensors of the flat Spin(7) model on R^8 = R e_0 + V, built from a
/// G2 model on V = span{e_1..e_7}. Base coordinates x^0..x^3, fiber y^4..y^7.
///
/// The 1/sqrt(8) in lambda^4 is kept formal: `lambda4_scaled[mu]` holds
/// sqrt(8) lambda^4(e^mu), which has integer coefficients. Every quantity
/// built from it below is rational.
template <FieldScalar S> struct Spin7Data {
  G2Data<S> g2;
  Form<S> phi8;      // phi on V, as a form on R^8
  Form<S> star_phi8; // *_7 phi on V, as a form on R^8
  Form<S> Phi;
  std::array<Form<S>, 3> tau;   // base self-dual 2-forms
  std::array<Form<S>, 3> omega; // fiber 2-forms on R^8
  std::array<Form<S>, 7> lambda2;
  std::array<Form<S>, 7> lambda4_scaled;
  std::array<Form<S>, 7> lambda6;

  static Spin7Data from_g2(G2Data<S> g) {
    Spin7Data d;
    d.phi8 = embed_in_8(g.phi);
    d.star_phi8 = embed_in_8(g.star_phi);
    d.Phi = wedge(Form<S>::basis(8, {0}), d.phi8) + d.star_phi8;
    d.tau[0] = Form<S>::basis(8, {0, 1}) + Form<S>::basis(8, {2, 3});
    d.tau[1] = Form<S>::basis(8, {0, 2}) + Form<S>::basis(8, {3, 1});
    d.tau[2] = Form<S>::basis(8, {0, 3}) + Form<S>::basis(8, {1, 2});
    for (int i = 0; i < 3; ++i) d.omega[i] = embed_in_8(g.omega[i]);
    d.g2 = std::move(g);
    for (int mu = 0; mu < 7; ++mu) {
      const Form<S> e = Form<S>::basis(8, {mu + 1});
      d.lambda2[mu] = d.make_lambda2(e);
      d.lambda4_scaled[mu] = d.make_lambda4_scaled(e);
      d.lambda6[mu] = wedge(d.Phi, d.lambda2[mu]) / S(3);
    }
    return d;
  }

  static const Spin7Data &standard() {
    static const Spin7Data d = from_g2(G2Data<S>::standard());
    return d;
  }

  /// lambda^2(alpha) = (1/2)(e^0 ^ alpha + i(alpha#)phi).
  [[nodiscard]] Form<S> make_lambda2(const Form<S> &alpha) const {
    check_on_v(alpha);
    return (wedge(Form<S>::basis(8, {0}), alpha) + interior(sharp(alpha), phi8)) / S(2);
  }

  /// sqrt(8) lambda^4(alpha) = e^0 ^ i(alpha#)*_7phi - alpha ^ phi.
  [[nodiscard]] Form<S> make_lambda4_scaled(const Form<S> &alpha) const {
    check_on_v(alpha);
    return wedge(Form<S>::basis(8, {0}), interior(sharp(alpha), star_phi8)) - wedge(alpha, phi8);
  }

private:
  static void check_on_v(const Form<S> &alpha) {
    require(alpha.dim() == 8 && alpha.grade() == 1, "lambda: expected a 1-form on R^8");
    require(is_zero(alpha[0]), "lambda: 1-form has an e^0 component");
  }
};

template <FieldScalar S> Form<S> lambda2(const Spin7Data<S> &sd, const Form<S> &alpha) {
  return sd.make_lambda2(alpha);
}

template <FieldScalar S> Form<S> lambda4_scaled(const Spin7Data<S> &sd, const Form<S> &alpha) {
  return sd.make_lambda4_scaled(alpha);
}

/// lambda^4 itself; only available for floats because of the 1/sqrt(8).
inline Form<double> lambda4(const Spin7Data<double> &sd, const Form<double> &alpha) {
  return sd.make_lambda4_scaled(alpha) / std::sqrt(8.0);
}

/// lambda^6(alpha) = (1/3) Phi ^ lambda^2(alpha).
template <FieldScalar S> Form<S> lambda6(const Spin7Data<S> &sd, const Form<S> &alpha) {
  return wedge(sd.Phi, sd.make_lambda2(alpha)) / S(3);
}

/// pi^k_7 by orthogonal expansion over the lambda^k basis, k in {2, 4, 6}.
template <FieldScalar S> Form<S> project7(const Spin7Data<S> &sd, int k, const Form<S> &xi) {
  require(k == 2 || k == 4 || k == 6, "project7: grade must be 2, 4 or 6");
  require(xi.dim() == 8 && xi.grade() == k, "project7: expected a k-form on R^8");
  const auto &basis = k == 2 ? sd.lambda2 : k == 4 ? sd.lambda4_scaled : sd.lambda6;
  Form<S> out(8, k);
  for (const auto &b : basis) out += inner(xi, b) * b;
  return k == 4 ? out / S(8) : out;
}

/// pi^2_7 xi = (xi + *(Phi ^ xi))/4 and pi^6_7 xi = (xi + Phi ^ *xi)/4.
template <FieldScalar S> Form<S> project7_closed(const Spin7Data<S> &sd, int k, const Form<S> &xi) {
  require(k == 2 || k == 6, "project7_closed: grade must be 2 or 6");
  require(xi.dim() == 8 && xi.grade() == k, "project7_closed: expected a k-form on R^8");
  if (k == 2) return (xi + hodge(wedge(sd.Phi, xi))) / S(4);
  return (xi + wedge(sd.Phi, hodge(xi))) / S(4);
}

/// xi - pi^k_7 xi (for k = 2 this is pi^2_21).
template <FieldScalar S> Form<S> project7_complement(const Spin7Data<S> &sd, int k, const Form<S> &xi) {
  return xi - project7(sd, k, xi);
}

/// (lambda^2)^{-1} on Lambda^2_7: beta -> sum <beta, lambda^2(e^mu)> e^mu, as a
/// 1-form on R^7.
template <FieldScalar S> Form<S> lambda2_inverse(const Spin7Data<S> &sd, const Form<S> &beta) {
  Form<S> out(7, 1);
  for (int mu = 0; mu < 7; ++mu) out[mu] = inner(beta, sd.lambda2[mu]);
  return out;
}

/// sum <beta, sqrt(8) lambda^4(e^mu)> e^mu = sqrt(8) (lambda^4)^{-1} beta.
template <FieldScalar S> Form<S> lambda4_scaled_inverse(const Spin7Data<S> &sd, const Form<S> &beta) {
  Form<S> out(7, 1);
  for (int mu = 0; mu < 7; ++mu) out[mu] = inner(beta, sd.lambda4_scaled[mu]);
  return out;
}

/// tau(u0, u1, u2, u3) = pi^4_7(u0^b ^ u1^b ^ u2^b ^ u3^b).
template <FieldScalar S> Form<S> tau(const Spin7Data<S> &sd, const std::array<Vector<S>, 4> &u) {
  return project7(sd, 4, wedge({flat(u[0]), flat(u[1]), flat(u[2]), flat(u[3])}));
}

template <FieldScalar S> struct CayleyDefect {
  S phi_sq;      // |Phi(u0..u3)|^2
  S tau_sq8;     // 8 |tau(u0..u3)|^2
  S gram;        // |u0 ^ u1 ^ u2 ^ u3|^2
};

template <FieldScalar S> CayleyDefect<S> cayley_defect(const Spin7Data<S> &sd, const std::array<Vector<S>, 4> &u) {
  for (const auto &v : u) require(v.dim() == 8, "cayley_defect: expected vectors of R^8");
  const S p = evaluate(sd.Phi, {u[0], u[1], u[2], u[3]});
  return {p * p, S(8) * norm_squared(tau(sd, u)), wedge_norm_squared(std::span<const Vector<S>>(u))};
}

/// Sign of a calibrating form on a frame; 0 when it vanishes there (the
/// orientation is then undetermined).
template <FieldScalar S> int calibrated_orientation(const Form<S> &calibration, const std::array<Vector<S>, 4> &u) {
  const S v = evaluate(calibration, {u[0], u[1], u[2], u[3]});
  if constexpr (is_exact_v<S>) {
    return sgn(v);
  } else {
    double scale = 1;
    for (const auto &x : u)
      for (int i = 0; i < x.dim(); ++i) scale = std::max(scale, std::abs(x[i]));
    if (std::abs(v) <= Tolerance{}.bound(std::pow(scale, 4))) return 0;
    return v > 0 ? 1 : -1;
  }
}

template <FieldScalar S> struct AsdCheck {
  Form<S> residual;      // pi^2_7 alpha, or alpha ^ *phi
  bool residual_zero = false;
  AsdVerdict intrinsic;  // computed on the plane with its calibrated orientation
};

namespace detail {

template <FieldScalar S> bool residual_is_zero(const Form<S> &r, double scale) {
  return classify_norm_sq(norm_squared(r), scale) == Status::zero;
}

template <FieldScalar S> void require_supported(const std::array<Vector<S>, 4> &u, const Form<S> &alpha) {
  if (!supported_on(std::span<const Vector<S>>(u), alpha))
    throw ContractViolation("asd check: 2-form is not supported on the plane");
}

} // namespace detail

/// Cayley planes: alpha on U is anti-self-dual iff pi^2_7 alpha = 0. Both sides
/// are computed; the intrinsic verdict is the independent one.
template <FieldScalar S>
AsdCheck<S> asd_cayley_check(const Spin7Data<S> &sd, const std::array<Vector<S>, 4> &u, const Form<S> &alpha) {
  require(alpha.dim() == 8 && alpha.grade() == 2, "asd_cayley_check: expected a 2-form on R^8");
  const auto d = cayley_defect(sd, u);
  double scale = std::max(1.0, ScalarTraits<S>::magnitude(d.gram));
  if (is_zero(d.gram) || classify_norm_sq(d.tau_sq8, scale) != Status::zero)
    throw GeometryError("asd_cayley_check: plane is not Cayley");
  const int orientation = calibrated_orientation(sd.Phi, u);
  if (orientation == 0) throw GeometryError("asd_cayley_check: orientation undetermined");
  detail::require_supported(u, alpha);
  AsdCheck<S> out;
  out.residual = project7(sd, 2, alpha);
  out.residual_zero = detail::residual_is_zero(out.residual, alpha.max_abs());
  out.intrinsic = intrinsic_asd(u, alpha, orientation);
  return out;
}

/// Coassociative planes in R^7: alpha on U is anti-self-dual iff
/// alpha ^ *phi = 0.
template <FieldScalar S>
AsdCheck<S> asd_coassoc_check(const G2Data<S> &g2, const std::array<Vector<S>, 4> &u, const Form<S> &alpha) {
  require(alpha.dim() == 7 && alpha.grade() == 2, "asd_coassoc_check: expected a 2-form on R^7");
  const auto r = coassociative_residual(g2, u);
  double scale = 1;
  for (const auto &v : u)
    for (int i = 0; i < 7; ++i) scale = std::max(scale, ScalarTraits<S>::magnitude(v[i]));
  for (const auto &x : r)
    if (classify_norm_sq(S(x * x), std::pow(scale, 3)) != Status::zero)
      throw GeometryError("asd_coassoc_check: plane is not coassociative");
  const int orientation = calibrated_orientation(g2.star_phi, u);
  if (orientation == 0) throw GeometryError("asd_coassoc_check: frame is degenerate");
  detail::require_supported(u, alpha);
  AsdCheck<S> out;
  out.residual = wedge(alpha, g2.star_phi);
  out.residual_zero = detail::residual_is_zero(out.residual, alpha.max_abs());
  out.intrinsic = intrinsic_asd(u, alpha, orientation);
  return out;
}

} // namespace spinforms
