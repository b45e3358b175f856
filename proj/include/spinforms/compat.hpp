#pragma once

#include <stdexcept>

#include "fm_transform.hpp"

namespace spinforms {

/// A point (cos theta, sin theta) of the unit circle. Rational points such as
/// (3/5, 4/5) keep phase computations exact.
template <FieldScalar S> struct Phase {
  S cos = S(1);
  S sin = S(0);

  static Phase zero() { return {}; }
  static Phase from(const S &c, const S &s) {
    if constexpr (is_exact_v<S>) {
      require(c * c + s * s == S(1), "phase: (cos, sin) is not on the unit circle");
    } else {
      require(std::abs(c * c + s * s - 1.0) <= 1e-12, "phase: (cos, sin) is not on the unit circle");
    }
    return {c, s};
  }
};

/// The flat Calabi-Yau 4-fold R^8 = C^4 with complex coordinates
/// x^0 + i x^1, x^2 + i x^3, x^4 + i x^5, x^6 + i x^7 (J e_0 = e_1, ...).
template <FieldScalar S> struct CY4Data {
  Form<S> omega;    // e^{01} + e^{23} + e^{45} + e^{67}
  Form<S> Omega_re; // Re of (e^0 + i e^1)^(e^2 + i e^3)^(e^4 + i e^5)^(e^6 + i e^7)
  Form<S> Omega_im;
  Matrix<S> J;      // complex structure on vectors
  Phase<S> phase;
  Matrix<S> rotation; // pullback matrix R with R^*Phi = Phi_theta
  Form<S> Phi;        // omega^2/2 + Re(e^{-i theta} Omega)
  Spin7Data<S> spin7; // the Spin(7) model carried by Phi (pulled back by R)

  static CY4Data make(Phase<S> ph = Phase<S>::zero()) {
    CY4Data d;
    d.phase = ph;
    d.omega = Form<S>(8, 2);
    Form<S> re = Form<S>::scalar(8, S(1)), im(8, 0);
    d.J = Matrix<S>(8);
    for (int k = 0; k < 4; ++k) {
      d.omega += Form<S>::basis(8, {2 * k, 2 * k + 1});
      const Form<S> a = Form<S>::basis(8, {2 * k}), b = Form<S>::basis(8, {2 * k + 1});
      Form<S> nre = wedge(re, a) - wedge(im, b);
      Form<S> nim = wedge(re, b) + wedge(im, a);
      re = std::move(nre);
      im = std::move(nim);
      d.J(2 * k + 1, 2 * k) = S(1);
      d.J(2 * k, 2 * k + 1) = S(-1);
    }
    d.Omega_re = re;
    d.Omega_im = im;
    d.Phi = wedge(d.omega, d.omega) / S(2) + ph.cos * re + ph.sin * im;
    // e^0 -> c e^0 + s e^1, e^1 -> -s e^0 + c e^1 rotates dz^1 by e^{-i theta}
    d.rotation = Matrix<S>::identity(8);
    d.rotation(0, 0) = ph.cos;
    d.rotation(0, 1) = ph.sin;
    d.rotation(1, 0) = -ph.sin;
    d.rotation(1, 1) = ph.cos;
    d.spin7 = rotate(Spin7Data<S>::standard(), d.rotation);
    return d;
  }

  /// Pulls every 8-dimensional tensor of a Spin(7) model back by an
  /// orthogonal, orientation-preserving R. The lambda families stay
  /// orthonormal, so the projections keep their meaning for R^*Phi.
  static Spin7Data<S> rotate(const Spin7Data<S> &sd, const Matrix<S> &R) {
    Spin7Data<S> out = sd;
    out.Phi = pullback_linear(R, sd.Phi);
    out.phi8 = pullback_linear(R, sd.phi8);
    out.star_phi8 = pullback_linear(R, sd.star_phi8);
    for (int i = 0; i < 3; ++i) {
      out.tau[i] = pullback_linear(R, sd.tau[i]);
      out.omega[i] = pullback_linear(R, sd.omega[i]);
    }
    for (int mu = 0; mu < 7; ++mu) {
      out.lambda2[mu] = pullback_linear(R, sd.lambda2[mu]);
      out.lambda4_scaled[mu] = pullback_linear(R, sd.lambda4_scaled[mu]);
      out.lambda6[mu] = pullback_linear(R, sd.lambda6[mu]);
    }
    return out;
  }
};

/// The (0,2)+(2,0) part of a real 2-form: (F - F(J., J.))/2.
template <FieldScalar S> Form<S> non_11_part(const CY4Data<S> &cy, const Form<S> &F) {
  return (F - pullback_linear(cy.J, F)) / S(2);
}

/// Spin(7) dDT on S^1 x R^7 against G2 dDT on R^7, for a real 2-form G7 on R^7
/// (or on R^8 without dx^0 terms).
template <FieldScalar S> ResidualReport g2_reduction_check(const Spin7Data<S> &sd, const Form<S> &G) {
  require(G.grade() == 2, "g2_reduction_check: expected a 2-form");
  Form<S> G7 = G;
  if (G.dim() == 8) {
    require(supported_on_v(G), "g2_reduction_check: 2-form has an S^1 component");
    G7 = restrict_to_v(G);
  }
  require(G7.dim() == 7, "g2_reduction_check: expected a form on R^7 or R^8");
  const Form<S> G8 = embed_in_8(G7);
  const double scale = std::pow(std::max(1.0, G7.max_abs()), 4);

  const auto g2r = ddt_residual_g2(sd.g2, G7);
  const auto s7 = ddt_residual_spin7(sd, G8);
  const S n_g2 = norm_squared(g2r.first);
  const S n1 = norm_squared(s7.first);
  const S n2 = norm_squared(s7.second);
  const Status st_g2 = classify_norm_sq(n_g2, scale);
  const Status st1 = classify_norm_sq(n1, scale);
  const Status st2 = classify_norm_sq(n2, scale);
  const Status st_pair = detail::combine(st1, st2);

  ResidualReport rep;
  rep.title = "G2 reduction";
  auto d = [](const S &v) { return std::sqrt(ScalarTraits<S>::to_double(v)); };
  rep.add({"G2 residual", "G2 dDT on R^7", "*phi ^ F + F^3/6", d(n_g2), 0, true, to_string(st_g2)});
  rep.add({"Spin7 first residual", "Spin(7) dDT on S^1 x R^7", "pi^2_7(F + *F^3/6)", d(n1), 0, true,
           to_string(st1)});
  rep.add({"Spin7 second residual", "Spin(7) dDT on S^1 x R^7", "pi^4_7(F^2)", d(n2), 0, true, to_string(st2)});
  const bool agree = st_g2 == st_pair && st_g2 != Status::indeterminate;
  rep.add({"status agreement", "reduction of Spin(7) dDT to G2 dDT",
           "Spin(7) pair vanishes <=> *phi ^ F + F^3/6 = 0", agree ? 0.0 : 1.0, 0, agree, ""});
  const bool second_follows = st1 != Status::zero || st2 == Status::zero;
  rep.add({"second from first", "F^4 = 0 for pulled-back forms", "pi^2_7 part = 0 => pi^4_7(F^2) = 0",
           second_follows ? 0.0 : 1.0, 0, second_follows, ""});
  return rep;
}

/// Values computed by `cy4_check`, kept for callers that need more than the report.
template <FieldScalar S> struct CY4Values {
  Form<S> first;        // pi^2_7(G - *G^3/6) for Phi_theta
  Form<S> second;       // -pi^4_7(G^2) for Phi_theta
  S im_top;             // top coefficient of Im(omega + iG)^4 = 4(omega^3 ^ G - omega ^ G^3)
  S scalar_lhs;         // <omega, G - *G^3/6>
  S scalar_rhs;         // (omega^3 ^ G - omega ^ G^3)/6, top coefficient
};

template <FieldScalar S> CY4Values<S> cy4_values(const CY4Data<S> &cy, const Form<S> &G) {
  require(G.dim() == 8 && G.grade() == 2, "cy4_check: expected a 2-form on R^8");
  if (!non_11_part(cy, G).is_zero()) {
    if constexpr (is_exact_v<S>) {
      throw GeometryError("cy4_check: 2-form has a (0,2) part");
    } else {
      if (non_11_part(cy, G).max_abs() > Tolerance{}.bound(std::max(1.0, G.max_abs())))
        throw GeometryError("cy4_check: 2-form has a (0,2) part");
    }
  }
  CY4Values<S> v;
  const Form<S> G2 = wedge(G, G);
  const Form<S> G3 = wedge(G2, G);
  v.first = project7(cy.spin7, 2, G - hodge(G3) / S(6));
  v.second = -project7(cy.spin7, 4, G2);
  const Form<S> w2 = wedge(cy.omega, cy.omega);
  const Form<S> w3 = wedge(w2, cy.omega);
  const S im = S(4) * (top_coefficient(wedge(w3, G)) - top_coefficient(wedge(cy.omega, G3)));
  v.im_top = im;
  v.scalar_lhs = inner(cy.omega, G - hodge(G3) / S(6));
  v.scalar_rhs = im / S(24);
  return v;
}

/// dHYM (phase 1) against Spin(7) dDT for Phi_theta, for a (1,1)-form;
/// F = sqrt(-1) G. dHYM does not see Omega, so the answer is the same for
/// every theta.
template <FieldScalar S> ResidualReport cy4_check(const CY4Data<S> &cy, const Form<S> &G) {
  const auto v = cy4_values(cy, G);
  const double scale = std::pow(std::max(1.0, G.max_abs()), 4);
  const S n1 = norm_squared(v.first), n2 = norm_squared(v.second);
  const Status st1 = classify_norm_sq(n1, scale);
  const Status st2 = classify_norm_sq(n2, scale);
  const Status st_im = classify_norm_sq(S(v.im_top * v.im_top), scale);
  auto d = [](const S &x) { return std::sqrt(std::max(0.0, ScalarTraits<S>::to_double(x))); };
  const double im_abs = ScalarTraits<S>::magnitude(v.im_top);

  ResidualReport rep;
  rep.title = "Calabi-Yau 4-fold compatibility";
  rep.add({"pi^4_7(F^2)", "(1,1)-forms have no Lambda^4_7 square", "pi^4_7(F^2) = 0", d(n2), 0,
           st2 == Status::zero, to_string(st2)});
  rep.add({"first Spin7 residual", "Spin(7) dDT", "pi^2_7(F + *F^3/6)", d(n1), 0, true, to_string(st1)});
  rep.add({"Im(omega + F)^4", "dHYM with phase 1", "Im(omega + F)^4", im_abs, 0, true, to_string(st_im)});
  double scalar_defect = ScalarTraits<S>::magnitude(S(v.scalar_lhs - v.scalar_rhs));
  const bool scalar_ok = is_exact_v<S> ? is_zero(S(v.scalar_lhs - v.scalar_rhs))
                                       : scalar_defect <= Tolerance{}.bound(scale);
  rep.add({"scalar identity", "omega-component of the first residual",
             "<omega, F + *F^3/6> vol = (sqrt(-1)/24) Im(omega + F)^4", scalar_defect, 0, scalar_ok, ""});
  const bool agree = st1 == st_im && st1 != Status::indeterminate;
  rep.add({"status agreement", "dHYM <=> Spin(7) dDT for (1,1)-forms",
           "pi^2_7(F + *F^3/6) = 0 for Phi_theta <=> Im(omega + F)^4 = 0", agree ? 0.0 : 1.0, 0, agree, ""});
  return rep;
}

} // namespace spinforms
