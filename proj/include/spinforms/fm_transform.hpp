#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polynomial.hpp"
#include "report.hpp"
#include "spin7.hpp"

namespace spinforms {

/// Which fibration a graph section lives in.
///   g2_assoc:   base x^1..x^3, fiber y^4..y^7 in R^7 (associative graphs)
///   g2_coassoc: base y^4..y^7, fiber x^1..x^3 in R^7 (coassociative graphs)
///   spin7:      base x^0..x^3, fiber y^4..y^7 in R^8 (Cayley graphs)
enum class Case { g2_assoc, g2_coassoc, spin7 };

inline const char *to_string(Case c) {
  switch (c) {
  case Case::g2_assoc: return "g2_assoc";
  case Case::g2_coassoc: return "g2_coassoc";
  default: return "spin7";
  }
}

inline std::optional<Case> parse_case(std::string_view s) {
  if (s == "g2_assoc") return Case::g2_assoc;
  if (s == "g2_coassoc") return Case::g2_coassoc;
  if (s == "spin7") return Case::spin7;
  return std::nullopt;
}

/// Axis positions (0-based, in the ambient R^dim) of base and fiber
/// coordinates. Base variable j of a section is the axis base[j].
struct Layout {
  int dim = 0;
  int base_dim = 0;
  int fiber_dim = 0;
  std::array<int, 4> base{};
  std::array<int, 4> fiber{};

  [[nodiscard]] bool is_base(int pos) const {
    for (int j = 0; j < base_dim; ++j)
      if (base[j] == pos) return true;
    return false;
  }
};

inline Layout layout_for(Case c) {
  switch (c) {
  case Case::g2_assoc: return {7, 3, 4, {0, 1, 2, -1}, {3, 4, 5, 6}};
  case Case::g2_coassoc: return {7, 4, 3, {3, 4, 5, 6}, {0, 1, 2, -1}};
  default: return {8, 4, 4, {0, 1, 2, 3}, {4, 5, 6, 7}};
  }
}

/// True when every term of the 2-form pairs one base axis with one fiber axis.
template <Scalar S> bool is_graph_shaped(const Form<S> &G, const Layout &L) {
  if (G.dim() != L.dim || G.grade() != 2) return false;
  const auto &t = G.table();
  for (int r = 0; r < t.size(); ++r) {
    if (is_zero(G[r])) continue;
    auto p = mask_positions(t.mask(r));
    if (L.is_base(p[0]) == L.is_base(p[1])) return false;
  }
  return true;
}

template <FieldScalar S> struct Domain {
  std::vector<S> min;
  std::vector<S> max;

  [[nodiscard]] bool contains(std::span<const S> x) const {
    if (x.size() != min.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if constexpr (is_exact_v<S>) {
        if (x[i] < min[i] || x[i] > max[i]) return false;
      } else {
        const double slack = Tolerance{}.bound(std::max({1.0, std::abs(min[i]), std::abs(max[i])}));
        if (x[i] < min[i] - slack || x[i] > max[i] + slack) return false;
      }
    }
    return true;
  }

  static Domain unit_box(int n) { return {std::vector<S>(n, S(0)), std::vector<S>(n, S(1))}; }
};

/// A graph section f: B -> T^fiber with a base connection potential A, both
/// polynomial in the base coordinates.
template <FieldScalar S> struct GraphSection {
  Case kind = Case::spin7;
  std::vector<Polynomial<S>> f; // one per fiber axis
  std::vector<Polynomial<S>> A; // one per base axis
  Domain<S> domain;
  int grid = 5;

  [[nodiscard]] Layout layout() const { return layout_for(kind); }

  /// Zero section with zero potential over the unit box.
  static GraphSection zero(Case c) {
    const Layout L = layout_for(c);
    GraphSection s;
    s.kind = c;
    s.f.assign(L.fiber_dim, Polynomial<S>());
    s.A.assign(L.base_dim, Polynomial<S>());
    s.domain = Domain<S>::unit_box(L.base_dim);
    return s;
  }

  /// Throws ContractViolation when sizes, degrees or the domain are invalid.
  void validate() const {
    const Layout L = layout();
    require(static_cast<int>(f.size()) == L.fiber_dim, "section: wrong number of fiber components");
    require(static_cast<int>(A.size()) == L.base_dim, "section: wrong number of potential components");
    for (const auto *group : {&f, &A})
      for (const auto &p : *group) {
        require(p.degree() <= kDegreeCap, "section: polynomial degree exceeds the cap");
        require(p.variables_used() <= L.base_dim, "section: polynomial uses a non-base variable");
      }
    require(static_cast<int>(domain.min.size()) == L.base_dim &&
                static_cast<int>(domain.max.size()) == L.base_dim,
            "section: domain has the wrong dimension");
    for (int i = 0; i < L.base_dim; ++i) require(!(domain.max[i] < domain.min[i]), "section: empty domain");
    require(grid >= 1, "section: grid must be positive");
  }
};

/// Exterior derivative of a form whose coefficients are polynomials in the
/// base coordinates.
template <FieldScalar S>
Form<Polynomial<S>> exterior_derivative(const Layout &L, const Form<Polynomial<S>> &w) {
  using P = Polynomial<S>;
  Form<P> out(L.dim, std::min(w.grade() + 1, L.dim));
  if (w.grade() == L.dim) return out;
  for (int j = 0; j < L.base_dim; ++j) {
    Form<P> dw(L.dim, w.grade());
    for (int r = 0; r < w.size(); ++r) dw[r] = w[r].derivative(j);
    if (dw.is_zero()) continue;
    Form<P> dx(L.dim, 1);
    dx[L.base[j]] = P(1);
    out += wedge(dx, dw);
  }
  return out;
}

template <FieldScalar S> Form<S> evaluate_at(const Form<Polynomial<S>> &w, std::span<const S> x) {
  Form<S> out(w.dim(), w.grade());
  for (int r = 0; r < w.size(); ++r) out[r] = w[r](x);
  return out;
}

/// The Fourier-Mukai connection d + sqrt(-1)(sum A^j dx^j + sum f^a dy^a),
/// stored through the real 1-form sum A^j dx^j + sum f^a dy^a. Curvature
/// forms are likewise real: the curvature is sqrt(-1) times `curvature`.
template <FieldScalar S> struct ConnectionPotential {
  Case kind = Case::spin7;
  Layout layout;
  Domain<S> domain;
  Form<Polynomial<S>> one_form;
  Form<Polynomial<S>> base_part;  // sum A^j dx^j
  Form<Polynomial<S>> fiber_part; // sum f^a dy^a
  Form<Polynomial<S>> curvature_base;  // d(base_part), only dx^i ^ dx^j terms
  Form<Polynomial<S>> curvature_fiber; // d(fiber_part), only dx^i ^ dy^a terms
  std::vector<std::vector<Polynomial<S>>> jacobian; // [fiber a][base j] = df^a/dx^j
};

template <FieldScalar S> ConnectionPotential<S> fm_connection(const GraphSection<S> &section) {
  using P = Polynomial<S>;
  section.validate();
  ConnectionPotential<S> c;
  c.kind = section.kind;
  c.layout = section.layout();
  c.domain = section.domain;
  const Layout &L = c.layout;
  c.base_part = Form<P>(L.dim, 1);
  c.fiber_part = Form<P>(L.dim, 1);
  for (int j = 0; j < L.base_dim; ++j) c.base_part[L.base[j]] = section.A[j];
  for (int a = 0; a < L.fiber_dim; ++a) c.fiber_part[L.fiber[a]] = section.f[a];
  c.one_form = c.base_part + c.fiber_part;
  c.curvature_base = exterior_derivative(L, c.base_part);
  c.curvature_fiber = exterior_derivative(L, c.fiber_part);
  c.jacobian.assign(L.fiber_dim, std::vector<P>(L.base_dim));
  for (int a = 0; a < L.fiber_dim; ++a)
    for (int j = 0; j < L.base_dim; ++j) c.jacobian[a][j] = section.f[a].derivative(j);
  return c;
}

/// dF for the full curvature, computed symbolically; zero for every section.
template <FieldScalar S> Form<Polynomial<S>> curvature_differential(const ConnectionPotential<S> &c) {
  return exterior_derivative(c.layout, c.curvature_base + c.curvature_fiber);
}

/// Pointwise curvature data. All forms are real: the curvature of the
/// connection is sqrt(-1) F.
template <FieldScalar S> struct CurvatureSample {
  Case kind = Case::spin7;
  std::vector<S> point;
  Form<S> F_B;
  Form<S> F_S;
  Form<S> F;
  std::vector<std::vector<S>> jacobian; // [fiber a][base j]
  // Spin(7) only: F_S = e^0 ^ F1 + F2, with F1 and F2 forms on R^7.
  std::optional<Form<S>> F1;
  std::optional<Form<S>> F2;
};

template <FieldScalar S>
CurvatureSample<S> curvature_at(const ConnectionPotential<S> &c, std::span<const S> x) {
  if (!c.domain.contains(x)) throw GeometryError("curvature_at: point outside the domain");
  CurvatureSample<S> s;
  s.kind = c.kind;
  s.point.assign(x.begin(), x.end());
  s.F_B = evaluate_at(c.curvature_base, x);
  s.F_S = evaluate_at(c.curvature_fiber, x);
  s.F = s.F_B + s.F_S;
  s.jacobian.assign(c.layout.fiber_dim, std::vector<S>(c.layout.base_dim));
  for (int a = 0; a < c.layout.fiber_dim; ++a)
    for (int j = 0; j < c.layout.base_dim; ++j) s.jacobian[a][j] = c.jacobian[a][j](x);
  if (c.kind == Case::spin7) {
    auto [f1, f2] = split_e0(s.F_S);
    s.F1 = std::move(f1);
    s.F2 = std::move(f2);
  }
  return s;
}

template <FieldScalar S>
CurvatureSample<S> curvature_at(const ConnectionPotential<S> &c, std::initializer_list<S> x) {
  std::vector<S> v(x);
  return curvature_at(c, std::span<const S>(v));
}

/// Tangent frame of the graph: v_j = e_{base j} + sum_a (df^a/dx^j) e_{fiber a}.
template <FieldScalar S> std::vector<Vector<S>> tangent_frame(const Layout &L, const CurvatureSample<S> &s) {
  std::vector<Vector<S>> v;
  for (int j = 0; j < L.base_dim; ++j) {
    Vector<S> u = Vector<S>(L.dim);
    u[L.base[j]] = S(1);
    for (int a = 0; a < L.fiber_dim; ++a) u[L.fiber[a]] = s.jacobian[a][j];
    v.push_back(std::move(u));
  }
  return v;
}

/// dDT residuals, as real forms. For G2: `first` is the sqrt(-1)-coefficient
/// of F^3/6 + F ^ *phi, i.e. *phi ^ G - G^3/6, and `second` is
/// phi ^ *F^2 = -phi ^ *G^2. For Spin(7): `first` is the sqrt(-1)-coefficient
/// of pi^2_7(F + *F^3/6), i.e. pi^2_7(G - *G^3/6), and `second` is
/// pi^4_7(F^2) = -pi^4_7(G^2). Here F = sqrt(-1) G.
template <FieldScalar S> struct DdtResidual {
  Form<S> first;
  Form<S> second;
};

template <FieldScalar S> DdtResidual<S> ddt_residual_g2(const G2Data<S> &g2, const Form<S> &G) {
  require(G.dim() == 7 && G.grade() == 2, "ddt_residual_g2: expected a 2-form on R^7");
  const Form<S> G2 = wedge(G, G);
  return {wedge(g2.star_phi, G) - wedge(G2, G) / S(6), -wedge(g2.phi, hodge(G2))};
}

template <FieldScalar S> DdtResidual<S> ddt_residual_spin7(const Spin7Data<S> &sd, const Form<S> &G) {
  require(G.dim() == 8 && G.grade() == 2, "ddt_residual_spin7: expected a 2-form on R^8");
  const Form<S> G2 = wedge(G, G);
  return {project7(sd, 2, G - hodge(wedge(G2, G)) / S(6)), -project7(sd, 4, G2)};
}

/// Geometry-side residual of a graph, computed from its tangent frame only.
template <FieldScalar S> struct CalibrationResidual {
  std::vector<Vector<S>> frame;
  Form<S> form;          // associative residual (1-form) or tau (4-form)
  std::vector<S> values; // coassociative: phi on the four 3-subsets
  S norm_sq = S(0);
};

template <FieldScalar S>
CalibrationResidual<S> graph_calibration_residual(const Spin7Data<S> &sd, const ConnectionPotential<S> &c,
                                                  std::span<const S> x) {
  const auto sample = curvature_at(c, x);
  CalibrationResidual<S> r;
  r.frame = tangent_frame(c.layout, sample);
  switch (c.kind) {
  case Case::g2_assoc:
    r.form = associative_residual(sd.g2, r.frame[0], r.frame[1], r.frame[2]);
    r.norm_sq = norm_squared(r.form);
    break;
  case Case::g2_coassoc: {
    const auto v = coassociative_residual(sd.g2, {r.frame[0], r.frame[1], r.frame[2], r.frame[3]});
    r.values.assign(v.begin(), v.end());
    for (const auto &y : v) r.norm_sq = r.norm_sq + y * y;
    break;
  }
  case Case::spin7:
    r.form = tau(sd, {r.frame[0], r.frame[1], r.frame[2], r.frame[3]});
    r.norm_sq = norm_squared(r.form);
    break;
  }
  return r;
}

/// The J1/J2 decomposition of the Cayley condition for a graph over R^4 with
/// F_S = e^0 ^ F1 + F2 (F1 on dy^4..dy^7, F2 on dx^i ^ dy^a, i = 1..3).
template <FieldScalar S> struct JSplit {
  Form<S> I1, I2, I3;
  Form<S> J1, J2;
  S phi_v;         // phi(v1, v2, v3) from the frame
  S phi_v_closed;  // 1 - (1/2) *(phi ^ F2^2)
  Form<S> frame_sum;        // sum_k phi(F1#, v_{k+1}, v_{k+2}) dx^k
  Form<S> frame_sum_closed; // -*(F1 ^ F2 ^ phi)
};

namespace detail {

template <FieldScalar S> void require_j_shape(const Form<S> &F1, const Form<S> &F2) {
  require(F1.dim() == 7 && F1.grade() == 1 && F2.dim() == 7 && F2.grade() == 2,
          "j_split: expected a 1-form and a 2-form on R^7");
  for (int p = 0; p < 3; ++p) require(is_zero(F1[p]), "j_split: F1 must be a combination of dy^a");
  require(is_graph_shaped(F2, layout_for(Case::g2_assoc)), "j_split: F2 must be a combination of dx^i ^ dy^a");
}

template <FieldScalar S> std::array<Vector<S>, 3> j_frame(const Form<S> &F2) {
  std::array<Vector<S>, 3> v;
  for (int k = 0; k < 3; ++k) {
    v[k] = sharp(interior_basis(k, F2));
    v[k][k] = v[k][k] + S(1);
  }
  return v;
}

} // namespace detail

/// Computes I1..I3, then J1 and J2 by the simplified closed form. The two
/// frame identities used in the simplification are evaluated both ways and
/// returned for comparison.
template <FieldScalar S> JSplit<S> j_split(const G2Data<S> &g2, const Form<S> &F1, const Form<S> &F2) {
  detail::require_j_shape(F1, F2);
  JSplit<S> j;
  const Form<S> F2sq = wedge(F2, F2);
  j.I1 = -wedge(g2.star_phi, F2);
  j.I2 = wedge(g2.phi, hodge(F2sq)) / S(2);
  j.I3 = wedge(F2sq, F2) / S(6);

  const auto v = detail::j_frame(F2);
  j.phi_v = evaluate(g2.phi, {v[0], v[1], v[2]});
  j.phi_v_closed = S(1) - top_coefficient(wedge(g2.phi, F2sq)) / S(2);
  const Vector<S> f1 = sharp(F1);
  j.frame_sum = Form<S>(7, 1);
  for (int k = 0; k < 3; ++k) j.frame_sum[k] = evaluate(g2.phi, {f1, v[(k + 1) % 3], v[(k + 2) % 3]});
  const Form<S> F1F2phi = wedge({F1, F2, g2.phi});
  j.frame_sum_closed = -hodge(F1F2phi);

  j.J1 = j.I1 + j.I3 - j.phi_v_closed * hodge(F1) + wedge(hodge(F1F2phi), hodge(F2));
  j.J2 = j.I2 - F1F2phi;
  return j;
}

/// J1 and J2 straight from their definition in terms of the frame
/// v_k = e_k + (i(e_k)F2)#, without the simplification.
template <FieldScalar S>
std::pair<Form<S>, Form<S>> j_split_definition(const G2Data<S> &g2, const Form<S> &F1, const Form<S> &F2) {
  detail::require_j_shape(F1, F2);
  const Form<S> F2sq = wedge(F2, F2);
  const Form<S> I1 = -wedge(g2.star_phi, F2);
  const Form<S> I2 = wedge(g2.phi, hodge(F2sq)) / S(2);
  const Form<S> I3 = wedge(F2sq, F2) / S(6);
  const auto v = detail::j_frame(F2);
  const Vector<S> f1 = sharp(F1);
  Form<S> J1 = I1 + I3 - evaluate(g2.phi, {v[0], v[1], v[2]}) * hodge(F1);
  Form<S> J2 = I2;
  for (int k = 0; k < 3; ++k) {
    const S c = evaluate(g2.phi, {f1, v[(k + 1) % 3], v[(k + 2) % 3]});
    J1 += c * hodge(interior_basis(k, F2));
    J2 += c * hodge(Form<S>::basis(7, {k + 1}));
  }
  return {J1, J2};
}

template <FieldScalar S> struct EqualitySides {
  S lhs;
  S rhs;
};

/// (1 - <G^2, *phi>/2)^2 + |*phi ^ G - G^3/6|^2 + |phi ^ *G^2|^2/4 against
/// det(id + G#), for graph-shaped G on R^7.
template <FieldScalar S> EqualitySides<S> associator_equality(const G2Data<S> &g2, const Form<S> &G) {
  require(is_graph_shaped(G, layout_for(Case::g2_assoc)), "associator_equality: F is not graph-shaped");
  const Form<S> G2 = wedge(G, G);
  const S a = S(1) - inner(G2, g2.star_phi) / S(2);
  const auto r = ddt_residual_g2(g2, G);
  return {a * a + norm_squared(r.first) + norm_squared(r.second) / S(4), det_id_plus_skew(sharp_two_form(G))};
}

/// (1 - <G^2, Phi>/2 + *G^4/24)^2 + 4|pi^2_7(G - *G^3/6)|^2 + 2|pi^4_7(G^2)|^2
/// against det(id + G#), for graph-shaped G on R^8.
template <FieldScalar S> EqualitySides<S> cayley_equality(const Spin7Data<S> &sd, const Form<S> &G) {
  require(is_graph_shaped(G, layout_for(Case::spin7)), "cayley_equality: F is not graph-shaped");
  const Form<S> G2 = wedge(G, G);
  const S a = S(1) - inner(G2, sd.Phi) / S(2) + top_coefficient(wedge(G2, G2)) / S(24);
  const auto r = ddt_residual_spin7(sd, G);
  return {a * a + S(4) * norm_squared(r.first) + S(2) * norm_squared(r.second),
          det_id_plus_skew(sharp_two_form(G))};
}

/// Anti-self-duality of the base curvature, read on the graph.
template <FieldScalar S> struct GraphAsd {
  int orientation = 0;       // sign of the calibration on the frame; 0 if undetermined
  AsdVerdict pulled_back;    // ((id + F_S#)^{-1})^* F_B on the tangent frame
  AsdVerdict direct;         // base coefficients of F_B with Gram matrix id + J^T J
};

template <FieldScalar S>
GraphAsd<S> graph_asd(const Spin7Data<S> &sd, const Layout &L, const CurvatureSample<S> &s) {
  require(L.base_dim == 4, "graph_asd: needs a 4-dimensional base");
  const auto frame = tangent_frame(L, s);
  const std::array<Vector<S>, 4> u{frame[0], frame[1], frame[2], frame[3]};
  GraphAsd<S> g;
  g.orientation = calibrated_orientation(L.dim == 8 ? sd.Phi : sd.g2.star_phi, u);
  if (g.orientation == 0) return g;
  const Matrix<S> T = Matrix<S>::identity(L.dim) + sharp_two_form(s.F_S).matrix();
  const Form<S> beta = pullback_inverse(T, s.F_B);
  g.pulled_back = intrinsic_asd(u, beta, g.orientation);
  Matrix<S> A(4), Gram(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      A(i, j) = i == j ? S(0)
                       : evaluate(s.F_B, {Vector<S>::basis(L.dim, L.base[i] + label_base(L.dim)),
                                          Vector<S>::basis(L.dim, L.base[j] + label_base(L.dim))});
      S acc = i == j ? S(1) : S(0);
      for (int a = 0; a < L.fiber_dim; ++a) acc = acc + s.jacobian[a][i] * s.jacobian[a][j];
      Gram(i, j) = acc;
    }
  g.direct = intrinsic_asd_matrices(A, Gram, g.orientation);
  return g;
}

struct SweepOptions {
  bool with_connection = false; // full F (and base-side conditions) instead of F_S
  bool keep_points = false;
  StatusBands bands{};
};

struct SweepPoint {
  std::vector<double> x;
  Status geometry = Status::zero;
  Status connection = Status::zero;
  double calibration = 0;
  double first = 0;
  double second = 0;
  double base_side = 0; // |F_B| (associative) or |(F_B)_+| (4-dimensional base)
  bool singular = false;
};

struct SweepSummary {
  long points = 0;
  long agree = 0;
  long disagree = 0;
  long indeterminate = 0;
  long singular = 0;
  long geometry_zero = 0;
  long connection_zero = 0;
  long implication_violations = 0; // first residual zero but second nonzero (G2 cases)
  long asd_route_mismatch = 0;
  long orientation_undetermined = 0;
  long embedding_mismatch = 0; // coassociative case: R^7 pair vs Spin(7) pair of the embedded form
  double sup_calibration = 0;
  double sup_first = 0;
  double sup_second = 0;
  double sup_base_side = 0;
  std::vector<SweepPoint> detail;
  ResidualReport report;

  [[nodiscard]] bool all_agree() const {
    return disagree == 0 && indeterminate == 0 && singular == 0 && embedding_mismatch == 0;
  }
};

/// Grid points min + (max - min) i/(grid - 1) on every base axis, in
/// lexicographic order (last axis fastest).
template <FieldScalar S> std::vector<std::vector<S>> grid_points(const Domain<S> &d, int grid) {
  const int n = static_cast<int>(d.min.size());
  std::vector<std::vector<S>> pts;
  std::vector<int> idx(n, 0);
  while (true) {
    std::vector<S> p(n);
    for (int i = 0; i < n; ++i)
      p[i] = grid == 1 ? S(d.min[i]) : S(d.min[i] + (d.max[i] - d.min[i]) * S(idx[i]) / S(grid - 1));
    pts.push_back(std::move(p));
    int k = n - 1;
    while (k >= 0 && ++idx[k] == grid) idx[k--] = 0;
    if (k < 0) break;
  }
  return pts;
}

namespace detail {

inline Status combine(Status a, Status b) {
  if (a == Status::nonzero || b == Status::nonzero) return Status::nonzero;
  if (a == Status::indeterminate || b == Status::indeterminate) return Status::indeterminate;
  return Status::zero;
}

template <FieldScalar S> double to_d(const S &v) { return ScalarTraits<S>::to_double(v); }

inline const char *calibration_name(Case c) {
  switch (c) {
  case Case::g2_assoc: return "associative graph";
  case Case::g2_coassoc: return "coassociative graph";
  default: return "Cayley graph";
  }
}

} // namespace detail

/// Evaluates geometry-side and connection-side residuals at every grid point
/// and compares their zero/nonzero status.
///
/// Geometry side: the calibration residual of the tangent frame; with
/// `with_connection`, additionally F_B = 0 (associative case) or
/// anti-self-duality of F_B on the graph (4-dimensional base). Connection
/// side: the dDT pair on F_S, or on F = F_B + F_S with `with_connection`.
/// Coassociative sections are also checked through R^7 -> R^8, where the
/// Spin(7) pair must agree as well.
template <FieldScalar S>
SweepSummary equivalence_sweep(const Spin7Data<S> &sd, const GraphSection<S> &section, SweepOptions opt = {}) {
  const auto pot = fm_connection(section);
  const Layout &L = pot.layout;
  SweepSummary out;
  const bool g2 = L.dim == 7;

  for (const auto &x : grid_points(section.domain, section.grid)) {
    SweepPoint pt;
    for (const auto &c : x) pt.x.push_back(detail::to_d(c));
    ++out.points;
    const auto s = curvature_at(pot, std::span<const S>(x));
    double scale = 1;
    for (const auto &row : s.jacobian)
      for (const auto &v : row) scale = std::max(scale, ScalarTraits<S>::magnitude(v));
    scale = std::max(scale, s.F_B.max_abs());
    scale = std::pow(scale, 4);

    const auto cal = graph_calibration_residual(sd, pot, std::span<const S>(x));
    pt.calibration = std::sqrt(detail::to_d(cal.norm_sq));
    Status geometry = classify_norm_sq(cal.norm_sq, scale, opt.bands);

    const Form<S> &G = opt.with_connection ? s.F : s.F_S;
    Status first_status, second_status;
    if (g2) {
      const auto r = ddt_residual_g2(sd.g2, G);
      const S n1 = norm_squared(r.first), n2 = norm_squared(r.second);
      pt.first = std::sqrt(detail::to_d(n1));
      pt.second = std::sqrt(detail::to_d(n2));
      first_status = classify_norm_sq(n1, scale, opt.bands);
      second_status = classify_norm_sq(n2, scale, opt.bands);
      if (first_status == Status::zero && second_status == Status::nonzero) ++out.implication_violations;
    } else {
      const auto r = ddt_residual_spin7(sd, G);
      const S n1 = norm_squared(r.first), n2 = norm_squared(r.second);
      pt.first = std::sqrt(detail::to_d(n1));
      pt.second = std::sqrt(detail::to_d(n2));
      first_status = classify_norm_sq(n1, scale, opt.bands);
      second_status = classify_norm_sq(n2, scale, opt.bands);
    }
    Status connection = detail::combine(first_status, second_status);

    if (L.dim == 7 && L.base_dim == 4) {
      // the same graph viewed in R^8 with no e^0 component
      const auto r8 = ddt_residual_spin7(sd, embed_in_8(G));
      const Status s8 = detail::combine(classify_norm_sq(norm_squared(r8.first), scale, opt.bands),
                                        classify_norm_sq(norm_squared(r8.second), scale, opt.bands));
      if (s8 != connection) ++out.embedding_mismatch;
    }

    if (opt.with_connection) {
      if (L.base_dim == 3) {
        const S nb = norm_squared(s.F_B);
        pt.base_side = std::sqrt(detail::to_d(nb));
        geometry = detail::combine(geometry, classify_norm_sq(nb, scale, opt.bands));
      } else {
        try {
          const auto asd = graph_asd(sd, L, s);
          if (asd.orientation == 0) {
            ++out.orientation_undetermined;
            if (geometry == Status::zero) geometry = Status::indeterminate;
          } else {
            pt.base_side = asd.pulled_back.self_dual_norm;
            Status a;
            if constexpr (is_exact_v<S>) {
              a = asd.pulled_back.anti_self_dual ? Status::zero : Status::nonzero;
              if (asd.pulled_back.anti_self_dual != asd.direct.anti_self_dual) ++out.asd_route_mismatch;
            } else {
              a = classify_norm(asd.pulled_back.self_dual_norm, scale, opt.bands);
              if (a != classify_norm(asd.direct.self_dual_norm, scale, opt.bands)) ++out.asd_route_mismatch;
            }
            geometry = detail::combine(geometry, a);
          }
        } catch (const GeometryError &) {
          pt.singular = true;
        }
      }
    }

    pt.geometry = geometry;
    pt.connection = connection;
    if (pt.singular) {
      ++out.singular;
    } else if (geometry == Status::indeterminate || connection == Status::indeterminate) {
      ++out.indeterminate;
    } else if (geometry == connection) {
      ++out.agree;
    } else {
      ++out.disagree;
    }
    if (geometry == Status::zero) ++out.geometry_zero;
    if (connection == Status::zero) ++out.connection_zero;
    out.sup_calibration = std::max(out.sup_calibration, pt.calibration);
    out.sup_first = std::max(out.sup_first, pt.first);
    out.sup_second = std::max(out.sup_second, pt.second);
    out.sup_base_side = std::max(out.sup_base_side, pt.base_side);
    if (opt.keep_points) out.detail.push_back(std::move(pt));
  }

  auto &rep = out.report;
  rep.title = std::string("equivalence sweep: ") + to_string(section.kind) +
              (opt.with_connection ? " with base connection" : "");
  const char *cal = detail::calibration_name(section.kind);
  rep.add({"sup calibration residual", cal,
           g2 ? (L.base_dim == 3 ? "*phi(v1, v2, v3, .) = 0" : "phi|_S = 0") : "tau(v0, v1, v2, v3) = 0",
           out.sup_calibration, 0, true, "geometry side"});
  rep.add({"sup first dDT residual", "dDT equations",
           g2 ? "F^3/6 + F ^ *phi = 0" : "pi^2_7(F + *F^3/6) = 0", out.sup_first, 0, true, "connection side"});
  rep.add({"sup second dDT residual", "dDT equations", g2 ? "phi ^ *F^2 = 0" : "pi^4_7(F^2) = 0", out.sup_second,
           0, true, "connection side"});
  if (opt.with_connection)
    rep.add({"sup base-side residual", L.base_dim == 3 ? "flat base connection" : "anti-self-dual base curvature",
             L.base_dim == 3 ? "F_B = 0" : "(F_B restricted to S)_+ = 0", out.sup_base_side, 0, true,
             "geometry side"});
  rep.add({"status disagreements", "geometry/connection equivalence",
           "calibrated (and base condition) <=> dDT residuals vanish", static_cast<double>(out.disagree), 0,
           out.disagree == 0, std::to_string(out.agree) + " of " + std::to_string(out.points) + " points agree"});
  rep.add({"indeterminate points", "zero/nonzero banding", "1e-9 < |r| <= 1e-6 relative",
           static_cast<double>(out.indeterminate), 0, out.indeterminate == 0, ""});
  rep.add({"singular points", "invertibility of id + F_S#", "det(id + F_S#) >= 1", static_cast<double>(out.singular),
           0, out.singular == 0, ""});
  if (g2)
    rep.add({"first-implies-second violations", "first dDT equation implies the second", "r1 = 0 => r2 = 0",
             static_cast<double>(out.implication_violations), 0, out.implication_violations == 0, ""});
  if (g2 && L.base_dim == 4)
    rep.add({"embedding mismatches", "coassociative graph viewed in R^8",
             "status of the R^7 pair = status of (pi^2_7, pi^4_7) pair of the embedded form",
             static_cast<double>(out.embedding_mismatch), 0, out.embedding_mismatch == 0, ""});
  if (opt.with_connection && L.base_dim == 4)
    rep.add({"ASD route mismatches", "pulled-back vs direct ASD test", "((id + F_S#)^-1)^* F_B on TS",
             static_cast<double>(out.asd_route_mismatch), 0, out.asd_route_mismatch == 0,
             std::to_string(out.orientation_undetermined) + " points with undetermined orientation"});
  return out;
}

} // namespace spinforms
