#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace spinforms;
using Q = Rational;
using P = Polynomial<Q>;

namespace {

const Spin7Data<Q> &sd() { return Spin7Data<Q>::standard(); }

P var(int i) { return P::variable(i); }

GraphSection<Q> holomorphic() {
  // z^3 = z^1 z^2 with z1 = x0 + i x1, z2 = x2 + i x3, z3 = y4 + i y5
  auto s = GraphSection<Q>::zero(Case::spin7);
  s.f[0] = var(0) * var(2) - var(1) * var(3);
  s.f[1] = var(0) * var(3) + var(1) * var(2);
  s.domain = {{Q(-1), Q(-1), Q(-1), Q(-1)}, {Q(1), Q(1), Q(1), Q(1)}};
  return s;
}

TEST(FmTransform, CurvatureIsClosed) {
  auto s = GraphSection<Q>::zero(Case::spin7);
  s.f[0] = var(0) * var(0) * var(3) - P(Q(2, 3)) * var(1);
  s.f[2] = var(2) * var(1) * var(1);
  s.A[1] = var(0) * var(3);
  s.A[3] = var(2) * var(2) * var(2);
  const auto pot = fm_connection(s);
  EXPECT_TRUE(curvature_differential(pot).is_zero());
  EXPECT_FALSE(pot.curvature_base.is_zero());
}

TEST(FmTransform, CurvatureOfALinearSection) {
  // f^4 = 2 x0 - x3: F_S = 2 dx^0 ^ dy^4 - dx^3 ^ dy^4
  auto s = GraphSection<Q>::zero(Case::spin7);
  s.f[0] = P(2) * var(0) - var(3);
  const auto pot = fm_connection(s);
  const auto sample = curvature_at(pot, {Q(0), Q(1, 2), Q(1, 3), Q(1)});
  EXPECT_EQ(sample.F_S, Form<Q>::basis(8, {0, 4}, Q(2)) - Form<Q>::basis(8, {3, 4}));
  EXPECT_TRUE(sample.F_B.is_zero());
  EXPECT_EQ(*sample.F1, Form<Q>::basis(7, {4}, Q(2)));
  EXPECT_EQ(*sample.F2, -Form<Q>::basis(7, {3, 4}));
  const auto frame = tangent_frame(pot.layout, sample);
  EXPECT_EQ(frame[0], Vector<Q>::basis(8, 0) + Q(2) * Vector<Q>::basis(8, 4));
  EXPECT_EQ(frame[3], Vector<Q>::basis(8, 3) - Vector<Q>::basis(8, 4));
}

TEST(FmTransform, PointsOutsideTheDomainAreRejected) {
  const auto pot = fm_connection(GraphSection<Q>::zero(Case::spin7));
  EXPECT_THROW(curvature_at(pot, {Q(2), Q(0), Q(0), Q(0)}), GeometryError);
  EXPECT_THROW(curvature_at(pot, {Q(0), Q(0), Q(0)}), GeometryError);
}

TEST(FmTransform, SectionValidation) {
  auto s = GraphSection<Q>::zero(Case::g2_assoc);
  s.f[0] = var(3); // x^4 is not a base variable of an associative graph
  EXPECT_THROW(s.validate(), ContractViolation);
  auto t = GraphSection<Q>::zero(Case::spin7);
  P p = var(0);
  for (int i = 0; i < kDegreeCap; ++i) p = p * var(1);
  t.f[1] = p;
  EXPECT_THROW(t.validate(), ContractViolation);
  auto u = GraphSection<Q>::zero(Case::spin7);
  u.domain.max[2] = Q(-1);
  EXPECT_THROW(u.validate(), ContractViolation);
}

TEST(FmTransform, GridPoints) {
  const Domain<Q> d{{Q(0), Q(-1)}, {Q(1), Q(1)}};
  const auto pts = grid_points(d, 3);
  ASSERT_EQ(pts.size(), 9u);
  EXPECT_EQ(pts[1], (std::vector<Q>{Q(0), Q(0)}));
  EXPECT_EQ(pts[8], (std::vector<Q>{Q(1), Q(1)}));
  EXPECT_EQ(grid_points(d, 1).size(), 1u);
}

TEST(FmTransform, ConstantSectionIsFlatAndCayley) {
  auto s = GraphSection<Q>::zero(Case::spin7);
  for (int a = 0; a < 4; ++a) s.f[a] = P(Q(a + 1, 7));
  const auto sum = equivalence_sweep(sd(), s);
  EXPECT_EQ(sum.points, 625);
  EXPECT_EQ(sum.agree, 625);
  EXPECT_EQ(sum.geometry_zero, 625);
  EXPECT_EQ(sum.connection_zero, 625);
  EXPECT_TRUE(sum.report.passed());
}

TEST(FmTransform, HolomorphicGraphIsCayleyAndDdt) {
  const auto s = holomorphic();
  const auto pot = fm_connection(s);
  for (const auto &x : grid_points(s.domain, 3)) {
    const auto cal = graph_calibration_residual(sd(), pot, std::span<const Q>(x));
    EXPECT_TRUE(cal.form.is_zero());
    // brute-force Phi on the frame equals the volume of the frame
    const std::array<Vector<Q>, 4> u{cal.frame[0], cal.frame[1], cal.frame[2], cal.frame[3]};
    const Q phi = oracle::evaluate(sd().Phi, {u[0], u[1], u[2], u[3]});
    EXPECT_EQ(phi * phi, wedge_norm_squared(std::span<const Vector<Q>>(cal.frame)));
  }
  const auto sum = equivalence_sweep(sd(), s);
  EXPECT_EQ(sum.connection_zero, sum.points);
  EXPECT_EQ(sum.agree, sum.points);
}

TEST(FmTransform, GenericLinearSectionFailsBothSides) {
  Sampler<Q> rng(301);
  auto s = GraphSection<Q>::zero(Case::spin7);
  for (int a = 0; a < 4; ++a)
    for (int j = 0; j < 4; ++j) s.f[a] += P(rng.scalar()) * var(j);
  s.grid = 2;
  const auto sum = equivalence_sweep(sd(), s);
  EXPECT_EQ(sum.geometry_zero, 0);
  EXPECT_EQ(sum.connection_zero, 0);
  EXPECT_TRUE(sum.all_agree());
}

TEST(FmTransform, JSplitClosedFormMatchesDefinition) {
  Sampler<Q> rng(303);
  for (int trial = 0; trial < 10; ++trial) {
    const auto [F1, F2] = identities::random_f1_f2(rng);
    const auto j = j_split(sd().g2, F1, F2);
    const auto def = j_split_definition(sd().g2, F1, F2);
    EXPECT_EQ(j.J1, def.first);
    EXPECT_EQ(j.J2, def.second);
    EXPECT_EQ(j.phi_v, j.phi_v_closed);
    EXPECT_EQ(j.frame_sum, j.frame_sum_closed);
  }
  EXPECT_THROW(j_split(sd().g2, Form<Q>::basis(7, {1}), Form<Q>(7, 2)), ContractViolation);
}

TEST(FmTransform, EqualitiesAgainstEigenDeterminant) {
  Sampler<double> rng(305);
  const auto &d = Spin7Data<double>::standard();
  for (int trial = 0; trial < 100; ++trial) {
    const auto G8 = random_graph_two_form(rng, Case::spin7);
    const auto c = cayley_equality(d, G8);
    const double ref = oracle::det_id_plus_skew_eigen(G8);
    EXPECT_LT(std::abs(c.lhs - ref) / std::max(1.0, ref), 1e-9);
    const auto G7 = random_graph_two_form(rng, Case::g2_assoc);
    const auto a = associator_equality(d.g2, G7);
    const double ref7 = oracle::det_id_plus_skew_eigen(G7);
    EXPECT_LT(std::abs(a.lhs - ref7) / std::max(1.0, ref7), 1e-9);
  }
  EXPECT_THROW(cayley_equality(d, Form<double>::basis(8, {0, 1})), ContractViolation);
}

TEST(FmTransform, EqualitiesExact) {
  Sampler<Q> rng(307);
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = cayley_equality(sd(), random_graph_two_form(rng, Case::spin7));
    EXPECT_EQ(c.lhs, c.rhs);
    const auto a = associator_equality(sd().g2, random_graph_two_form(rng, Case::g2_assoc));
    EXPECT_EQ(a.lhs, a.rhs);
  }
}

TEST(FmTransform, GraphAsdOnAFlatCayleyGraph) {
  auto s = GraphSection<Q>::zero(Case::spin7);
  s.f[1] = P(Q(2, 5));
  s.A[1] = P(3) * var(0);  // F_B = 3 dx^01
  s.A[3] = P(-3) * var(2); //     - 3 dx^23
  auto pot = fm_connection(s);
  const auto sample = curvature_at(pot, {Q(0), Q(0), Q(0), Q(0)});
  EXPECT_EQ(sample.F_B, Form<Q>::basis(8, {0, 1}, Q(3)) - Form<Q>::basis(8, {2, 3}, Q(3)));
  const auto g = graph_asd(sd(), pot.layout, sample);
  EXPECT_EQ(g.orientation, 1);
  EXPECT_TRUE(g.pulled_back.anti_self_dual);
  EXPECT_TRUE(g.direct.anti_self_dual);

  s.A[3] = P(3) * var(2); // F_B = 3 tau_1
  pot = fm_connection(s);
  const auto g2 = graph_asd(sd(), pot.layout, curvature_at(pot, {Q(0), Q(0), Q(0), Q(0)}));
  EXPECT_FALSE(g2.pulled_back.anti_self_dual);
  EXPECT_FALSE(g2.direct.anti_self_dual);
}

TEST(FmTransform, WithConnectionSweepOnCalibratedGraphs) {
  Sampler<Q> rng(311);
  auto cay = GraphSection<Q>::zero(Case::spin7);
  cay.f[3] = P(1);
  cay.A[1] = var(0);
  cay.A[3] = -var(2);
  cay.grid = 2;
  auto sum = equivalence_sweep(sd(), cay, {.with_connection = true});
  EXPECT_EQ(sum.geometry_zero, sum.points);
  EXPECT_EQ(sum.connection_zero, sum.points);
  EXPECT_EQ(sum.asd_route_mismatch, 0);

  // on a tilted Cayley graph the two ASD routes still agree
  auto tilted = complex_linear_cayley(random_complex(rng), random_complex(rng), random_complex(rng), random_complex(rng));
  tilted.A[1] = var(0);
  tilted.A[2] = P(2) * var(3);
  tilted.grid = 2;
  sum = equivalence_sweep(sd(), tilted, {.with_connection = true});
  EXPECT_EQ(sum.asd_route_mismatch, 0);
  EXPECT_TRUE(sum.all_agree());

  auto co = complex_linear_coassociative(rng.scalar(), random_complex(rng), random_complex(rng));
  co.grid = 2;
  sum = equivalence_sweep(sd(), co);
  EXPECT_EQ(sum.connection_zero, sum.points);
  EXPECT_TRUE(sum.report.passed());

  auto as = complex_linear_associative(random_complex(rng), random_complex(rng), {Q(1), Q(0), Q(2), Q(-1)});
  as.grid = 2;
  sum = equivalence_sweep(sd(), as, {.with_connection = true});
  EXPECT_EQ(sum.geometry_zero, sum.points);
  EXPECT_TRUE(sum.report.passed());
  as.A[0] = var(1); // a nonzero F_B breaks the base condition and the dDT pair together
  sum = equivalence_sweep(sd(), as, {.with_connection = true});
  EXPECT_EQ(sum.geometry_zero, 0);
  EXPECT_EQ(sum.connection_zero, 0);
  EXPECT_TRUE(sum.all_agree());
}

TEST(FmTransform, FloatSweepBandsOnTheHolomorphicGraph) {
  auto s = GraphSection<double>::zero(Case::spin7);
  using D = Polynomial<double>;
  s.f[0] = D::variable(0) * D::variable(2) - D::variable(1) * D::variable(3);
  s.f[1] = D::variable(0) * D::variable(3) + D::variable(1) * D::variable(2);
  s.domain = {{-1, -1, -1, -1}, {1, 1, 1, 1}};
  const auto sum = equivalence_sweep(Spin7Data<double>::standard(), s);
  EXPECT_EQ(sum.indeterminate, 0);
  EXPECT_EQ(sum.agree, sum.points);
  EXPECT_LT(sum.sup_first, 1e-12);
}

} // namespace
