// Acceptance run: one PASS/FAIL line per criterion, each timed against its
// budget. Reference values come from the brute-force routines in oracles.hpp
// and from Eigen, not from the library paths under test.

#include <Eigen/Dense>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "oracles.hpp"

using namespace spinforms;
using Q = Rational;
using P = Polynomial<Q>;

namespace {

// pinned tolerances
constexpr double kRelative = 1e-9;  // float identity residuals, relative
constexpr double kFirstTol = 1e-9;  // counterexample: first residual below
constexpr double kSecondTol = 1e-6; // counterexample: second residual above

struct Outcome {
  bool ok = true;
  std::string detail;
};

bool run(int n, const char *title, double limit, bool gating, const std::function<Outcome()> &body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit;
  const bool pass = o.ok && in_time;
  std::printf("criterion %2d: %s %s (%.2f s of %.0f s)%s%s%s\n", n, pass ? "PASS" : "FAIL", title, secs, limit,
              gating ? "" : " [non-gating]", o.detail.empty() ? "" : " - ", o.detail.c_str());
  if (!in_time) std::printf("              over the time budget\n");
  std::fflush(stdout);
  return pass || !gating;
}

/// i(u)a from the coefficients: (i(u)a)_J = sum_i u_i a_{iJ}, with the sign
/// of the permutation sorting (i, J).
Form<Q> oracle_interior(const Vector<Q> &u, const Form<Q> &a) {
  const int n = a.dim(), k = a.grade();
  Form<Q> out(n, k - 1);
  for (const auto &J : oracle::subsets(n, k - 1)) {
    Q c(0);
    for (int i = 0; i < n; ++i) {
      if (std::find(J.begin(), J.end(), i) != J.end() || u[i] == 0) continue;
      std::vector<int> perm{i};
      perm.insert(perm.end(), J.begin(), J.end());
      std::vector<int> sorted = perm;
      std::sort(sorted.begin(), sorted.end());
      c += u[i] * Q(oracle::inversion_sign(perm)) * oracle::coef(a, sorted);
    }
    std::vector<int> labels;
    for (int p : J) labels.push_back(p + label_base(n));
    out += c * Form<Q>::basis(n, labels);
  }
  return out;
}

Form<Q> oracle_flat(const Vector<Q> &u) {
  Form<Q> out(u.dim(), 1);
  for (int i = 0; i < u.dim(); ++i) out += u[i] * Form<Q>::basis(u.dim(), {i + label_base(u.dim())});
  return out;
}

// ---- 1 ----
Outcome g2_contractions() {
  const auto &g = G2Data<Q>::standard();
  Sampler<Q> rng(1001);
  int bad = 0, cases = 0;
  for (int k = 0; k < 107; ++k) {
    const auto u = k < 7 ? Vector<Q>::basis(7, k + 1) : rng.vector(7);
    const Form<Q> star_u = oracle::hodge(oracle_flat(u));
    const Form<Q> iphi = oracle_interior(u, g.phi);
    const Form<Q> istar = oracle_interior(u, g.star_phi);
    ++cases;
    if (wedge(g.phi, istar) != Q(-4) * star_u) ++bad;
    if (wedge(g.star_phi, iphi) != Q(3) * star_u) ++bad;
    if (wedge(g.phi, iphi) != Q(2) * oracle::hodge(iphi)) ++bad;
    if (wedge(g.phi, iphi) != Q(2) * wedge(oracle_flat(u), g.star_phi)) ++bad;
    // the library residuals agree
    const auto r = g2_identities(g, u);
    if (!r.wedge_star.is_zero() || !r.star_wedge.is_zero() || !r.wedge_self.is_zero()) ++bad;
  }
  return {bad == 0, std::to_string(cases) + " vectors, " + std::to_string(bad) + " failures"};
}

// ---- 2 ----
Outcome constants() {
  const auto &sd = Spin7Data<Q>::standard();
  Q phi_sq(0);
  for (const auto &I : oracle::subsets(7, 3)) {
    const Q c = oracle::coef(sd.g2.phi, I);
    phi_sq += c * c;
  }
  bool ok = phi_sq == 7 && oracle::hodge(sd.Phi) == sd.Phi;
  int bad = 0;
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b) {
      const Q d = a == b ? Q(1) : Q(0);
      // brute-force coefficient sums for the inner products
      auto ip = [](const Form<Q> &x, const Form<Q> &y) {
        Q s(0);
        for (const auto &I : oracle::subsets(8, x.grade())) s += oracle::coef(x, I) * oracle::coef(y, I);
        return s;
      };
      if (ip(sd.lambda2[a], sd.lambda2[b]) != d) ++bad;
      if (ip(sd.lambda4_scaled[a], sd.lambda4_scaled[b]) != Q(8) * d) ++bad; // |sqrt8 lambda^4|^2 = 8
      if (ip(sd.lambda6[a], sd.lambda6[b]) != d) ++bad;
    }
  ok = ok && bad == 0;
  return {ok, "<phi,phi> = " + phi_sq.get_str() + ", " + std::to_string(bad) + " lambda inner-product failures"};
}

// ---- 3 ----
Outcome projections() {
  const auto &sd = Spin7Data<Q>::standard();
  int bad = 0;
  std::array<std::vector<Form<Q>>, 3> images;
  for (int slot = 0; slot < 3; ++slot) {
    const int k = 2 * (slot + 1);
    for (const auto &I : oracle::subsets(8, k)) {
      std::vector<int> labels(I.begin(), I.end());
      const Form<Q> xi = Form<Q>::basis(8, labels);
      const Form<Q> expansion = project7(sd, k, xi);
      if (k == 2 && expansion != (xi + oracle::hodge(wedge(sd.Phi, xi))) / Q(4)) ++bad;
      if (k == 6 && expansion != (xi + wedge(sd.Phi, oracle::hodge(xi))) / Q(4)) ++bad;
      images[slot].push_back(expansion);
    }
  }
  std::array<int, 3> rank{};
  for (int slot = 0; slot < 3; ++slot) {
    // rank through Eigen on the coefficient matrix (all entries are small rationals)
    const auto &im = images[slot];
    Eigen::MatrixXd m(im.size(), im[0].size());
    for (std::size_t r = 0; r < im.size(); ++r)
      for (int c = 0; c < im[r].size(); ++c) m(r, c) = im[r][c].get_d();
    rank[slot] = static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(m).rank());
    if (span_rank(std::span<const Form<Q>>(im)) != rank[slot]) ++bad;
  }
  const bool ok = bad == 0 && rank == std::array<int, 3>{7, 7, 7};
  return {ok, "28 + 28 basis forms, ranks " + std::to_string(rank[0]) + "/" + std::to_string(rank[1]) + "/" +
                  std::to_string(rank[2]) + ", " + std::to_string(bad) + " mismatches"};
}

// ---- 4 ----
Q gram_det(const std::array<Vector<Q>, 4> &u) {
  std::vector<std::vector<Q>> g(4, std::vector<Q>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Q s(0);
      for (int c = 0; c < 8; ++c) s += u[i][c] * u[j][c];
      g[i][j] = s;
    }
  return oracle::leibniz(g);
}

Outcome cayley_identity() {
  const auto &sd = Spin7Data<Q>::standard();
  Sampler<Q> rng(1004);
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::array<Vector<Q>, 4> u{rng.vector(8), rng.vector(8), rng.vector(8), rng.vector(8)};
    const Q phi = oracle::evaluate(sd.Phi, {u[0], u[1], u[2], u[3]});
    const Form<Q> t = tau(sd, u);
    if (phi * phi + Q(8) * norm_squared(t) != gram_det(u)) ++bad;
  }
  for (int k = 0; k < 100; ++k) {
    const Q a = rng.scalar(), b = rng.scalar();
    const std::array<Vector<Q>, 4> u{Vector<Q>::basis(8, 0), Vector<Q>::basis(8, 1), Vector<Q>::basis(8, 2),
                                     a * Vector<Q>::basis(8, 3) + b * Vector<Q>::basis(8, 4)};
    const Q phi = oracle::evaluate(sd.Phi, {u[0], u[1], u[2], u[3]});
    if (phi * phi != a * a || Q(8) * norm_squared(tau(sd, u)) != b * b) ++bad;
  }
  return {bad == 0, "1000 tuples + 100 (k, l) pairs, " + std::to_string(bad) + " failures"};
}

// ---- 5 ----
Outcome lemma_j() {
  const auto &sd = Spin7Data<Q>::standard();
  Sampler<Q> rng(1005);
  int bad = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto [F1, F2] = identities::random_f1_f2(rng);
    const Form<Q> F = identities::assemble_f(F1, F2);
    const auto [J1, J2] = j_split_definition(sd.g2, F1, F2);
    const Form<Q> F3 = wedge(wedge(F, F), F);
    const Form<Q> rhs1 = Q(2) * lambda2_inverse(sd, project7(sd, 2, Form<Q>(-F + oracle::hodge(F3) / Q(6))));
    const Form<Q> rhs2 = -lambda4_scaled_inverse(sd, project7(sd, 4, wedge(F, F))) / Q(2);
    if (oracle::hodge(J1) != rhs1 || oracle::hodge(J2) != rhs2) ++bad;
  }
  return {bad == 0, "1000 (F1, F2), " + std::to_string(bad) + " failures"};
}

// ---- 6 ----
double eigen_det_id_plus(const Form<double> &F) {
  const int n = F.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double c = oracle::coef(F, {i, j});
      m(j, i) += c;
      m(i, j) -= c;
    }
  return m.determinant();
}

Outcome equalities() {
  const auto &sd = Spin7Data<double>::standard();
  Sampler<double> rng(1006);
  double worst_a = 0, worst_c = 0;
  for (int k = 0; k < 10000; ++k) {
    const auto G7 = random_graph_two_form(rng, Case::g2_assoc);
    const auto a = associator_equality(sd.g2, G7);
    const double ra = eigen_det_id_plus(G7);
    worst_a = std::max(worst_a, std::abs(a.lhs - ra) / std::max(ra, 1.0));
    const auto G8 = random_graph_two_form(rng, Case::spin7);
    const auto c = cayley_equality(sd, G8);
    const double rc = eigen_det_id_plus(G8);
    worst_c = std::max(worst_c, std::abs(c.lhs - rc) / std::max(rc, 1.0));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "10^4 forms each, max relative error associator %.2e, Cayley %.2e", worst_a,
                worst_c);
  return {worst_a < kRelative && worst_c < kRelative, buf};
}

// ---- 7 ----
Outcome sweep_spin7() {
  const auto &sd = Spin7Data<Q>::standard();
  const auto &sdd = Spin7Data<double>::standard();
  long points = 0, mismatched = 0, indeterminate_ab = 0, oracle_bad = 0;
  auto tally = [&](const SweepSummary &s, bool banded) {
    points += s.points;
    mismatched += s.disagree + s.singular + s.indeterminate;
    if (banded) indeterminate_ab += s.indeterminate;
  };
  // (a) constant sections
  Sampler<Q> rng(1007);
  for (int k = 0; k < 3; ++k) {
    auto s = GraphSection<Q>::zero(Case::spin7);
    for (int a = 0; a < 4; ++a) s.f[a] = P(rng.scalar());
    const auto sum = equivalence_sweep(sd, s);
    if (sum.geometry_zero != sum.points) ++oracle_bad;
    tally(sum, true);
  }
  // (b) z3 = z1 z2, validated as Cayley through |Phi(frame)|^2 = |frame|^2 first
  auto h = GraphSection<Q>::zero(Case::spin7);
  const P x0 = P::variable(0), x1 = P::variable(1), x2 = P::variable(2), x3 = P::variable(3);
  h.f[0] = x0 * x2 - x1 * x3;
  h.f[1] = x0 * x3 + x1 * x2;
  h.domain = {{Q(-1), Q(-1), Q(-1), Q(-1)}, {Q(1), Q(1), Q(1), Q(1)}};
  const auto pot = fm_connection(h);
  for (const auto &x : grid_points(h.domain, h.grid)) {
    const auto frame = tangent_frame(pot.layout, curvature_at(pot, std::span<const Q>(x)));
    const std::array<Vector<Q>, 4> u{frame[0], frame[1], frame[2], frame[3]};
    const Q phi = oracle::evaluate(sd.Phi, {u[0], u[1], u[2], u[3]});
    if (phi * phi != gram_det(u)) ++oracle_bad;
  }
  const auto hs = equivalence_sweep(sd, h);
  if (hs.connection_zero != hs.points) ++oracle_bad;
  tally(hs, true);
  // (c) 100 random linear sections: 50 generic, 50 complex-linear (Cayley)
  Sampler<double> frng(1008);
  long cayley_zero = 0, generic_nonzero = 0;
  for (int k = 0; k < 100; ++k) {
    GraphSection<double> s;
    if (k % 2 == 0) {
      s = GraphSection<double>::zero(Case::spin7);
      for (int a = 0; a < 4; ++a)
        for (int j = 0; j < 4; ++j) s.f[a] += Polynomial<double>(frng.scalar()) * Polynomial<double>::variable(j);
    } else {
      s = complex_linear_cayley(random_complex(frng), random_complex(frng), random_complex(frng),
                                random_complex(frng));
    }
    const auto sum = equivalence_sweep(sdd, s);
    tally(sum, false);
    if (k % 2 == 0) generic_nonzero += sum.points - sum.geometry_zero;
    else cayley_zero += sum.geometry_zero;
  }
  const bool ok = mismatched == 0 && indeterminate_ab == 0 && oracle_bad == 0 && cayley_zero == 50 * 625 &&
                  generic_nonzero == 50 * 625;
  return {ok, std::to_string(points) + " points, " + std::to_string(mismatched) + " status mismatches, " +
                  std::to_string(indeterminate_ab) + " indeterminate on (a)/(b), " + std::to_string(oracle_bad) +
                  " oracle failures"};
}

// ---- 8 ----

/// Independent ASD test of the base curvature on a linear graph: Cholesky of
/// the Gram matrix of the frame v_j = e_j + J e_fiber, then the 4-dimensional
/// Hodge star in the resulting orthonormal frame.
bool eigen_asd(const std::array<std::array<double, 4>, 4> &jac, const std::array<std::array<double, 4>, 4> &fb,
               int orientation) {
  Eigen::Matrix4d J, A;
  for (int a = 0; a < 4; ++a)
    for (int j = 0; j < 4; ++j) {
      J(a, j) = jac[a][j];
      A(a, j) = fb[a][j];
    }
  const Eigen::Matrix4d G = Eigen::Matrix4d::Identity() + J.transpose() * J;
  const Eigen::Matrix4d Linv = G.llt().matrixL().solve(Eigen::Matrix4d::Identity());
  const Eigen::Matrix4d B = Linv * A * Linv.transpose();
  const double s = orientation;
  const double sd = std::abs(B(0, 1) + s * B(2, 3)) + std::abs(B(0, 2) - s * B(1, 3)) + std::abs(B(0, 3) + s * B(1, 2));
  return sd <= 1e-9 * (1 + B.cwiseAbs().maxCoeff());
}

/// F_B = sum_{i<j} c_ij dx^{ij} through A^j = sum_{i<j} c_ij x^i.
void set_base_curvature(GraphSection<Q> &s, const std::array<std::array<Q, 4>, 4> &c) {
  for (int j = 0; j < 4; ++j) s.A[j] = P();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) s.A[j] += P(c[i][j]) * P::variable(i);
}

Outcome theorem_conn() {
  const auto &sd = Spin7Data<Q>::standard();
  int bad = 0;
  std::string detail;
  // flat graph, F_B = c(dx^01 - dx^23): both conditions hold; F_B = c tau_1: both fail
  for (const Q c : {Q(1), Q(-7, 3)}) {
    auto s = GraphSection<Q>::zero(Case::spin7);
    s.f[2] = P(Q(1, 2));
    std::array<std::array<Q, 4>, 4> m{};
    m[0][1] = c;
    m[2][3] = -c;
    set_base_curvature(s, m);
    auto sum = equivalence_sweep(sd, s, {.with_connection = true});
    if (sum.geometry_zero != sum.points || sum.connection_zero != sum.points) ++bad;
    m[2][3] = c;
    set_base_curvature(s, m);
    sum = equivalence_sweep(sd, s, {.with_connection = true});
    if (sum.geometry_zero != 0 || sum.connection_zero != 0 || !sum.all_agree()) ++bad;
  }
  // 100 random pairs on tilted complex-linear Cayley graphs: even k carries a
  // curvature that is ASD on the graph, odd k a generic one
  Sampler<Q> rng(1009);
  int zero_pairs = 0;
  for (int k = 0; k < 100; ++k) {
    auto s = complex_linear_cayley(random_complex(rng), random_complex(rng), random_complex(rng),
                                   random_complex(rng));
    s.grid = 2;
    const auto u = linear_frame(s);
    std::array<std::array<Q, 4>, 4> m{};
    if (k % 2 == 0) {
      const auto basis = plane_two_forms(u);
      std::vector<std::vector<Q>> cols;
      for (const auto &b : basis) cols.push_back(project7(sd, 2, b).coefficients());
      const auto ker = null_space(cols);
      Form<Q> alpha(8, 2);
      for (const auto &v : ker) {
        const Q w = rng.scalar();
        for (int i = 0; i < 6; ++i) alpha += (w * v[i]) * basis[i];
      }
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) m[i][j] = evaluate(alpha, {u[i], u[j]});
    } else {
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) m[i][j] = rng.scalar();
    }
    set_base_curvature(s, m);
    const auto sum = equivalence_sweep(sd, s, {.with_connection = true});
    if (!sum.all_agree() || sum.asd_route_mismatch != 0 || sum.orientation_undetermined != 0) ++bad;
    // Eigen oracle at the origin
    const auto pot = fm_connection(s);
    const auto sample = curvature_at(pot, {Q(0), Q(0), Q(0), Q(0)});
    const auto g = graph_asd(sd, pot.layout, sample);
    std::array<std::array<double, 4>, 4> jac{}, fb{};
    for (int a = 0; a < 4; ++a)
      for (int j = 0; j < 4; ++j) jac[a][j] = sample.jacobian[a][j].get_d();
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        fb[i][j] = m[i][j].get_d();
        fb[j][i] = -fb[i][j];
      }
    const bool asd = eigen_asd(jac, fb, g.orientation);
    if (asd != g.pulled_back.anti_self_dual || asd != (k % 2 == 0)) ++bad;
    if ((sum.geometry_zero == sum.points) != asd) ++bad;
    if (sum.connection_zero == sum.points) ++zero_pairs;
  }
  return {bad == 0, "fixed cases + 100 random pairs, " + std::to_string(zero_pairs) + " solutions, " +
                        std::to_string(bad) + " failures"};
}

// ---- 9 ----
Outcome coassociative_chain() {
  const auto &sd = Spin7Data<Q>::standard();
  const auto &g = sd.g2;
  int bad = 0;
  Sampler<Q> rng(1010);
  auto frame_oracle = [&](const GraphSection<Q> &s) {
    // phi on every 3-subset of the frame, by brute force
    const auto u = linear_frame(s);
    for (const auto &I : oracle::subsets(4, 3))
      if (oracle::evaluate(g.phi, {u[I[0]], u[I[1]], u[I[2]]}) != 0) return false;
    return true;
  };
  long points = 0;
  auto check = [&](const GraphSection<Q> &s, SweepOptions opt) {
    const auto sum = equivalence_sweep(sd, s, opt);
    points += sum.points;
    if (!sum.all_agree()) ++bad;
    return sum;
  };
  // constant sections, with and without an ASD base curvature
  for (int k = 0; k < 3; ++k) {
    auto s = GraphSection<Q>::zero(Case::g2_coassoc);
    for (auto &p : s.f) p = P(rng.scalar());
    s.grid = 3;
    if (!frame_oracle(s)) ++bad;
    auto sum = check(s, {});
    if (sum.geometry_zero != sum.points || sum.connection_zero != sum.points) ++bad;
    s.A[1] = P(rng.scalar()) * P::variable(0); // F_B = c (dy^45 - dy^67)
    s.A[3] = P(-s.A[1].terms().begin()->second) * P::variable(2);
    sum = check(s, {.with_connection = true});
    if (sum.geometry_zero != sum.points || sum.connection_zero != sum.points) ++bad;
    s.A[3] = P(s.A[1].terms().begin()->second) * P::variable(2); // c omega_1: self-dual
    sum = check(s, {.with_connection = true});
    if (sum.geometry_zero != 0 || sum.connection_zero != 0) ++bad;
  }
  // 100 random linear sections: even k coassociative, odd k generic
  int calibrated = 0;
  for (int k = 0; k < 100; ++k) {
    GraphSection<Q> s;
    if (k % 2 == 0) {
      s = complex_linear_coassociative(rng.scalar(), random_complex(rng), random_complex(rng));
    } else {
      s = GraphSection<Q>::zero(Case::g2_coassoc);
      for (auto &p : s.f)
        for (int j = 0; j < 4; ++j) p += P(rng.scalar()) * P::variable(j);
    }
    s.grid = 2;
    const bool cal = frame_oracle(s);
    if (cal != (k % 2 == 0)) ++bad;
    const auto sum = check(s, {});
    if ((sum.geometry_zero == sum.points) != cal || (sum.connection_zero == sum.points) != cal) ++bad;
    if (cal) ++calibrated;
  }
  // ASD classification on coassociative planes against the omega_i test
  int asd_cases = 0;
  const std::array<Vector<Q>, 4> flat{Vector<Q>::basis(7, 4), Vector<Q>::basis(7, 5), Vector<Q>::basis(7, 6),
                                      Vector<Q>::basis(7, 7)};
  for (int k = 0; k < 100; ++k) {
    // on the standard plane: alpha ^ *phi = 0 <=> <alpha, omega_i> = 0
    Form<Q> alpha(7, 2);
    for (const auto &b : plane_two_forms(flat)) alpha += rng.scalar() * b;
    if (k % 2 == 0) // remove the self-dual part
      for (const auto &w : g.omega) alpha -= (inner(alpha, w) / Q(2)) * w;
    bool omega_test = true;
    for (const auto &w : g.omega) omega_test = omega_test && inner(alpha, w) == 0;
    const auto r = asd_coassoc_check(g, flat, alpha);
    if (r.residual_zero != omega_test || r.intrinsic.anti_self_dual != omega_test) ++bad;
    ++asd_cases;
    // on a tilted plane the intrinsic test is the reference
    const auto s = complex_linear_coassociative(rng.scalar(), random_complex(rng), random_complex(rng));
    const auto u = linear_frame(s);
    Form<Q> beta(7, 2);
    for (const auto &b : plane_two_forms(u)) beta += rng.scalar() * b;
    const auto t = asd_coassoc_check(g, u, beta);
    if (t.residual_zero != t.intrinsic.anti_self_dual) ++bad;
    ++asd_cases;
  }
  return {bad == 0, std::to_string(points) + " sweep points, " + std::to_string(calibrated) +
                        " calibrated random sections, " + std::to_string(asd_cases) + " ASD cases, " +
                        std::to_string(bad) + " failures"};
}

// ---- 10 ----
Outcome compatibilities() {
  const auto &sd = Spin7Data<Q>::standard();
  int bad = 0;
  Sampler<Q> rng(1011);
  for (int k = 0; k < 100; ++k) {
    Form<Q> G;
    if (k % 4 == 0) {
      // curvature of an associative graph: a solution of the G2 equation
      const auto s = complex_linear_associative(random_complex(rng), random_complex(rng),
                                                {Q(0), Q(0), Q(0), Q(0)});
      G = curvature_at(fm_connection(s), {Q(0), Q(0), Q(0)}).F;
    } else {
      G = rng.form(7, 2);
    }
    if (!g2_reduction_check(sd, G).passed()) ++bad;
  }
  const auto cy = CY4Data<Q>::make();
  for (int k = 0; k < 1000; ++k) {
    const Form<Q> G = random_11_form(rng);
    if (!project7(cy.spin7, 4, wedge(G, G)).is_zero()) ++bad;
    // scalar identity: <omega, G - *G^3/6> = (omega^3 ^ G - omega ^ G^3)/6
    const Form<Q> G3 = wedge(wedge(G, G), G);
    const Q lhs = inner(cy.omega, G - oracle::hodge(G3) / Q(6));
    const Form<Q> w3 = wedge(wedge(cy.omega, cy.omega), cy.omega);
    const Q rhs = (top_coefficient(wedge(w3, G)) - top_coefficient(wedge(cy.omega, G3))) / Q(6);
    if (lhs != rhs) ++bad;
  }
  int family_bad = 0;
  for (const Q mu : {Q(0), Q(1), Q(-1), Q(1, 2), Q(-1, 3), Q(2), Q(-5), Q(9, 7)}) {
    const bool expected = mu == 0 || mu == 1 || mu == -1;
    const auto v = cy4_values(cy, Form<Q>(mu * cy.omega));
    const bool passes = v.first.is_zero() && v.second.is_zero();
    if (passes != expected || (v.im_top == 0) != expected || !cy4_check(cy, Form<Q>(mu * cy.omega)).passed())
      ++family_bad;
  }
  bad += family_bad;
  if (wedge(cy.omega, cy.omega) / Q(2) + cy.Omega_re != sd.Phi) ++bad;
  return {bad == 0, "100 reductions, 1000 (1,1)-forms, mu family " +
                        std::string(family_bad == 0 ? "ok" : "wrong") + ", " + std::to_string(bad) + " failures"};
}

// ---- 11 ----
Outcome counterexample() {
  SearchOptions opt;
  opt.first_tolerance = kFirstTol;
  opt.second_threshold = kSecondTol;
  const auto res = counterexample_search(Spin7Data<double>::standard(), opt);
  if (!res.found) return {false, "no witness within " + std::to_string(opt.restarts) + " restarts"};
  const auto fix = read_json_file(std::string(SPINFORMS_FIXTURES) + "/counterexample_witness.json");
  double drift = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) drift = std::max(drift, std::abs(res.jacobian[a][b] - fix["jacobian"][a][b].get<double>()));
  char buf[160];
  std::snprintf(buf, sizeof buf, "|F1| = %.1e, |F2| = %.3f after %d restarts, fixture drift %.1e", res.first_norm,
                res.second_norm, res.restarts_used, drift);
  return {drift < 1e-12, buf};
}

} // namespace

int main() {
  bool ok = true;
  ok &= run(1, "G2 contraction identities", 1, true, g2_contractions);
  ok &= run(2, "phi/Phi constants and lambda isometries", 1, true, constants);
  ok &= run(3, "projection expansions and ranks", 5, true, projections);
  ok &= run(4, "Cayley identity", 10, true, cayley_identity);
  ok &= run(5, "J1/J2 decomposition", 30, true, lemma_j);
  ok &= run(6, "associator and Cayley equalities", 30, true, equalities);
  ok &= run(7, "Cayley graph / dDT equivalence sweep", 60, true, sweep_spin7);
  ok &= run(8, "Cayley graph with base curvature", 60, true, theorem_conn);
  ok &= run(9, "coassociative graphs and ASD forms", 30, true, coassociative_chain);
  ok &= run(10, "S^1 x R^7 reduction and Calabi-Yau 4-folds", 30, true, compatibilities);
  run(11, "first-equation-only counterexample", 60, false, counterexample);
  std::printf("%s\n", ok ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED");
  return ok ? 0 : 1;
}
