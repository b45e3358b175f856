#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "fm_transform.hpp"

namespace spinforms {

/// Search for a linear Spin(7) graph section whose curvature satisfies the
/// first dDT equation but not the second. Such sections need a Jacobian of
/// determinant 1, so the search solves
///   (lambda^2)^{-1} pi^2_7(G - *G^3/6) = 0,  det L = 1
/// by damped Gauss-Newton (minimum-norm steps) from random starts, and keeps
/// the first solution whose second residual is clearly nonzero.
struct SearchOptions {
  std::uint64_t seed = 1;
  int restarts = 200;
  int iterations = 200;
  double first_tolerance = 1e-9;  // accept |pi^2_7 part| below this
  double second_threshold = 1e-6; // and |pi^4_7 part| above this
};

struct SearchResult {
  bool found = false;
  std::array<std::array<double, 4>, 4> jacobian{}; // [fiber a][base j]
  double first_norm = 0;
  double second_norm = 0;
  double det = 0;
  int restarts_used = 0;
  int converged = 0; // restarts that reached the first equation (witness or not)
};

/// F_S of the linear section f^a = sum_j L[a][j] x^j, as a real 2-form on R^8.
inline Form<double> linear_section_curvature(const std::array<std::array<double, 4>, 4> &L) {
  Form<double> G(8, 2);
  for (int a = 0; a < 4; ++a)
    for (int j = 0; j < 4; ++j) G += Form<double>::basis(8, {j, a + 4}, L[a][j]);
  return G;
}

namespace detail {

using Jac = std::array<std::array<double, 4>, 4>;

inline std::array<double, 8> search_residual(const Spin7Data<double> &sd, const Jac &L) {
  const Form<double> G = linear_section_curvature(L);
  const auto r = ddt_residual_spin7(sd, G);
  const Form<double> c = lambda2_inverse(sd, r.first);
  Matrix<double> M(4);
  for (int a = 0; a < 4; ++a)
    for (int j = 0; j < 4; ++j) M(a, j) = L[a][j];
  std::array<double, 8> out{};
  for (int i = 0; i < 7; ++i) out[i] = c[i];
  out[7] = determinant(M) - 1.0;
  return out;
}

inline double sq(const std::array<double, 8> &r) {
  double s = 0;
  for (double x : r) s += x * x;
  return s;
}

} // namespace detail

inline SearchResult counterexample_search(const Spin7Data<double> &sd, const SearchOptions &opt) {
  using detail::Jac;
  SearchResult res;
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < opt.restarts; ++attempt) {
    res.restarts_used = attempt + 1;
    Jac L;
    for (auto &row : L)
      for (auto &x : row) x = normal(rng);
    double mu = 1e-3;
    auto r = detail::search_residual(sd, L);
    for (int it = 0; it < opt.iterations && detail::sq(r) > 1e-30; ++it) {
      // forward-difference Jacobian of the 8 residuals in the 16 entries
      std::array<std::array<double, 16>, 8> D{};
      const double h = 1e-7;
      for (int p = 0; p < 16; ++p) {
        Jac Lp = L;
        Lp[p / 4][p % 4] += h;
        const auto rp = detail::search_residual(sd, Lp);
        for (int i = 0; i < 8; ++i) D[i][p] = (rp[i] - r[i]) / h;
      }
      // minimum-norm damped step: delta = -D^T (D D^T + mu I)^{-1} r
      Matrix<double> N(8);
      for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 8; ++k) {
          double s = i == k ? mu : 0.0;
          for (int p = 0; p < 16; ++p) s += D[i][p] * D[k][p];
          N(i, k) = s;
        }
      auto Ninv = try_inverse(N);
      if (!Ninv) break;
      std::array<double, 8> y{};
      for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 8; ++k) y[i] += (*Ninv)(i, k) * r[k];
      Jac trial = L;
      for (int p = 0; p < 16; ++p) {
        double s = 0;
        for (int i = 0; i < 8; ++i) s += D[i][p] * y[i];
        trial[p / 4][p % 4] -= s;
      }
      const auto rt = detail::search_residual(sd, trial);
      if (detail::sq(rt) < detail::sq(r)) {
        L = trial;
        r = rt;
        mu = std::max(mu * 0.3, 1e-12);
      } else {
        mu *= 10;
        if (mu > 1e8) break;
      }
    }
    const Form<double> G = linear_section_curvature(L);
    const auto dd = ddt_residual_spin7(sd, G);
    const double n1 = std::sqrt(norm_squared(dd.first));
    const double n2 = std::sqrt(norm_squared(dd.second));
    if (n1 >= opt.first_tolerance) continue;
    ++res.converged;
    if (n2 > opt.second_threshold) {
      res.found = true;
      res.jacobian = L;
      res.first_norm = n1;
      res.second_norm = n2;
      Matrix<double> M(4);
      for (int a = 0; a < 4; ++a)
        for (int j = 0; j < 4; ++j) M(a, j) = L[a][j];
      res.det = determinant(M);
      return res;
    }
  }
  return res;
}

} // namespace spinforms
