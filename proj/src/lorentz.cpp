#include "tstk/action.hpp"

#include <cmath>

namespace tstk {

Eigen::Matrix4d random_lorentz_parameters(FieldSampler& s) {
  Eigen::Matrix4d t = Eigen::Matrix4d::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      t(a, b) = s.uniform(-1.0, 1.0);
      t(b, a) = -t(a, b);
    }
  return t;
}

namespace {

double rho_unitarity(const Mat& s, const GammaRep& base) {
  const Mat sp = rho_adjoint(s, base);
  const Mat id = Mat::Identity(s.rows(), s.cols());
  return std::max(max_abs(Mat(sp * s - id)), max_abs(Mat(s * sp - id)));
}

double unitarity(const Mat& s) {
  const Mat id = Mat::Identity(s.rows(), s.cols());
  return std::max(max_abs(Mat(s.adjoint() * s - id)), max_abs(Mat(s * s.adjoint() - id)));
}

double off_blocks(const Mat& s) { return std::max(max_abs(Mat(s.block(0, 2, 2, 2))), max_abs(Mat(s.block(2, 0, 2, 2)))); }
double diag_blocks(const Mat& s) { return std::max(max_abs(Mat(s.block(0, 0, 2, 2))), max_abs(Mat(s.block(2, 2, 2, 2)))); }

}  // namespace

LorentzReport lorentz_suite(const LorentzGammaRep& rep, int samples, FieldSampler& s) {
  const GammaRep& base = rep.base;
  LorentzReport r{};

  for (int i = 0; i < samples; ++i) {
    const Mat S = spin_rep(rep, random_lorentz_parameters(s));
    r.max_rho_unitarity = std::max(r.max_rho_unitarity, rho_unitarity(S, base));
    r.block_diagonal_leak = std::max(r.block_diagonal_leak, off_blocks(S));
  }

  r.truth_table_iff_a0 = true;
  for (int a = 0; a < 4; ++a) {
    bool all = true;
    for (int b = 0; b < 4; ++b) {
      const Mat lhs = base[a] * rep.gammas_L[b].adjoint() * base[a];
      r.truth_table[a][b] = max_abs(Mat(lhs - rep.gammas_L[b])) <= kTolAlgebraic;
      all = all && r.truth_table[a][b];
    }
    if (all != (a == 0)) r.truth_table_iff_a0 = false;
  }

  // offdiag(beta, gamma) is rho-unitary iff beta gamma^dagger = 1; such an M is
  // never a spin matrix, those being block diagonal with invertible blocks.
  auto antidiagonal = [](const Mat& beta, const Mat& gam) {
    Mat M = Mat::Zero(4, 4);
    M.block(0, 2, 2, 2) = beta;
    M.block(2, 0, 2, 2) = gam;
    return M;
  };
  r.antidiagonal_not_lorentz = true;
  r.antidiagonal_independent_min = INFINITY;
  for (int i = 0; i <= samples; ++i) {
    const Mat beta = i == 0 ? Mat(Mat::Identity(2, 2)) : s.unitary(2);
    const Mat M = antidiagonal(beta, beta.adjoint().inverse());
    r.antidiagonal_rho_unitarity = std::max(r.antidiagonal_rho_unitarity, rho_unitarity(M, base));
    if (diag_blocks(M) != 0.0) r.antidiagonal_not_lorentz = false;
    if (i > 0)
      r.antidiagonal_independent_min =
          std::min(r.antidiagonal_independent_min, rho_unitarity(antidiagonal(beta, s.unitary(2)), base));
  }

  Eigen::Matrix4d rot = Eigen::Matrix4d::Zero();
  rot(1, 2) = 0.7;
  const Mat R = spin_rep(rep, rot);
  r.rotation_unitarity = unitarity(R);
  r.rotation_rho_unitarity = rho_unitarity(R, base);

  Eigen::Matrix4d boost = Eigen::Matrix4d::Zero();
  boost(0, 1) = 0.3;
  const Mat B = spin_rep(rep, boost);
  r.boost_selfadjoint = max_abs(Mat(B.adjoint() - B));
  r.boost_rho_unitarity = rho_unitarity(B, base);
  r.boost_unitarity_gap = unitarity(B);

  double g = 0;
  for (int a = 0; a < 4; ++a) {
    const Mat sq = rep.gammas_L[a] * rep.gammas_L[a];
    const Mat target = (a == 0 ? 1.0 : -1.0) * Mat::Identity(4, 4);
    g = std::max(g, max_abs(Mat(sq - target)));
    for (int b = 0; b < 4; ++b) {
      const Mat t = rep.generator(a, b);
      g = std::max(g, max_abs(Mat(t + rep.generator(b, a))));
      // T^{jk} hermitian, T^{0j} antihermitian.
      const double sign = (a == 0) != (b == 0) ? -1.0 : 1.0;
      g = std::max(g, max_abs(Mat(t.adjoint() - sign * t)));
    }
  }
  r.generator_checks = g;
  return r;
}

}  // namespace tstk
