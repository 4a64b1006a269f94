#pragma once

#include <array>
#include <span>
#include <vector>

#include "tstk/core.hpp"

namespace tstk {

std::array<Mat, 3> pauli();

// sigma^a = {1, -i sigma_j} and tilde-sigma^a = {1, i sigma_j}, a = 0..3.
Mat sigma_up(int a);
Mat sigma_tilde(int a);

struct GammaRep {
  int m = 0;
  std::vector<Mat> gammas;  // gamma^0 .. gamma^{2m-1}
  Mat grading;              // diag(1, -1) in the chiral basis

  int dim() const { return 2 * m; }
  int spin_dim() const { return 1 << m; }
  const Mat& operator[](int a) const { return gammas[a]; }
  Mat identity() const { return Mat::Identity(spin_dim(), spin_dim()); }
};

GammaRep euclidean_gammas(int m);

// Largest deviation over all GammaRep invariants.
double gamma_invariant_deviation(const GammaRep& rep);

int levi_civita_sign(std::span<const int> idx);

// Ordered product gamma^{a1} ... gamma^{ak}; identity for an empty list.
Mat gamma_product(const GammaRep& rep, std::span<const int> idx);

// s with grading = s * gamma^0 gamma^1 ... gamma^{2m-1}.
cplx grading_product_sign(const GammaRep& rep);

// The printed product formula -(-i)^m prod gamma^a, for comparison.
Mat grading_from_product_formula(const GammaRep& rep);

// Prefactor c_m with gamma^a Gamma = c_m sum_{all tuples} eps_{a a1..} gamma^{a1}...
// Pinned: c_m = s_m / (2m-1)!.
cplx absorption_prefactor(const GammaRep& rep);
cplx absorption_prefactor_printed(int m);  // -(-i)^m / (2m)!

// Sum over all (2m-1)-tuples of eps_{a a1 ...} gamma^{a1} ... (no prefactor).
Mat epsilon_contracted_product(const GammaRep& rep, int a);

struct Absorption {
  Mat lhs, rhs;
  cplx prefactor;
  double deviation;
};
// Throws IdentityViolation when lhs and rhs differ by more than tol.
Absorption absorb_gamma(const GammaRep& rep, int a, double tol = kTolAlgebraic);

// Hodge constant kappa_m with i gamma^mu f_mu Gamma = kappa_m c(*omega_f).
cplx hodge_kappa(const GammaRep& rep);
cplx hodge_kappa_printed(int m);  // (-i)^{m+1}/(2m)

struct LorentzGammaRep {
  GammaRep base;
  std::array<Mat, 4> gammas_L;  // gamma^0, i gamma^j
  Mat generator(int a, int b) const;
};

LorentzGammaRep lorentz_gammas();

// exp((i/2) t_ab T^ab), summed over all a, b.
Mat spin_rep(const LorentzGammaRep& rep, const Eigen::Matrix4d& t);

// gamma^0 O^dagger gamma^0.
Mat rho_adjoint(const Mat& o, const GammaRep& rep);

Mat matrix_exp(const Mat& a);

struct RealStructure {
  Mat U;  // J psi = U conj(psi)
  int eps = 0, eps_prime = 0, eps_dprime = 0;

  Vec apply(const Vec& v) const { return U * v.conjugate(); }
  // Matrix of the linear map J M J^{-1}.
  Mat conjugate(const Mat& m) const { return U * m.conjugate() * U.inverse(); }
};

RealStructure real_structure_dim4(const GammaRep& rep);

// Deviations of J^2 = eps, J gamma = -gamma J, J Gamma = eps'' Gamma J.
struct RealStructureDeviation {
  double square, gamma_anti, grading;
};
RealStructureDeviation real_structure_deviation(const RealStructure& J, const GammaRep& rep);

}  // namespace tstk
