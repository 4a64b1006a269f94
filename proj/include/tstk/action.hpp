#pragma once

#include <array>
#include <string>
#include <vector>

#include "tstk/random_fields.hpp"
#include "tstk/twist.hpp"

namespace tstk {

// ---- fermionic action (dimension 4) ----

// (phi, alpha^{-1} tilde-sigma^a phi) from a 2-component Weyl field; asserts
// gamma^a psi = alpha psi.
SpinorField eigenspinor(int a, cplx alpha, const SpinorField& weyl, const GammaRep& rep);

// integral of <J phi, R D psi>.
cplx fermionic_form(const SpinorField& phi, const SpinorField& psi, const SpinorOperator& r, const SpinorOperator& d,
                    const RealStructure& j);

// Closed form for R = gamma^a as a bilinear in the Weyl components eta (of phi)
// and zeta (of psi); f the torsion 1-form on a flat frame.
//   a = 0:  2 int eta^T sigma_2 (i f_0 - sum_j sigma_j d_j) zeta
//   a != 0: 2 int eta^T sigma_2 sigma_a (d_0 + i sum_{j != a} sigma_j d_j + i sigma_a f_a) zeta
cplx fermionic_closed_form(int a, const DifferentialForm& f, const SpinorField& eta, const SpinorField& zeta);

// D^{mu a} = sigma^2 sigma^mu tsigma^a - tsigma^{aT} sigma^2 tsigma^mu and
// F^{mu a} with a plus sign, against their reduced forms.
Mat weyl_D(int mu, int a);
Mat weyl_F(int mu, int a);
double df_reduction_deviation(int a);

struct FermionicCheck {
  cplx general, closed;
  double relative_deviation;
  cplx skew_ratio;  // A(phi, psi) / A(psi, phi)
};
FermionicCheck fermionic_check(int a, cplx alpha, const DifferentialForm& f, const SpinorField& eta,
                               const SpinorField& zeta, const GammaRep& rep, const RealStructure& j);

// A(phi, psi) against the transformed data phi -> S phi, psi -> S psi,
// D -> S D S^{-1}, J -> S J S^{-1}; `literal` uses J -> S J S instead.
struct LorentzInvariance {
  double deviation;
  double literal_deviation;
};
LorentzInvariance fermionic_lorentz_invariance(const SpinorField& phi, const SpinorField& psi, const SpinorOperator& r,
                                               const SpinorOperator& d, const RealStructure& j, const Mat& s);

enum class Signature { lorentzian, euclidean };
std::string to_string(Signature s);

struct SignatureResult {
  Signature signature;
  int replaced_axis;
  std::array<int, 3> symbol_inertia;  // (positive, negative, zero) eigenvalue counts
  double witness_deviation;           // pointwise operator identity on the analytic plane wave
  bool grid_witness_run;              // a = 0 with integer f_0
  double grid_witness_deviation;      // same identity on a grid with spectral derivatives
};
// Substitutes f_a by the derivative along x_a on zeta = e^{...} xi and reads the
// signature off the principal symbol det(sum_mu M_mu k_mu).
SignatureResult signature_classify(int a, const std::array<double, 4>& f);

// ---- Lorentz suite ----

struct LorentzReport {
  double max_rho_unitarity;       // |S^+ S - 1|, |S S^+ - 1| over the samples
  std::array<std::array<bool, 4>, 4> truth_table;  // [a][b]: gamma^a (gamma_L^b)^dagger gamma^a == gamma_L^b
  bool truth_table_iff_a0;
  // offdiag(beta, gamma) with beta unitary and gamma = beta^{-dagger} = beta.
  double antidiagonal_rho_unitarity;
  bool antidiagonal_not_lorentz;
  // Same with beta, gamma drawn independently from U(2): not rho-unitary in
  // general (smallest deviation over the draws, for the report).
  double antidiagonal_independent_min;
  double rotation_unitarity, rotation_rho_unitarity;
  double boost_selfadjoint, boost_rho_unitarity, boost_unitarity_gap;
  double block_diagonal_leak;  // off-diagonal chiral blocks of S
  double generator_checks;     // adjointness and antisymmetry of T^{ab}
};
Eigen::Matrix4d random_lorentz_parameters(FieldSampler& s);
LorentzReport lorentz_suite(const LorentzGammaRep& rep, int samples, FieldSampler& s);

// ---- spectral action (flat metric) ----

struct HeatCoefficients {
  double a0 = 0;
  cplx a2 = 0;
  cplx a2_printed = 0;  // (1/(4pi)^m) int (-2^m f^2 + Tr b1 + Tr b~)
  cplx trace_b1 = 0;    // integrated Tr b1 (vanishes by the gamma trace identities)
  // a4 on a flat metric:
  cplx a4_raw = 0;      // Tr(180 E^2 + 30 Omega Omega) (Laplacian term integrates to zero)
  cplx a4_form1 = 0;    // first printed development, matrix traces
  cplx a4_form2 = 0;    // second printed development with the trace identity scaled by 2^m
  cplx a4_form2_literal = 0;  // second development with the trace identity as printed
  cplx trace_b1_squared = 0;  // (1/(360 (4pi)^m)) int 180 Tr(b1^2)
  double max_imag_E = 0;
};
// f: real 1-form on a flat grid of dimension 2m; derivatives with `scheme`.
HeatCoefficients heat_coefficients(const DifferentialForm& f, const GammaRep& rep, Deriv scheme = Deriv::spectral);

// Mode matrix gamma^mu k_mu - i f_mu gamma^mu Gamma.
Mat mode_matrix(const GammaRep& rep, const std::array<double, 4>& k, const std::array<double, 4>& f);

struct FourierOracle {
  std::vector<double> lambdas;
  std::vector<double> traces;  // Tr exp(-D D^dagger / Lambda^2)
  double a0_fit = 0, a2_fit = 0, c_fit = 0;
  double condition_number = 0;
  double tail_bound = 0;  // 1 - erf(cutoff / Lambda_max)^4
  double invariance_unitary = 0;  // Tr exp under D -> V D V^+, V unitary and rho-unitary
  double invariance_rho = 0;      // Tr(D D^+) under D -> U D U^dagger, U rho-unitary
};
// Hypercube cutoff max|k_mu| <= cutoff on the torus of period L (dimension 4).
// Throws DomainError when the cutoff under-resolves the largest Lambda or the
// fit is ill-conditioned.
FourierOracle fourier_spectral_action(const std::array<double, 4>& f, const std::vector<double>& lambdas, int cutoff,
                                      const GammaRep& rep, double period = 2 * kPi, std::uint64_t seed = 1);
// Serial twin of the mode sum, for kernel comparison.
std::vector<double> fourier_traces_reference(const std::array<double, 4>& f, const std::vector<double>& lambdas,
                                             int cutoff, const GammaRep& rep, double period = 2 * kPi);
std::vector<double> fourier_traces(const std::array<double, 4>& f, const std::vector<double>& lambdas, int cutoff,
                                   const GammaRep& rep, double period = 2 * kPi);

}  // namespace tstk
