#include <doctest.h>

#include <cmath>

#include "tstk/action.hpp"

using namespace tstk;

namespace {

DifferentialForm constant_oneform(const TorusGrid& g, const std::array<double, 4>& f) {
  std::vector<ScalarField> c;
  for (int mu = 0; mu < 4; ++mu) c.push_back(ScalarField::constant(g, f[mu]));
  return one_form(c);
}

DifferentialForm random_form(FieldSampler& s, const TorusGrid& g) {
  DifferentialForm w(g, 1);
  for (auto& c : w.comp) c = s.scalar(g, 1.0, true);
  return w;
}

// Independent 1-d lattice sum of exp(-(k + c)^2 / L^2) over |k| <= cutoff.
double gauss_sum(int cutoff, double lambda, double c = 0) {
  double s = 0;
  for (int k = -cutoff; k <= cutoff; ++k) s += std::exp(-(k + c) * (k + c) / (lambda * lambda));
  return s;
}

}  // namespace

TEST_CASE("eigenspinors of gamma^a") {
  FieldSampler s(41);
  const TorusGrid g(4, 4);
  const GammaRep rep = euclidean_gammas(2);
  for (int a = 0; a < 4; ++a) {
    const cplx alpha = 1.0;
    const SpinorField psi = eigenspinor(a, alpha, s.spinor(g, 2), rep);
    const SpinorField gpsi = SpinorOperator::constant(g, rep[a]).apply(psi);
    CHECK(max_abs_diff(gpsi, alpha * psi) <= 1e-14);
  }
  CHECK_THROWS(eigenspinor(0, 2.0, s.spinor(g, 2), rep));
}

TEST_CASE("property: fermionic closed form matches the general form") {
  FieldSampler s(42);
  const TorusGrid g(4, 6);
  const GammaRep rep = euclidean_gammas(2);
  const RealStructure J = real_structure_dim4(rep);
  for (int trial = 0; trial < 2; ++trial) {
    const DifferentialForm f = random_form(s, g);
    for (int a = 0; a < 4; ++a) {
      const FermionicCheck c = fermionic_check(a, 1.0, f, s.spinor(g, 2), s.spinor(g, 2), rep, J);
      CAPTURE(a);
      CHECK(c.relative_deviation <= 1e-8);
      CHECK(std::abs(c.skew_ratio + 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("Weyl coefficient reductions") {
  for (int a = 0; a < 4; ++a) CHECK(df_reduction_deviation(a) <= 1e-14);
}

TEST_CASE("signature from the principal symbol") {
  const SignatureResult r0 = signature_classify(0, {1.0, 0.5, -0.7, 0.3});
  CHECK(r0.signature == Signature::lorentzian);
  CHECK(r0.symbol_inertia == std::array<int, 3>{1, 3, 0});
  CHECK(r0.grid_witness_run);
  CHECK(r0.witness_deviation <= 1e-10);
  CHECK(r0.grid_witness_deviation <= 1e-10);
  for (int a = 1; a < 4; ++a) {
    const SignatureResult r = signature_classify(a, {1.0, 0.5, -0.7, 0.3});
    CHECK(r.signature == Signature::euclidean);
    CHECK(r.symbol_inertia == std::array<int, 3>{4, 0, 0});
    CHECK(r.replaced_axis == a);
  }
  CHECK(to_string(Signature::lorentzian) == "lorentzian");
}

TEST_CASE("Lorentz invariance of the fermionic action") {
  FieldSampler s(43);
  const TorusGrid g(4, 6);
  const GammaRep rep = euclidean_gammas(2);
  const RealStructure J = real_structure_dim4(rep);
  const LorentzGammaRep L = lorentz_gammas();
  const SpinorField phi = eigenspinor(0, 1.0, s.spinor(g, 2), rep), psi = eigenspinor(0, 1.0, s.spinor(g, 2), rep);
  const LorentzInvariance li =
      fermionic_lorentz_invariance(phi, psi, SpinorOperator::constant(g, rep[0]),
                                   dirac_with_torsion(random_form(s, g), rep, flat_vielbein(g)), J,
                                   spin_rep(L, random_lorentz_parameters(s)));
  CHECK(li.deviation <= 1e-8);
  CHECK(li.literal_deviation > 1e-3);
}

TEST_CASE("Lorentz suite") {
  FieldSampler s(44);
  const LorentzReport r = lorentz_suite(lorentz_gammas(), 20, s);
  CHECK(r.max_rho_unitarity <= 1e-12);
  CHECK(r.truth_table_iff_a0);
  CHECK(r.antidiagonal_not_lorentz);
  CHECK(r.antidiagonal_rho_unitarity <= 1e-12);
  CHECK(r.antidiagonal_independent_min > 0.1);
  CHECK(r.boost_selfadjoint <= 1e-12);
  CHECK(r.boost_unitarity_gap > 0.1);
  CHECK(r.block_diagonal_leak <= 1e-12);
}

TEST_CASE("heat coefficients for constant torsion") {
  const TorusGrid g(4, 4);
  const HeatCoefficients h = heat_coefficients(constant_oneform(g, {1, 0, 0, 0}), euclidean_gammas(2));
  CHECK(h.a0 == doctest::Approx(4 * kPi * kPi).epsilon(1e-13));
  CHECK(h.a2.real() == doctest::Approx(8 * kPi * kPi).epsilon(1e-13));
  CHECK(std::abs(h.a2.imag()) <= 1e-13);
  CHECK(std::abs(h.a4_raw) <= 1e-10);
  CHECK(std::abs(h.a2 - h.a2_printed) <= 1e-10);
}

TEST_CASE("property: a4 developments on random torsion") {
  FieldSampler s(45);
  const TorusGrid g(4, 8);
  const HeatCoefficients h = heat_coefficients(random_form(s, g), euclidean_gammas(2));
  CHECK(std::abs(h.a4_form1 - h.a4_form2) <= 1e-9 * std::max(1.0, std::abs(h.a4_form1)));
  CHECK(std::abs(h.a4_raw - h.a4_form1 + h.trace_b1_squared) <= 1e-9 * std::max(1.0, std::abs(h.a4_raw)));
  CHECK(std::abs(h.trace_b1) <= 1e-10);
}

TEST_CASE("Fourier traces: free operator factorizes") {
  const GammaRep rep = euclidean_gammas(2);
  const std::vector<double> lambdas{2.0, 3.5};
  const auto t = fourier_traces({0, 0, 0, 0}, lambdas, 10, rep);
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    CHECK(t[i] == doctest::Approx(4 * std::pow(gauss_sum(10, lambdas[i]), 4)).epsilon(1e-12));
}

TEST_CASE("Fourier traces: constant torsion matches the heat expansion") {
  // Poisson summation makes the lattice sum equal to the continuum value up to
  // exp(-pi^2 Lambda^2).
  const double lam = 3.0;
  const auto t = fourier_traces({1, 0, 0, 0}, {lam}, 24, euclidean_gammas(2));
  const double expect = 4 * kPi * kPi * std::pow(lam, 4) + 8 * kPi * kPi * lam * lam;
  CHECK(t[0] == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("Fourier fit rejects under-resolved cutoffs") {
  CHECK_THROWS_AS(fourier_spectral_action({1, 0, 0, 0}, {8.0}, 2, euclidean_gammas(2)), DomainError);
}

TEST_CASE("mode matrix") {
  const GammaRep rep = euclidean_gammas(2);
  const Mat m = mode_matrix(rep, {1, 2, 0, 0}, {0.5, 0, 0, 0});
  const Mat expect = rep[0] + 2.0 * rep[1] - kI * 0.5 * rep[0] * rep.grading;
  CHECK(max_abs(Mat(m - expect)) <= 1e-15);
}
