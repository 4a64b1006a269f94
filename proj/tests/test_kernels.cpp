#include <doctest.h>

#include <omp.h>

#include "tstk/action.hpp"
#include "tstk/kernels.hpp"

using namespace tstk;

TEST_CASE("blocked sums are bitwise identical to the serial twin") {
  FieldSampler s(51);
  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{4095}, std::size_t{4097}, std::size_t{100000}}) {
    std::vector<cplx> x(n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = s.complex_normal();
      y[i] = s.normal();
    }
    CHECK(kernels::blocked_sum(x.data(), n) == kernels::reference::blocked_sum(x.data(), n));
    CHECK(kernels::blocked_sum(y.data(), n) == kernels::reference::blocked_sum(y.data(), n));
  }
}

TEST_CASE("operator apply matches the serial twin for every thread count") {
  FieldSampler s(52);
  const TorusGrid g(4, 8);
  const GammaRep rep = euclidean_gammas(2);
  DifferentialForm f(g, 1);
  for (auto& c : f.comp) c = s.scalar(g, 1.0, true);
  const SpinorOperator D = dirac_with_torsion(f, rep, flat_vielbein(g));
  const SpinorField psi = s.spinor(g, 4);
  const SpinorField ref = D.apply_reference(psi);
  const int saved = omp_get_max_threads();
  for (int t : {1, 2, 4}) {
    omp_set_num_threads(t);
    CAPTURE(t);
    CHECK(max_abs_diff(D.apply(psi), ref) == 0.0);
    CHECK(max_abs_diff(D.apply(psi, Deriv::fd2), D.apply_reference(psi, Deriv::fd2)) == 0.0);
  }
  omp_set_num_threads(saved);
}

TEST_CASE("Fourier mode sum matches the serial twin") {
  const GammaRep rep = euclidean_gammas(2);
  const std::vector<double> lambdas{2.0, 3.0};
  const auto a = fourier_traces({0.3, -0.2, 0.1, 0.5}, lambdas, 8, rep);
  const auto b = fourier_traces_reference({0.3, -0.2, 0.1, 0.5}, lambdas, 8, rep);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("heat coefficients are deterministic across thread counts") {
  FieldSampler s(53);
  const TorusGrid g(4, 6);
  DifferentialForm f(g, 1);
  for (auto& c : f.comp) c = s.scalar(g, 1.0, true);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const HeatCoefficients a = heat_coefficients(f, euclidean_gammas(2));
  omp_set_num_threads(3);
  const HeatCoefficients b = heat_coefficients(f, euclidean_gammas(2));
  omp_set_num_threads(saved);
  CHECK(a.a2 == b.a2);
  CHECK(a.a4_raw == b.a4_raw);
}
