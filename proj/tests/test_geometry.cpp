#include <doctest.h>

#include <cmath>

#include "tstk/expr.hpp"
#include "tstk/random_fields.hpp"
#include "tstk/vielbein.hpp"

using namespace tstk;

TEST_CASE("grid layout and neighbours") {
  const TorusGrid g(3, 6, 3.0);
  CHECK(g.points() == 216);
  CHECK(g.spacing() == doctest::Approx(0.5));
  const std::size_t p = 2 * g.stride(0) + 5 * g.stride(1) + 1 * g.stride(2);
  CHECK(g.axis_index(p, 1) == 5);
  CHECK(g.axis_index(g.neighbor(p, 1, 1), 1) == 0);
  CHECK(g.axis_index(g.neighbor(p, 0, -1), 0) == 1);
  CHECK(g.wavenumber(4) == -2);
  CHECK_THROWS_AS(TorusGrid(4, 2), DomainError);
  CHECK_THROWS_AS(TorusGrid(7, 8), DomainError);
}

TEST_CASE("quadrature of sin^2 over T^4") {
  const TorusGrid g(4, 8);
  const ScalarField f = FieldExpr::parse("sin(x0)^2").evaluate(g);
  // (2 pi)^4 / 2, exact for a trigonometric polynomial below Nyquist.
  CHECK(std::abs(integrate(f) - cplx(8 * std::pow(kPi, 4), 0)) <= 1e-9);
}

TEST_CASE("spectral derivative is exact on band-limited data, fd2 converges at second order") {
  double err_prev = 0;
  for (int N : {16, 32, 64}) {
    const TorusGrid g(1, N);
    ScalarField f(g), exact(g);
    for (std::size_t p = 0; p < g.points(); ++p) {
      const double x = g.coord(p, 0);
      f.v[p] = std::sin(3 * x);
      exact.v[p] = 3 * std::cos(3 * x);
    }
    CHECK(max_abs_diff(partial(f, 0, Deriv::spectral), exact) <= 1e-12);
    const double err = max_abs_diff(partial(f, 0, Deriv::fd2), exact);
    if (err_prev > 0) CHECK(err_prev / err == doctest::Approx(4.0).epsilon(0.05));
    err_prev = err;
  }
}

TEST_CASE("exact gradients propagate through arithmetic") {
  const TorusGrid g(2, 8);
  const ScalarField a = FieldExpr::parse("sin(x0)").evaluate(g), b = FieldExpr::parse("cos(x1) + 2").evaluate(g);
  const ScalarField q = a / b;
  REQUIRE(q.has_grad());
  const ScalarField oracle = FieldExpr::parse("-sin(x0)*(-sin(x1))/(cos(x1)+2)^2").evaluate(g);
  CHECK(max_abs_diff(partial(q, 1), oracle) <= 1e-14);
}

TEST_CASE("vielbein from a diagonal metric") {
  const TorusGrid g(4, 4);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
  m(0, 0) = 4;
  m(2, 2) = 9;
  const Vielbein v = vielbein_from_metric(g, std::vector<Eigen::MatrixXd>(g.points(), m));
  CHECK(v.e_at(3)(0, 0) == doctest::Approx(2.0));
  CHECK(v.e_at(3)(2, 2) == doctest::Approx(3.0));
  CHECK(v.sqrt_det_at(7) == doctest::Approx(6.0));
  CHECK(vielbein_deviation(v) <= 1e-15);
  // Volume of the torus with this metric: 6 (2 pi)^4.
  CHECK(std::abs(integrate(ScalarField::constant(g, 1.0), v) - cplx(6 * std::pow(2 * kPi, 4), 0)) <= 1e-9);
}

TEST_CASE("non-positive metric names the offending point") {
  const TorusGrid g(2, 4);
  std::vector<Eigen::MatrixXd> m(g.points(), Eigen::MatrixXd::Identity(2, 2));
  m[5](1, 1) = -1;
  try {
    (void)vielbein_from_metric(g, m);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("point 5") != std::string::npos);
  }
}

TEST_CASE("property: random band-limited fields have exact spectral gradients") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    FieldSampler s(seed);
    const TorusGrid g(3, 8);
    const ScalarField f = s.scalar(g);
    REQUIRE(f.has_grad());
    ScalarField bare(g);
    bare.v = f.v;
    for (int mu = 0; mu < 3; ++mu) CHECK(max_abs_diff(partial(f, mu), partial(bare, mu, Deriv::spectral)) <= 1e-12);
  }
}

TEST_CASE("property: nonvanishing sampler stays away from zero, phases are unimodular") {
  FieldSampler s(9);
  const TorusGrid g(4, 4);
  for (int i = 0; i < 5; ++i) {
    CHECK(min_abs(s.nonvanishing(g)) > 1e-3);
    const ScalarField ph = s.phase(g);
    CHECK(max_abs_diff(abs2(ph), ScalarField::constant(g, 1.0)) <= 1e-14);
  }
  const Mat u = s.unitary(3);
  CHECK(max_abs(Mat(u.adjoint() * u - Mat::Identity(3, 3))) <= 1e-14);
}
