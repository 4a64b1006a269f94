#include <doctest.h>

#include <cmath>

#include "tstk/expr.hpp"
#include "tstk/random_fields.hpp"
#include "tstk/spinor_operator.hpp"

using namespace tstk;

namespace {

SpinorField from_exprs(const TorusGrid& g, const std::vector<std::string>& e) {
  SpinorField s(g, static_cast<int>(e.size()));
  for (std::size_t c = 0; c < e.size(); ++c) {
    const ScalarField v = FieldExpr::parse(e[c]).evaluate(g);
    std::copy(v.v.begin(), v.v.end(), s.component(static_cast<int>(c)));
  }
  return s;
}

}  // namespace

TEST_CASE("derivative operator on plane waves") {
  const TorusGrid g(2, 8);
  const SpinorOperator d = SpinorOperator::derivative(g, 1, {0, 1}, 2.0);
  const SpinorField psi = from_exprs(g, {"sin(x0)*cos(2*x1)"});
  const SpinorField expect = from_exprs(g, {"-4*cos(x0)*sin(2*x1)"});
  CHECK(max_abs_diff(d.apply(psi), expect) <= 1e-12);
  CHECK(d.order() == 2);
}

TEST_CASE("Leibniz rule: d o f = f d + (d f)") {
  const TorusGrid g(2, 8);
  const ScalarField f = FieldExpr::parse("cos(x1) + 2").evaluate(g);
  const SpinorOperator mf = SpinorOperator::multiplication(MatrixField::scalar_times(f, Mat::Identity(1, 1)));
  const SpinorOperator d1 = SpinorOperator::derivative(g, 1, {1});
  const SpinorOperator c = compose(d1, mf);
  const MatrixField c0 = c.coefficient({}), c1 = c.coefficient({1});
  const ScalarField df = FieldExpr::parse("-sin(x1)").evaluate(g);
  for (std::size_t p = 0; p < g.points(); ++p) {
    CHECK(std::abs(c0.at(p)(0, 0) - df.v[p]) < 1e-14);
    CHECK(std::abs(c1.at(p)(0, 0) - f.v[p]) < 1e-14);
  }
}

TEST_CASE("adjoint of derivatives and matrices") {
  const TorusGrid g(2, 4);
  const SpinorOperator d = SpinorOperator::derivative(g, 2, {0});
  CHECK(structural_distance(adjoint(d), cplx(-1.0) * d) == 0.0);
  Mat m(2, 2);
  m << 1.0, kI, 2.0, 3.0;
  const SpinorOperator M = SpinorOperator::constant(g, m);
  CHECK(structural_distance(adjoint(M), SpinorOperator::constant(g, m.adjoint())) == 0.0);
}

TEST_CASE("property: <A psi, phi> = <psi, A^dagger phi>") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    FieldSampler s(seed);
    const TorusGrid g(3, 8);
    SpinorOperator A(g, 2);
    A.add_term(MatrixField::scalar_times(s.scalar(g), s.matrix(2, 2)), {});
    A.add_term(MatrixField::scalar_times(s.scalar(g), s.matrix(2, 2)), {1});
    A.add_term(MatrixField::constant(g, s.matrix(2, 2)), {0, 2});
    const SpinorField psi = s.spinor(g, 2), phi = s.spinor(g, 2);
    const cplx lhs = inner(A.apply(psi), phi), rhs = inner(psi, adjoint(A).apply(phi));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("property: composition agrees with successive application") {
  for (std::uint64_t seed = 10; seed <= 13; ++seed) {
    FieldSampler s(seed);
    const TorusGrid g(2, 16);
    SpinorOperator A(g, 2), B(g, 2);
    A.add_term(MatrixField::scalar_times(s.scalar(g), s.matrix(2, 2)), {0});
    A.add_term(MatrixField::scalar_times(s.scalar(g), s.matrix(2, 2)), {});
    B.add_term(MatrixField::scalar_times(s.scalar(g), s.matrix(2, 2)), {1});
    B.add_term(MatrixField::scalar_times(s.scalar(g), s.matrix(2, 2)), {});
    const SpinorField psi = s.spinor(g, 2);
    const SpinorField ab = compose(A, B).apply(psi), seq = A.apply(B.apply(psi));
    CHECK(max_abs_diff(ab, seq) <= 1e-10 * std::max(1.0, max_abs(seq)));
  }
}

TEST_CASE("antilinear operators") {
  FieldSampler s(4);
  const TorusGrid g(2, 4);
  const Mat u = s.unitary(2);
  const SpinorOperator K = SpinorOperator::constant(g, u, true);
  const SpinorField psi = s.spinor(g, 2);
  const cplx z(0.3, 1.2);
  CHECK(max_abs_diff(K.apply(z * psi), std::conj(z) * K.apply(psi)) <= 1e-14);
  // (U K)(U K) = U conj(U) as a linear map.
  const SpinorOperator KK = compose(K, K);
  CHECK_FALSE(KK.antilinear());
  CHECK(structural_distance(KK, SpinorOperator::constant(g, Mat(u * u.conjugate()))) <= 1e-14);
  CHECK_THROWS_AS(K + SpinorOperator::identity(g, 2), DomainError);
  CHECK(structural_distance(K, SpinorOperator::constant(g, u)) == INFINITY);
}

TEST_CASE("canonical form merges terms and summary is stable") {
  const TorusGrid g(2, 4);
  SpinorOperator A(g, 1);
  A.add_term(MatrixField::constant(g, Mat::Identity(1, 1)), {1, 0});
  A.add_term(MatrixField::constant(g, Mat::Identity(1, 1)), {0, 1});
  A.add_term(MatrixField::zero(g, 1), {});
  const SpinorOperator c = A.canonical();
  REQUIRE(c.terms().size() == 1);
  CHECK(c.terms()[0].alpha == std::vector<int>{0, 1});
  CHECK(std::abs(c.terms()[0].coeff.at(0)(0, 0) - 2.0) < 1e-15);
  CHECK(summarize(A).dump() == summarize(A).dump());
  CHECK(summarize(A)["order"] == 2);
}
