#include <doctest.h>

#include <cmath>

#include "tstk/expr.hpp"
#include "tstk/random_fields.hpp"
#include "tstk/twist.hpp"

using namespace tstk;

namespace {

struct Setup {
  TorusGrid g{4, 8};
  GammaRep rep = euclidean_gammas(2);
  RealStructure J = real_structure_dim4(rep);
  Vielbein flat = flat_vielbein(g);
  SpinorOperator D = dirac_free(rep, flat);
};

std::vector<SpinorField> battery(FieldSampler& s, const TorusGrid& g) {
  return {s.spinor(g, 4), s.spinor(g, 4), s.spinor(g, 4)};
}

}  // namespace

TEST_CASE("represent is diag(f, f, g, g)") {
  Setup e;
  const TwistedElement a = constant_element(e.g, 2.0, cplx(0, 3));
  const MatrixField m = represent_field(a, e.rep);
  Mat expect = Mat::Zero(4, 4);
  expect(0, 0) = expect(1, 1) = 2.0;
  expect(2, 2) = expect(3, 3) = cplx(0, 3);
  CHECK(max_abs(Mat(m.at(0) - expect)) == 0.0);
  const TwistedElement fl = flip(a);
  CHECK(fl.f.v[0] == cplx(0, 3));
  CHECK(fl.g.v[0] == cplx(2, 0));
}

TEST_CASE("twisted commutator is -i gamma^mu diag(d_mu f, d_mu g)") {
  Setup e;
  const TwistedElement a{FieldExpr::parse("sin(x0) + i*cos(x2)").evaluate(e.g), FieldExpr::parse("cos(x1)*sin(x3)").evaluate(e.g)};
  const SpinorOperator c = twisted_commutator(e.D, a, e.rep);
  CHECK(c.order() == 0);
  MatrixField expect = MatrixField::zero(e.g, 4);
  for (int mu = 0; mu < 4; ++mu) {
    const TwistedElement da{partial(a.f, mu), partial(a.g, mu)};
    expect = expect + MatrixField::constant(e.g, Mat(-kI * e.rep[mu])) * represent_field(da, e.rep);
  }
  CHECK(max_abs_diff(c.coefficient({}), expect) <= 1e-12);
}

TEST_CASE("torsion generated by h = exp(sin(x0)/2)") {
  Setup e;
  const ScalarField h = FieldExpr::parse("exp(0.5*sin(x0))").evaluate(e.g);
  const TorsionGeneration t = generate_torsion(h, e.rep, e.flat, e.J);
  CHECK(max_abs_diff(t.omega.comp[0], FieldExpr::parse("cos(x0)").evaluate(e.g)) <= 1e-12);
  for (int mu = 1; mu < 4; ++mu) CHECK(max_abs(t.omega.comp[mu]) <= 1e-14);
  CHECK(t.structural_deviation <= 1e-10);
  FieldSampler s(1);
  CHECK(application_distance(t.direct, t.closed, battery(s, e.g)) <= 1e-10);
}

TEST_CASE("vanishing h is rejected") {
  Setup e;
  CHECK_THROWS_AS(generate_torsion(FieldExpr::parse("sin(x0)").evaluate(e.g), e.rep, e.flat, e.J), DomainError);
}

TEST_CASE("property: rho-unitaries (h, 1/conj h)") {
  FieldSampler s(31);
  Setup e;
  const ScalarField one = ScalarField::constant(e.g, 1.0);
  for (int i = 0; i < 5; ++i) {
    const ScalarField h = s.nonvanishing(e.g);
    CHECK(is_rho_unitary(TwistedElement{h, one / conj(h)}).holds);
    const ScalarField ph = s.phase(e.g);
    CHECK(is_unitary(TwistedElement{ph, s.phase(e.g)}).holds);
  }
  const ScalarField h = FieldExpr::parse("2 + cos(x1)").evaluate(e.g);
  CHECK_FALSE(is_unitary(TwistedElement{h, one / conj(h)}).holds);
  CHECK_FALSE(is_rho_unitary(TwistedElement{h, h}).holds);
}

TEST_CASE("property: gauge invariance of D + A + J A J^{-1}") {
  FieldSampler s(32);
  Setup e;
  const auto bat = battery(s, e.g);
  for (int i = 0; i < 3; ++i) {
    DifferentialForm f(e.g, 1);
    for (auto& c : f.comp) c = s.scalar(e.g, 1.0, true);
    const SpinorOperator A = SpinorOperator::multiplication(cplx(0.5) * torsion_term(f, e.rep));
    const GaugeResult r = gauge_transform(A, TwistedElement{s.phase(e.g), s.phase(e.g)}, e.D, e.rep, e.J);
    CHECK(application_distance(r.d_a_u, r.d_a, bat) <= 1e-10);
    CHECK(application_distance(r.conjugate, r.d_a, bat) <= 1e-10);
  }
}

TEST_CASE("Hodge constant pins") {
  for (int m = 1; m <= 2; ++m) {
    const TorusGrid g(2 * m, 6);
    FieldSampler s(33);
    DifferentialForm f(g, 1);
    for (auto& c : f.comp) c = s.scalar(g, 1.0, true);
    const GammaRep rep = euclidean_gammas(m);
    const HodgeCheck h = hodge_identity_check(f, rep, flat_vielbein(g));
    CHECK(h.deviation <= 1e-12);
    CHECK(h.printed_deviation > 0.1);
    if (m == 1) CHECK(std::abs(h.kappa - cplx(1, 0)) < 1e-15);
    if (m == 2) CHECK(std::abs(h.kappa - cplx(0, -1)) < 1e-15);
  }
}

TEST_CASE("R matrices") {
  const GammaRep rep = euclidean_gammas(2);
  const RMatrix r1 = build_R({0}, rep);
  CHECK(r1.l == 0);
  CHECK(r1.alpha == cplx(1, 0));
  const RMatrix r3 = build_R({0, 1, 2}, rep);
  CHECK(r3.l == 1);
  CHECK(r3.alpha == kI);
  CHECK(max_abs(Mat(r3.r.adjoint() + r3.r)) <= 1e-15);
  CHECK_THROWS(build_R({0, 1}, rep));
  CHECK_THROWS(build_R({1, 1, 2}, rep));
}

TEST_CASE("fluctuation extracts the torsion 1-form") {
  FieldSampler s(34);
  Setup e;
  DifferentialForm f(e.g, 1);
  for (auto& c : f.comp) c = s.scalar(e.g, 1.0, true);
  const SpinorOperator A = SpinorOperator::multiplication(cplx(0.5) * torsion_term(f, e.rep));
  const Fluctuation fl = twisted_fluctuation(e.D, A, e.rep, e.J);
  CHECK(max_abs_diff(fl.f, f) <= 1e-12);
  CHECK(fl.structure_deviation <= 1e-12);
  CHECK(fl.selfadjoint);
  CHECK_THROWS_AS(dirac_with_torsion(cplx(0, 1) * f, e.rep, e.flat), DomainError);
}

TEST_CASE("non-entangled classification") {
  FieldSampler s(35);
  const TorusGrid g(4, 6);
  const GammaRep rep = euclidean_gammas(2);
  const RealStructure J = real_structure_dim4(rep);
  const SpinorOperator D = dirac_free(rep, flat_vielbein(g));
  const NonEntangled u = nonentangled_classify({s.phase(g), s.phase(g)}, D, rep, J);
  CHECK(u.form_plus);
  CHECK(u.form_dagger);
  const ScalarField r = s.nonvanishing(g);
  const NonEntangled v = nonentangled_classify({r, ScalarField::constant(g, 1.0) / conj(r)}, D, rep, J);
  CHECK_FALSE(v.form_plus);
  CHECK(v.form_dagger);
  CHECK(v.factorization.has_value());
}
