#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tstk/random_fields.hpp"
#include "tstk/torsion.hpp"
#include "tstk/twist.hpp"

using namespace tstk;

namespace {

DifferentialForm random_form(FieldSampler& s, const TorusGrid& g, int k) {
  DifferentialForm w(g, k);
  for (auto& c : w.comp) c = s.scalar(g, 1.0, true);
  return w;
}

Tensor3Field antisymmetric(FieldSampler& s, const TorusGrid& g) {
  Tensor3Field t(g);
  for (std::size_t p = 0; p < g.points(); ++p)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) {
          const double v = s.uniform(-1, 1);
          const int perm[6][3] = {{i, j, k}, {j, k, i}, {k, i, j}, {j, i, k}, {i, k, j}, {k, j, i}};
          for (int q = 0; q < 6; ++q) t(p, perm[q][0], perm[q][1], perm[q][2]) = q < 3 ? v : -v;
        }
  return t;
}

}  // namespace

TEST_CASE("Christoffel symbols of a diagonal metric") {
  const TorusGrid g(4, 8);
  std::vector<Eigen::MatrixXd> m(g.points(), Eigen::MatrixXd::Identity(4, 4));
  for (std::size_t p = 0; p < g.points(); ++p) m[p](0, 0) = 1 + 0.5 * std::sin(g.coord(p, 0));
  const Vielbein v = vielbein_from_metric(g, m);
  const ConnectionField c = christoffel(v);
  double worst = 0, others = 0;
  for (std::size_t p = 0; p < g.points(); ++p) {
    const double x = g.coord(p, 0);
    worst = std::max(worst, std::abs(c(p, 0, 0, 0) - 0.5 * std::cos(x) / (2 * (1 + 0.5 * std::sin(x)))));
    for (int l = 0; l < 4; ++l)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          if (l + a + b > 0) others = std::max(others, std::abs(c(p, l, a, b)));
  }
  CHECK(worst <= 1e-12);
  CHECK(others <= 1e-12);
  CHECK(metric_compatibility(c, v) <= 1e-10);
  CHECK(max_abs(torsion_tensor(c)) <= 1e-14);
}

TEST_CASE("torsion of dx^3 is a multiple of the dual 3-form") {
  const TorusGrid g(4, 4);
  std::vector<ScalarField> comp(4, ScalarField::constant(g, 0.0));
  comp[3] = ScalarField::constant(g, 1.0);
  const Contorsion k = torsion_from_oneform(one_form(comp), flat_vielbein(g));
  // -4 * (*dx^3) with (*dx^3)_{012} = -1/6.
  CHECK(std::abs(k.flat(0, 0, 1, 2) - 2.0 / 3) < 1e-15);
  CHECK(std::abs(k.flat(0, 1, 0, 2) + 2.0 / 3) < 1e-15);
  CHECK(std::abs(k.flat(0, 0, 1, 3)) < 1e-15);
  CHECK(max_abs_diff(oneform_from_torsion(k, flat_vielbein(g)), one_form(comp)) < 1e-15);
  CHECK(kTorsionScale == -4.0);
}

TEST_CASE("property: totally antisymmetric contorsion is orthogonal and geodesic preserving") {
  FieldSampler s(21);
  const TorusGrid g(4, 4);
  for (int i = 0; i < 10; ++i) {
    const ContorsionClass cl = classify_contorsion(contorsion_from_flat(antisymmetric(s, g), flat_vielbein(g)));
    CHECK(cl.totally_antisymmetric);
    CHECK(cl.orthogonal);
    CHECK(cl.geodesic_preserving);
  }
}

TEST_CASE("classification of non-antisymmetric families") {
  FieldSampler s(22);
  const TorusGrid g(4, 4);
  // Symmetric in the last two slots: geodesic-changing.
  Tensor3Field sym(g);
  for (std::size_t p = 0; p < g.points(); ++p)
    for (int l = 0; l < 4; ++l)
      for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) sym(p, l, a, b) = sym(p, l, b, a) = s.uniform(-1, 1);
  const ContorsionClass c1 = classify_contorsion(contorsion_from_flat(sym, flat_vielbein(g)));
  CHECK_FALSE(c1.totally_antisymmetric);
  CHECK_FALSE(c1.geodesic_preserving);
  // Orthogonal only.
  Tensor3Field o(g);
  for (std::size_t p = 0; p < g.points(); ++p)
    for (int l = 0; l < 4; ++l)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) o(p, l, mu, nu) = (l < nu ? 1.0 : l > nu ? -1.0 : 0.0) * (mu + 1);
  const ContorsionClass c2 = classify_contorsion(contorsion_from_flat(o, flat_vielbein(g)));
  CHECK(c2.orthogonal);
  CHECK_FALSE(c2.geodesic_preserving);
  CHECK_FALSE(c2.totally_antisymmetric);
}

TEST_CASE("index lowering is consistent on a curved frame") {
  FieldSampler s(23);
  const TorusGrid g(4, 4);
  std::vector<Eigen::MatrixXd> m(g.points(), Eigen::MatrixXd::Identity(4, 4));
  for (std::size_t p = 0; p < g.points(); ++p) {
    m[p](1, 1) = 2 + std::cos(g.coord(p, 2));
    m[p](0, 3) = m[p](3, 0) = 0.2;
  }
  const Vielbein v = vielbein_from_metric(g, m);
  const Contorsion k = contorsion_from_flat(antisymmetric(s, g), v);
  CHECK(contorsion_consistency(k, v) <= 1e-12);
}

TEST_CASE("spin lift and the Dirac operator with torsion") {
  FieldSampler s(24);
  const TorusGrid g(4, 6);
  const Vielbein flat = flat_vielbein(g);
  const GammaRep rep = euclidean_gammas(2);
  const DifferentialForm f = random_form(s, g, 1);
  const Contorsion k = torsion_from_oneform(f, flat);
  const SpinConnection a = spin_lift(k.upper, rep, flat), b = spin_lift(k, rep);
  for (int mu = 0; mu < 4; ++mu) CHECK(max_abs_diff(a.omega[mu], b.omega[mu]) <= 1e-12);
  // Spin connection is antihermitian.
  for (int mu = 0; mu < 4; ++mu) CHECK(max_abs_diff(adjoint(b.omega[mu]), cplx(-1.0) * b.omega[mu]) <= 1e-12);
  CHECK(structural_distance(dirac_from_spin_connection(b, rep, flat), dirac_with_torsion(f, rep, flat)) <= 1e-12);
  // A scale other than -4 does not reproduce the twisted fluctuation.
  const SpinConnection wrong = spin_lift(torsion_from_oneform(f, flat, -1.0), rep);
  CHECK(structural_distance(dirac_from_spin_connection(wrong, rep, flat), dirac_with_torsion(f, rep, flat)) > 0.1);
}

TEST_CASE("spin lift rejects non-orthogonal contorsion") {
  const TorusGrid g(4, 4);
  Tensor3Field t(g);
  for (std::size_t p = 0; p < g.points(); ++p) t(p, 0, 1, 1) = 1.0;
  CHECK_THROWS(spin_lift(t, euclidean_gammas(2), flat_vielbein(g)));
}

TEST_CASE("coexact torsion: two routes") {
  FieldSampler s(25);
  const TorusGrid g(4, 8);
  const CoexactTorsion c = coexact_torsion(s.scalar(g, 1.0, true));
  CHECK(c.route_deviation <= 1e-10);
  CHECK(c.threeform.k == 3);
}

TEST_CASE("contorsion CSV header") {
  const TorusGrid g(4, 4);
  std::ostringstream os;
  write_csv(os, contorsion_from_flat(Tensor3Field(g), flat_vielbein(g)));
  const std::string s = os.str();
  const std::string header = s.substr(0, s.find('\n'));
  CHECK(header.rfind("point,x0,x1,x2,x3,K000", 0) == 0);
  CHECK(std::count(header.begin(), header.end(), ',') == 4 + 64);
  CHECK(std::count(s.begin(), s.end(), '\n') == 1 + 256);
}
