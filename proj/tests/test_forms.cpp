#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tstk/expr.hpp"
#include "tstk/forms.hpp"
#include "tstk/random_fields.hpp"

using namespace tstk;

namespace {

DifferentialForm random_form(FieldSampler& s, const TorusGrid& g, int k) {
  DifferentialForm w(g, k);
  for (auto& c : w.comp) c = s.scalar(g, 1.0, true);
  return w;
}

double scalar_dev(const ScalarField& a, double c) { return max_abs_diff(a, ScalarField::constant(a.grid, c)); }

}  // namespace

TEST_CASE("sorted tuples") {
  const auto t = sorted_tuples(4, 2);
  REQUIRE(t.size() == 6);
  CHECK(t.front() == std::vector<int>{0, 1});
  CHECK(t.back() == std::vector<int>{2, 3});
  CHECK(sorted_tuples(4, 0).size() == 1);
  CHECK(sorted_tuples(4, 5).empty());
}

TEST_CASE("antisymmetric access") {
  const TorusGrid g(4, 4);
  DifferentialForm w(g, 2);
  const int idx[2] = {1, 3};
  w[idx] = ScalarField::constant(g, 2.5);
  const int rev[2] = {3, 1}, rep[2] = {1, 1};
  CHECK(w.value(rev, 0) == cplx(-2.5, 0));
  CHECK(w.value(rep, 0) == cplx(0, 0));
  CHECK_THROWS_AS(w[rev], DomainError);
}

TEST_CASE("Hodge dual of basis forms in dimension 4") {
  const TorusGrid g(4, 4);
  // *dx^3 = -dx^0 ^ dx^1 ^ dx^2; stored tensor entry = coefficient / 3!.
  std::vector<ScalarField> c(4, ScalarField::constant(g, 0.0));
  c[3] = ScalarField::constant(g, 1.0);
  const DifferentialForm s = hodge_dual(one_form(c));
  const int t012[3] = {0, 1, 2};
  CHECK(std::abs(s.value(t012, 0) - cplx(-1.0 / 6, 0)) < 1e-15);
  // *1 = volume form, stored as 1/4!.
  const DifferentialForm v = hodge_dual(scalar_form(ScalarField::constant(g, 1.0)));
  CHECK(scalar_dev(v.comp[0], 1.0 / 24) < 1e-15);
  CHECK(max_abs_diff(v, volume_form(g)) < 1e-15);
  // *vol = 1.
  CHECK(scalar_dev(hodge_dual(volume_form(g)).comp[0], 1.0) < 1e-15);
}

TEST_CASE("exterior derivative of explicit forms") {
  const TorusGrid g(4, 8);
  const DifferentialForm f = scalar_form(FieldExpr::parse("sin(x0)*cos(x1)").evaluate(g));
  const DifferentialForm df = exterior_derivative(f);
  CHECK(max_abs_diff(df.comp[0], FieldExpr::parse("cos(x0)*cos(x1)").evaluate(g)) < 1e-14);
  CHECK(max_abs_diff(df.comp[1], FieldExpr::parse("-sin(x0)*sin(x1)").evaluate(g)) < 1e-14);
  // d(sin(x1) dx^0) = -cos(x1) dx^0 ^ dx^1: stored entry -cos(x1)/2.
  std::vector<ScalarField> c(4, ScalarField::constant(g, 0.0));
  c[0] = FieldExpr::parse("sin(x1)").evaluate(g);
  const DifferentialForm d1 = exterior_derivative(one_form(c));
  const int t01[2] = {0, 1};
  ScalarField comp01(g);
  for (std::size_t p = 0; p < g.points(); ++p) comp01.v[p] = d1.value(t01, p);
  CHECK(max_abs_diff(comp01, FieldExpr::parse("-cos(x1)/2").evaluate(g)) < 1e-14);
}

TEST_CASE("property: ** = (-1)^{k(n-k)} and d^2 = 0") {
  for (int n : {2, 3, 4}) {
    FieldSampler s(100 + n);
    const TorusGrid g(n, n == 4 ? 6 : 8);
    for (int k = 0; k <= n; ++k) {
      const DifferentialForm w = random_form(s, g, k);
      const double sign = (k * (n - k)) % 2 == 0 ? 1.0 : -1.0;
      CHECK(max_abs_diff(hodge_dual(hodge_dual(w)), cplx(sign) * w) <= 1e-12);
      if (k + 2 <= n) CHECK(max_abs(exterior_derivative(exterior_derivative(w))) <= 1e-10);
    }
  }
}

TEST_CASE("property: Clifford action of a 1-form squares to |w|^2") {
  FieldSampler s(3);
  const TorusGrid g(4, 4);
  const GammaRep rep = euclidean_gammas(2);
  const DifferentialForm w = random_form(s, g, 1);
  const MatrixField c = clifford_action(w, rep);
  for (std::size_t p = 0; p < g.points(); p += 17) {
    cplx n2 = 0;
    for (int mu = 0; mu < 4; ++mu) n2 += w.comp[mu].v[p] * w.comp[mu].v[p];
    CHECK(max_abs(Mat(c.at(p) * c.at(p) - n2 * Mat::Identity(4, 4))) <= 1e-12);
  }
}

TEST_CASE("frame transforms invert each other on a curved frame") {
  FieldSampler s(8);
  const TorusGrid g(2, 8);
  std::vector<Eigen::MatrixXd> m(g.points());
  for (std::size_t p = 0; p < g.points(); ++p) {
    m[p] = Eigen::MatrixXd::Identity(2, 2);
    m[p](0, 1) = m[p](1, 0) = 0.3 * std::sin(g.coord(p, 0));
    m[p](1, 1) = 2.0;
  }
  const Vielbein v = vielbein_from_metric(g, m);
  const DifferentialForm w = random_form(s, g, 1);
  CHECK(max_abs_diff(from_frame(to_frame(w, v), v), w) <= 1e-13);
}

TEST_CASE("CSV export") {
  const TorusGrid g(2, 4);
  std::ostringstream os;
  write_csv(os, scalar_form(ScalarField::constant(g, 1.0)), "h");
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "point,x0,x1,h_re,h_im");
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == 16);
}
