#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "tstk/clifford.hpp"
#include "tstk/vielbein.hpp"

namespace tstk {

// Increasing k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> sorted_tuples(int n, int k);

// Degree-k form stored on increasing index tuples; the component on any other
// tuple follows by antisymmetry. Components are the fully antisymmetric
// tensor entries, omega = sum over all tuples omega_{mu..} dx^mu ^ ...
struct DifferentialForm {
  TorusGrid grid;
  int k;
  std::vector<std::vector<int>> tuples;
  std::vector<ScalarField> comp;

  DifferentialForm(const TorusGrid& g, int degree);

  // (sign, slot) for an arbitrary tuple; sign 0 on a repeated index.
  std::pair<int, int> locate(std::span<const int> idx) const;
  cplx value(std::span<const int> idx, std::size_t p) const;
  ScalarField& operator[](std::span<const int> sorted_idx);
};

DifferentialForm scalar_form(const ScalarField& f);
DifferentialForm one_form(const std::vector<ScalarField>& f);
DifferentialForm volume_form(const TorusGrid& grid);

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm operator*(cplx s, const DifferentialForm& a);
double max_abs(const DifferentialForm& a);
double max_abs_diff(const DifferentialForm& a, const DifferentialForm& b);

DifferentialForm hodge_dual(const DifferentialForm& w);
DifferentialForm hodge_dual(const DifferentialForm& w, const Vielbein& frame);
DifferentialForm partial(const DifferentialForm& w, int mu, Deriv scheme = Deriv::spectral);
DifferentialForm exterior_derivative(const DifferentialForm& w, Deriv scheme = Deriv::spectral);
DifferentialForm codifferential(const DifferentialForm& w, Deriv scheme = Deriv::spectral);

// Frame components omega_{a1..ak} = e^{mu1}_{a1} ... omega_{mu1..mk}, and back.
DifferentialForm to_frame(const DifferentialForm& w, const Vielbein& frame);
DifferentialForm from_frame(const DifferentialForm& w, const Vielbein& frame);

MatrixField clifford_action(const DifferentialForm& w, const GammaRep& rep);
MatrixField clifford_action(const DifferentialForm& w, const GammaRep& rep, const Vielbein& frame);

// CSV: point, x0..x{n-1}, then one re/im column pair per stored component.
void write_csv(std::ostream& os, const DifferentialForm& w, const std::string& name);

}  // namespace tstk
