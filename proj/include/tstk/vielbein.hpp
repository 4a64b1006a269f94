#pragma once

#include <vector>

#include "tstk/fields.hpp"

namespace tstk {

// Per-point frame e^a_mu (matrix rows a, columns mu), its inverse e^mu_a and
// the metric g_{mu nu}, all column-major n x n. A flat vielbein stores one point.
struct Vielbein {
  TorusGrid grid;
  bool flat = true;
  std::vector<double> e, einv, g, sqrt_det;

  int n() const { return grid.dim(); }
  std::size_t slot(std::size_t p) const { return flat ? 0 : p; }
  Eigen::Map<const Eigen::MatrixXd> e_at(std::size_t p) const { return map(e, p); }
  Eigen::Map<const Eigen::MatrixXd> einv_at(std::size_t p) const { return map(einv, p); }
  Eigen::Map<const Eigen::MatrixXd> g_at(std::size_t p) const { return map(g, p); }
  double sqrt_det_at(std::size_t p) const { return sqrt_det[slot(p)]; }

 private:
  Eigen::Map<const Eigen::MatrixXd> map(const std::vector<double>& a, std::size_t p) const {
    const std::size_t nn = static_cast<std::size_t>(n()) * n();
    return Eigen::Map<const Eigen::MatrixXd>(a.data() + slot(p) * nn, n(), n());
  }
};

Vielbein flat_vielbein(const TorusGrid& grid);

// g: one symmetric n x n matrix per grid point. Throws DomainError naming the
// first point where g is not positive definite.
Vielbein vielbein_from_metric(const TorusGrid& grid, const std::vector<Eigen::MatrixXd>& g);

// Max deviation of e^a_mu e^mu_b = delta and g = e^T e.
double vielbein_deviation(const Vielbein& v);

// Sum f sqrt(det g) Delta^n.
cplx integrate(const ScalarField& f, const Vielbein& frame);

}  // namespace tstk
