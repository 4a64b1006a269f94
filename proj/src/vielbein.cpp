#include "tstk/vielbein.hpp"

#include <cmath>

#include "tstk/kernels.hpp"

namespace tstk {

Vielbein flat_vielbein(const TorusGrid& grid) {
  Vielbein v{grid, true, {}, {}, {}, {}};
  const int n = grid.dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  v.flat = true;
  v.e.assign(id.data(), id.data() + n * n);
  v.einv = v.e;
  v.g = v.e;
  v.sqrt_det = {1.0};
  return v;
}

Vielbein vielbein_from_metric(const TorusGrid& grid, const std::vector<Eigen::MatrixXd>& g) {
  if (g.size() != grid.points()) throw DomainError("vielbein_from_metric: one metric per grid point required");
  const int n = grid.dim();
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  Vielbein v{grid, true, {}, {}, {}, {}};
  v.flat = false;
  v.e.resize(grid.points() * nn);
  v.einv.resize(grid.points() * nn);
  v.g.resize(grid.points() * nn);
  v.sqrt_det.resize(grid.points());
  for (std::size_t p = 0; p < grid.points(); ++p) {
    const Eigen::MatrixXd& gp = g[p];
    if (gp.rows() != n || gp.cols() != n) throw DomainError("vielbein_from_metric: metric has wrong size");
    if ((gp - gp.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1 + gp.cwiseAbs().maxCoeff()))
      throw DomainError("vielbein_from_metric: metric not symmetric at point " + std::to_string(p));
    Eigen::LLT<Eigen::MatrixXd> llt(gp);
    if (llt.info() != Eigen::Success)
      throw DomainError("vielbein_from_metric: metric not positive definite at point " + std::to_string(p));
    // g = L L^T, so e^a_mu = L_{mu a}.
    const Eigen::MatrixXd e = llt.matrixL().transpose();
    const Eigen::MatrixXd einv = e.inverse();
    std::copy(e.data(), e.data() + nn, v.e.begin() + p * nn);
    std::copy(einv.data(), einv.data() + nn, v.einv.begin() + p * nn);
    std::copy(gp.data(), gp.data() + nn, v.g.begin() + p * nn);
    v.sqrt_det[p] = e.determinant();
  }
  return v;
}

double vielbein_deviation(const Vielbein& v) {
  const int n = v.n();
  const std::size_t count = v.flat ? 1 : v.grid.points();
  double dev = 0;
  for (std::size_t p = 0; p < count; ++p) {
    const Eigen::MatrixXd e = v.e_at(p), einv = v.einv_at(p), g = v.g_at(p);
    dev = std::max(dev, (e * einv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
    dev = std::max(dev, (e.transpose() * e - g).cwiseAbs().maxCoeff());
  }
  return dev;
}

cplx integrate(const ScalarField& f, const Vielbein& frame) {
  if (frame.flat) return integrate(f);
  std::vector<cplx> w(f.size());
  for (std::size_t p = 0; p < f.size(); ++p) w[p] = f.v[p] * frame.sqrt_det_at(p);
  return kernels::blocked_sum(w.data(), w.size()) * f.grid.cell_volume();
}

}  // namespace tstk
