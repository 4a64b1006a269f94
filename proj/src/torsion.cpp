#include "tstk/torsion.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace tstk {

Tensor3Field::Tensor3Field(const TorusGrid& g)
    : grid(g), v(g.points() * static_cast<std::size_t>(g.dim() * g.dim() * g.dim()), 0.0) {}

namespace {

void require_same(const Tensor3Field& a, const Tensor3Field& b) {
  if (!(a.grid == b.grid)) throw DomainError("tensor fields live on different grids");
}

void require_frame(const TorusGrid& g, const Vielbein& frame) {
  if (!(g == frame.grid)) throw DomainError("tensor field and frame live on different grids");
}

Eigen::MatrixXd inverse_metric(const Vielbein& frame, std::size_t p) {
  const Eigen::MatrixXd ei = frame.einv_at(p);  // rows mu, cols a
  return ei * ei.transpose();
}

// d_l of every entry of a per-point n x n real matrix array (column-major).
std::vector<std::vector<double>> matrix_gradient(const TorusGrid& grid, const std::vector<double>& data,
                                                 Deriv scheme) {
  const int n = grid.dim();
  const std::size_t nn = static_cast<std::size_t>(n) * n, P = grid.points();
  std::vector<std::vector<double>> out(n, std::vector<double>(P * nn));
  ScalarField entry(grid);
  entry.band_limited = scheme == Deriv::spectral;
  for (std::size_t e = 0; e < nn; ++e) {
    for (std::size_t p = 0; p < P; ++p) entry.v[p] = data[p * nn + e];
    for (int l = 0; l < n; ++l) {
      const ScalarField d = partial(entry, l, scheme);
      for (std::size_t p = 0; p < P; ++p) out[l][p * nn + e] = d.v[p].real();
    }
  }
  return out;
}

}  // namespace

Tensor3Field operator+(const Tensor3Field& a, const Tensor3Field& b) {
  require_same(a, b);
  Tensor3Field r = a;
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += b.v[i];
  return r;
}

Tensor3Field operator-(const Tensor3Field& a, const Tensor3Field& b) { return a + (-1.0) * b; }

Tensor3Field operator*(double s, const Tensor3Field& a) {
  Tensor3Field r = a;
  for (auto& x : r.v) x *= s;
  return r;
}

double max_abs(const Tensor3Field& a) {
  double m = 0;
  for (double x : a.v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const Tensor3Field& a, const Tensor3Field& b) {
  require_same(a, b);
  double m = 0;
  for (std::size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return m;
}

Contorsion make_contorsion(const Tensor3Field& upper, const Vielbein& frame) {
  require_frame(upper.grid, frame);
  Contorsion k{upper, Tensor3Field(upper.grid)};
  const int n = upper.n();
  for (std::size_t p = 0; p < upper.grid.points(); ++p) {
    const auto g = frame.g_at(p);
    for (int l = 0; l < n; ++l)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
          double s = 0;
          for (int r = 0; r < n; ++r) s += g(l, r) * upper(p, r, mu, nu);
          k.flat(p, l, mu, nu) = s;
        }
  }
  return k;
}

Contorsion contorsion_from_flat(const Tensor3Field& flat, const Vielbein& frame) {
  require_frame(flat.grid, frame);
  Contorsion k{Tensor3Field(flat.grid), flat};
  const int n = flat.n();
  for (std::size_t p = 0; p < flat.grid.points(); ++p) {
    const Eigen::MatrixXd gi = inverse_metric(frame, p);
    for (int l = 0; l < n; ++l)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
          double s = 0;
          for (int r = 0; r < n; ++r) s += gi(l, r) * flat(p, r, mu, nu);
          k.upper(p, l, mu, nu) = s;
        }
  }
  return k;
}

double contorsion_consistency(const Contorsion& k, const Vielbein& frame) {
  return max_abs_diff(make_contorsion(k.upper, frame).flat, k.flat);
}

ConnectionField christoffel(const Vielbein& frame, Deriv scheme) {
  const TorusGrid& grid = frame.grid;
  ConnectionField out(grid);
  if (frame.flat) return out;
  const int n = grid.dim();
  const auto dg = matrix_gradient(grid, frame.g, scheme);
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  auto dG = [&](int l, std::size_t p, int a, int b) { return dg[l][p * nn + a + b * n]; };
  for (std::size_t p = 0; p < grid.points(); ++p) {
    const Eigen::MatrixXd gi = inverse_metric(frame, p);
    for (int l = 0; l < n; ++l)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = mu; nu < n; ++nu) {
          double s = 0;
          for (int r = 0; r < n; ++r) s += gi(l, r) * (dG(mu, p, r, nu) + dG(nu, p, r, mu) - dG(r, p, mu, nu));
          out(p, l, mu, nu) = out(p, l, nu, mu) = 0.5 * s;
        }
  }
  return out;
}

double metric_compatibility(const ConnectionField& gamma, const Vielbein& frame, Deriv scheme) {
  require_frame(gamma.grid, frame);
  const TorusGrid& grid = frame.grid;
  const int n = grid.dim();
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  std::vector<std::vector<double>> dg;
  if (!frame.flat) dg = matrix_gradient(grid, frame.g, scheme);
  double worst = 0;
  for (std::size_t p = 0; p < grid.points(); ++p) {
    const auto g = frame.g_at(p);
    for (int l = 0; l < n; ++l)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
          double s = frame.flat ? 0.0 : dg[l][p * nn + mu + nu * n];
          for (int r = 0; r < n; ++r) s -= gamma(p, r, l, mu) * g(r, nu) + gamma(p, r, l, nu) * g(mu, r);
          worst = std::max(worst, std::abs(s));
        }
  }
  return worst;
}

Contorsion contorsion(const ConnectionField& gamma, const Vielbein& frame, Deriv scheme) {
  require_frame(gamma.grid, frame);
  return make_contorsion(gamma - christoffel(frame, scheme), frame);
}

Tensor3Field torsion_tensor(const ConnectionField& gamma) {
  Tensor3Field t(gamma.grid);
  const int n = gamma.n();
  for (std::size_t p = 0; p < gamma.grid.points(); ++p)
    for (int l = 0; l < n; ++l)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) t(p, l, mu, nu) = gamma(p, l, mu, nu) - gamma(p, l, nu, mu);
  return t;
}

ContorsionClass classify_contorsion(const Contorsion& k, double tol) {
  ContorsionClass c{};
  const int n = k.flat.n();
  for (std::size_t p = 0; p < k.flat.grid.points(); ++p)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int e = 0; e < n; ++e) {
          const double kf = k.flat(p, a, b, e);
          c.orthogonal_dev = std::max(c.orthogonal_dev, std::abs(kf + k.flat(p, e, b, a)));
          c.geodesic_dev = std::max(c.geodesic_dev, std::abs(k.upper(p, a, b, e) + k.upper(p, a, e, b)));
          c.antisymmetric_dev = std::max({c.antisymmetric_dev, std::abs(kf + k.flat(p, e, b, a)),
                                          std::abs(kf + k.flat(p, a, e, b)), std::abs(kf + k.flat(p, b, a, e))});
        }
  c.orthogonal = c.orthogonal_dev <= tol;
  c.geodesic_preserving = c.geodesic_dev <= tol;
  c.totally_antisymmetric = c.antisymmetric_dev <= tol;
  if ((c.orthogonal && c.geodesic_preserving) != c.totally_antisymmetric)
    throw IdentityViolation("contorsion classification disagreement",
                            std::max({c.orthogonal_dev, c.geodesic_dev, c.antisymmetric_dev}));
  return c;
}

SpinConnection spin_lift(const ConnectionField& gamma, const GammaRep& rep, const Vielbein& frame, Deriv scheme) {
  require_frame(gamma.grid, frame);
  const TorusGrid& grid = frame.grid;
  const int n = grid.dim();
  if (n != rep.dim()) throw DomainError("spin_lift: gamma and grid dimensions differ");
  const Contorsion k = contorsion(gamma, frame, scheme);
  const ContorsionClass cls = classify_contorsion(k, kTolDerivative);
  if (!cls.orthogonal) throw DomainError("spin_lift: connection is not orthogonal");
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  std::vector<std::vector<double>> de;
  if (!frame.flat) de = matrix_gradient(grid, frame.e, scheme);
  const int d = rep.spin_dim();
  SpinConnection s;
  for (int mu = 0; mu < n; ++mu) s.omega.emplace_back(grid, d, false);
  for (std::size_t p = 0; p < grid.points(); ++p) {
    const auto g = frame.g_at(p);
    const auto e = frame.e_at(p);
    const auto ei = frame.einv_at(p);
    std::vector<Mat> local(n, Mat::Zero(d, d));
    for (int nu = 0; nu < n; ++nu)
      for (int a = 0; a < n; ++a) local[nu] += ei(nu, a) * rep[a];
    for (int mu = 0; mu < n; ++mu) {
      Mat w = Mat::Zero(d, d);
      for (int nu = 0; nu < n; ++nu)
        for (int l = 0; l < n; ++l) {
          double c = 0;
          for (int r = 0; r < n; ++r) c += gamma(p, r, mu, nu) * g(r, l);
          if (!frame.flat)
            for (int a = 0; a < n; ++a) c -= e(a, l) * de[mu][p * nn + a + nu * n];
          if (c != 0.0) w += c * local[nu] * local[l];
        }
      s.omega[mu].at(p) = 0.25 * w;
    }
  }
  return s;
}

SpinConnection spin_lift(const Contorsion& k, const GammaRep& rep) {
  const TorusGrid& grid = k.flat.grid;
  const int n = grid.dim();
  if (n != rep.dim()) throw DomainError("spin_lift: gamma and grid dimensions differ");
  if (!classify_contorsion(k).orthogonal) throw DomainError("spin_lift: contorsion is not orthogonal");
  const int d = rep.spin_dim();
  std::vector<std::vector<Mat>> pair(n, std::vector<Mat>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) pair[a][b] = rep[a] * rep[b];
  SpinConnection s;
  for (int mu = 0; mu < n; ++mu) s.omega.emplace_back(grid, d, false);
  for (std::size_t p = 0; p < grid.points(); ++p)
    for (int mu = 0; mu < n; ++mu) {
      Mat w = Mat::Zero(d, d);
      for (int nu = 0; nu < n; ++nu)
        for (int l = 0; l < n; ++l) {
          const double c = k.flat(p, nu, l, mu);
          if (c != 0.0) w += c * pair[nu][l];
        }
      s.omega[mu].at(p) = 0.25 * w;
    }
  return s;
}

SpinorOperator dirac_from_spin_connection(const SpinConnection& s, const GammaRep& rep, const Vielbein& frame) {
  const TorusGrid& grid = frame.grid;
  const int n = grid.dim(), d = rep.spin_dim();
  if (static_cast<int>(s.omega.size()) != n) throw DomainError("spin connection has wrong number of components");
  SpinorOperator op(grid, d);
  std::vector<MatrixField> local;
  for (int mu = 0; mu < n; ++mu) {
    if (frame.flat) {
      local.push_back(MatrixField::constant(grid, rep[mu]));
    } else {
      MatrixField g(grid, d, false);
      for (std::size_t p = 0; p < grid.points(); ++p) {
        Mat m = Mat::Zero(d, d);
        for (int a = 0; a < n; ++a) m += frame.einv_at(p)(mu, a) * rep[a];
        g.at(p) = m;
      }
      local.push_back(std::move(g));
    }
    op.add_term(-kI * local[mu], {mu});
  }
  MatrixField zero = MatrixField::zero(grid, d);
  for (int mu = 0; mu < n; ++mu) zero = zero + product(local[mu], s.omega[mu], false);
  op.add_term(-kI * zero, {});
  return op.canonical();
}

Contorsion contorsion_from_threeform(const DifferentialForm& w, const Vielbein& frame) {
  if (w.k != 3) throw DomainError("contorsion_from_threeform: need a 3-form");
  Tensor3Field flat(w.grid);
  const int n = w.grid.dim();
  for (std::size_t p = 0; p < w.grid.points(); ++p)
    for (int l = 0; l < n; ++l)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
          const int idx[3] = {l, mu, nu};
          const cplx z = w.value(idx, p);
          if (std::abs(z.imag()) > kTolAlgebraic * std::max(1.0, std::abs(z)))
            throw DomainError("contorsion_from_threeform: complex component");
          flat(p, l, mu, nu) = z.real();
        }
  return contorsion_from_flat(flat, frame);
}

DifferentialForm threeform_from_contorsion(const Contorsion& k) {
  if (!classify_contorsion(k).totally_antisymmetric) throw DomainError("contorsion is not a 3-form");
  DifferentialForm w(k.flat.grid, 3);
  for (std::size_t t = 0; t < w.tuples.size(); ++t) {
    const auto& i = w.tuples[t];
    for (std::size_t p = 0; p < k.flat.grid.points(); ++p) w.comp[t].v[p] = k.flat(p, i[0], i[1], i[2]);
  }
  return w;
}

Contorsion torsion_from_oneform(const DifferentialForm& omega, const Vielbein& frame) {
  return torsion_from_oneform(omega, frame, kTorsionScale);
}

Contorsion torsion_from_oneform(const DifferentialForm& omega, const Vielbein& frame, double scale) {
  if (omega.grid.dim() != 4) throw DomainError("torsion_from_oneform: dimension 4 only");
  if (omega.k != 1) throw DomainError("torsion_from_oneform: need a 1-form");
  return contorsion_from_threeform(cplx(scale) * hodge_dual(omega, frame), frame);
}

DifferentialForm oneform_from_torsion(const Contorsion& k, const Vielbein& frame) {
  const DifferentialForm star = hodge_dual(threeform_from_contorsion(k), frame);
  // ** = (-1)^{k(n-k)} = -1 on 1-forms in dimension 4.
  return cplx(-1.0 / kTorsionScale) * star;
}

void write_csv(std::ostream& os, const Contorsion& k) {
  const int n = k.flat.n();
  os << "point";
  for (int mu = 0; mu < n; ++mu) os << ",x" << mu;
  for (int l = 0; l < n; ++l)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) os << ",K" << l << mu << nu;
  os << '\n';
  os.precision(17);
  for (std::size_t p = 0; p < k.flat.grid.points(); ++p) {
    os << p;
    for (int mu = 0; mu < n; ++mu) os << ',' << k.flat.grid.coord(p, mu);
    for (int l = 0; l < n; ++l)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) os << ',' << k.flat(p, l, mu, nu);
    os << '\n';
  }
}

}  // namespace tstk
