#include "tstk/action.hpp"

#include <cmath>
#include <sstream>

#include "tstk/expr.hpp"

namespace tstk {

namespace {

void require_dim4(const GammaRep& rep) {
  if (rep.m != 2) throw DomainError("fermionic action: dimension 4 only");
}

Mat pauli_matrix(int j) { return pauli()[j - 1]; }

Mat weyl_block(const SpinorField& s, std::size_t p) {
  Mat v(2, 1);
  v(0, 0) = s.at(0, p);
  v(1, 0) = s.at(1, p);
  return v;
}

}  // namespace

SpinorField eigenspinor(int a, cplx alpha, const SpinorField& weyl, const GammaRep& rep) {
  require_dim4(rep);
  if (a < 0 || a > 3) throw DomainError("eigenspinor: a must be in 0..3");
  if (weyl.comps != 2) throw DomainError("eigenspinor: need a 2-component Weyl field");
  const Mat lower = sigma_tilde(a) / alpha;
  SpinorField psi(weyl.grid, 4);
  const std::size_t P = weyl.grid.points();
  for (std::size_t p = 0; p < P; ++p) {
    const Mat x = weyl_block(weyl, p);
    const Mat y = lower * x;
    psi.at(0, p) = x(0, 0);
    psi.at(1, p) = x(1, 0);
    psi.at(2, p) = y(0, 0);
    psi.at(3, p) = y(1, 0);
  }
  const SpinorField rpsi = SpinorOperator::constant(weyl.grid, rep[a]).apply(psi);
  const double dev = max_abs_diff(rpsi, alpha * psi);
  if (dev > kTolAlgebraic * std::max(1.0, max_abs(psi))) throw IdentityViolation("eigenspinor equation", dev);
  return psi;
}

cplx fermionic_form(const SpinorField& phi, const SpinorField& psi, const SpinorOperator& r, const SpinorOperator& d,
                    const RealStructure& j) {
  const SpinorField jphi = real_structure_operator(j, phi.grid).apply(phi);
  return inner(jphi, r.apply(d.apply(psi)));
}

cplx fermionic_closed_form(int a, const DifferentialForm& f, const SpinorField& eta, const SpinorField& zeta) {
  if (a < 0 || a > 3) throw DomainError("closed form: a must be in 0..3");
  if (f.k != 1 || f.grid.dim() != 4) throw DomainError("closed form: need a 1-form in dimension 4");
  if (eta.comps != 2 || zeta.comps != 2) throw DomainError("closed form: need 2-component Weyl fields");
  const TorusGrid& grid = zeta.grid;
  std::vector<SpinorField> dz;
  for (int mu = 0; mu < 4; ++mu) {
    const int axis[1] = {mu};
    dz.push_back(partial(zeta, axis, Deriv::spectral));
  }
  const Mat s2 = pauli_matrix(2);
  const Mat pre = a == 0 ? s2 : Mat(s2 * pauli_matrix(a));
  const std::size_t P = grid.points();
  std::vector<cplx> dens(P);
  for (std::size_t p = 0; p < P; ++p) {
    const Mat z = weyl_block(zeta, p);
    Mat op;
    if (a == 0) {
      op = kI * f.comp[0].v[p] * z;
      for (int j = 1; j <= 3; ++j) op -= pauli_matrix(j) * weyl_block(dz[j], p);
    } else {
      op = weyl_block(dz[0], p);
      for (int j = 1; j <= 3; ++j)
        if (j != a) op += kI * pauli_matrix(j) * weyl_block(dz[j], p);
      op += kI * f.comp[a].v[p] * pauli_matrix(a) * z;
    }
    dens[p] = 2.0 * (weyl_block(eta, p).transpose() * pre * op)(0, 0);
  }
  ScalarField density(grid);
  density.v = std::move(dens);
  return integrate(density);
}

Mat weyl_D(int mu, int a) {
  return sigma_up(2) * sigma_up(mu) * sigma_tilde(a) - sigma_tilde(a).transpose() * sigma_up(2) * sigma_tilde(mu);
}

Mat weyl_F(int mu, int a) {
  return sigma_up(2) * sigma_up(mu) * sigma_tilde(a) + sigma_tilde(a).transpose() * sigma_up(2) * sigma_tilde(mu);
}

double df_reduction_deviation(int a) {
  if (a < 0 || a > 3) throw DomainError("df_reduction_deviation: a must be in 0..3");
  // a = 0: D = -2 s2 ts0 ts^mu (mu != 0), F = 2 s2 ts0 ts0 delta_{mu 0};
  // a != 0: D = 2 s2 ts^a ts^mu (mu != a), F = -2 s2 ts^a ts^a delta_{mu a}.
  const double sd = a == 0 ? -2.0 : 2.0;
  const double sf = a == 0 ? 2.0 : -2.0;
  double dev = 0;
  for (int mu = 0; mu < 4; ++mu) {
    const Mat d = mu == a ? Mat(Mat::Zero(2, 2)) : Mat(sd * sigma_up(2) * sigma_tilde(a) * sigma_tilde(mu));
    const Mat f = mu == a ? Mat(sf * sigma_up(2) * sigma_tilde(a) * sigma_tilde(a)) : Mat(Mat::Zero(2, 2));
    dev = std::max({dev, max_abs(Mat(weyl_D(mu, a) - d)), max_abs(Mat(weyl_F(mu, a) - f))});
  }
  return dev;
}

FermionicCheck fermionic_check(int a, cplx alpha, const DifferentialForm& f, const SpinorField& eta,
                               const SpinorField& zeta, const GammaRep& rep, const RealStructure& j) {
  const SpinorField phi = eigenspinor(a, alpha, eta, rep);
  const SpinorField psi = eigenspinor(a, alpha, zeta, rep);
  const SpinorOperator r = SpinorOperator::constant(eta.grid, rep[a]);
  const SpinorOperator d = dirac_with_torsion(f, rep, flat_vielbein(eta.grid));
  FermionicCheck c;
  c.general = fermionic_form(phi, psi, r, d, j);
  c.closed = fermionic_closed_form(a, f, eta, zeta);
  c.relative_deviation = std::abs(c.general - c.closed) / std::max(std::abs(c.general), 1e-300);
  c.skew_ratio = c.general / fermionic_form(psi, phi, r, d, j);
  return c;
}

LorentzInvariance fermionic_lorentz_invariance(const SpinorField& phi, const SpinorField& psi, const SpinorOperator& r,
                                               const SpinorOperator& d, const RealStructure& j, const Mat& s) {
  const TorusGrid& grid = phi.grid;
  const SpinorOperator S = SpinorOperator::constant(grid, s);
  const SpinorOperator Sinv = SpinorOperator::constant(grid, s.inverse());
  const SpinorOperator d2 = compose({&S, &d, &Sinv});
  const SpinorField phi2 = S.apply(phi), psi2 = S.apply(psi);
  RealStructure j2 = j, j3 = j;
  j2.U = s * j.U * s.inverse().conjugate();
  j3.U = s * j.U * s.conjugate();
  const cplx a0 = fermionic_form(phi, psi, r, d, j);
  const double scale = std::max(std::abs(a0), 1e-300);
  return {std::abs(fermionic_form(phi2, psi2, r, d2, j2) - a0) / scale,
          std::abs(fermionic_form(phi2, psi2, r, d2, j3) - a0) / scale};
}

std::string to_string(Signature s) { return s == Signature::lorentzian ? "lorentzian" : "euclidean"; }

namespace {

// Closed-form operator coefficients: derivative matrices M_mu and the matrix
// N multiplying f_a (a = replaced axis).
struct WeylOperator {
  std::array<Mat, 4> m;
  Mat n;
};

WeylOperator closed_operator(int a) {
  WeylOperator w;
  const Mat one = Mat::Identity(2, 2);
  for (auto& x : w.m) x = Mat::Zero(2, 2);
  if (a == 0) {
    for (int j = 1; j <= 3; ++j) w.m[j] = -pauli_matrix(j);
    w.n = kI * one;
  } else {
    w.m[0] = one;
    for (int j = 1; j <= 3; ++j)
      if (j != a) w.m[j] = kI * pauli_matrix(j);
    w.n = kI * pauli_matrix(a);
  }
  return w;
}

// Analytic Weyl field zeta = e^{c x_a} xi with xi independent of x_a.
std::array<FieldExpr, 2> plane_wave(int a, cplx c) {
  std::vector<std::string> x;
  for (int mu = 0; mu < 4; ++mu)
    if (mu != a) x.push_back("x" + std::to_string(mu));
  std::ostringstream pre;
  pre.precision(17);
  pre << "exp((" << c.real() << "+" << c.imag() << "*i)*x" << a << ")";
  const std::string xi0 = "(sin(" + x[0] + "+0.3) + i*cos(" + x[1] + "-" + x[2] + "))";
  const std::string xi1 = "(exp(i*" + x[2] + ") + 0.5*cos(" + x[0] + "+2*" + x[1] + "))";
  return {FieldExpr::parse(pre.str() + "*" + xi0), FieldExpr::parse(pre.str() + "*" + xi1)};
}

}  // namespace

SignatureResult signature_classify(int a, const std::array<double, 4>& f) {
  if (a < 0 || a > 3) throw DomainError("signature_classify: R must be a single Dirac matrix gamma^a, a in 0..3");
  const WeylOperator w = closed_operator(a);
  // On zeta = e^{c x_a} xi: d_a zeta = c zeta, with c = i f_0 (a = 0) or f_a.
  const cplx unit = a == 0 ? kI : cplx(1.0);
  std::array<Mat, 4> eff = w.m;
  eff[a] += w.n / unit;

  // Principal symbol det(sum eff_mu k_mu) as a quadratic form, by polarization.
  auto q = [&](const Eigen::Vector4d& k) {
    Mat s = Mat::Zero(2, 2);
    for (int mu = 0; mu < 4; ++mu) s += k[mu] * eff[mu];
    return s.determinant();
  };
  Eigen::Matrix4d form;
  double imag = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Eigen::Vector4d ei = Eigen::Vector4d::Unit(i), ej = Eigen::Vector4d::Unit(j);
      const cplx v = 0.5 * (q(ei + ej) - q(ei) - q(ej));
      form(i, j) = v.real();
      imag = std::max(imag, std::abs(v.imag()));
    }
  if (imag > kTolAlgebraic) throw IdentityViolation("principal symbol is not real", imag);
  const Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(form).eigenvalues();
  SignatureResult r{};
  for (int i = 0; i < 4; ++i) {
    if (ev[i] > kTolAlgebraic) ++r.symbol_inertia[0];
    else if (ev[i] < -kTolAlgebraic) ++r.symbol_inertia[1];
    else ++r.symbol_inertia[2];
  }
  const auto& in = r.symbol_inertia;
  if (in[2] == 0 && (in[0] == 4 || in[1] == 4)) r.signature = Signature::euclidean;
  else if (in[2] == 0 && (in[0] == 1 || in[1] == 1)) r.signature = Signature::lorentzian;
  else throw IdentityViolation("principal symbol is degenerate", 0.0);
  r.replaced_axis = a;

  // Witness: closed operator applied to the analytic plane wave equals
  // sum eff_mu d_mu, pointwise with exact jets.
  const cplx c = unit * f[a];
  const auto zeta = plane_wave(a, c);
  double dev = 0;
  for (int s = 0; s < 64; ++s) {
    const double x[4] = {0.1 + 0.37 * s, 1.3 + 0.71 * s, 2.9 + 0.53 * s, 0.4 + 0.29 * s};
    const Jet j0 = zeta[0].eval_jet(x), j1 = zeta[1].eval_jet(x);
    Mat z(2, 1);
    z << j0.v, j1.v;
    std::array<Mat, 4> dz;
    for (int mu = 0; mu < 4; ++mu) {
      dz[mu] = Mat(2, 1);
      dz[mu] << j0.d[mu], j1.d[mu];
    }
    Mat lhs = w.n * f[a] * z;
    Mat rhs = Mat::Zero(2, 1);
    for (int mu = 0; mu < 4; ++mu) {
      lhs += w.m[mu] * dz[mu];
      rhs += eff[mu] * dz[mu];
    }
    dev = std::max(dev, max_abs(Mat(lhs - rhs)) / std::max(1.0, max_abs(lhs)));
  }
  r.witness_deviation = dev;

  r.grid_witness_run = a == 0 && f[0] == std::round(f[0]);
  if (r.grid_witness_run) {
    const TorusGrid grid(4, 8);
    SpinorField z(grid, 2);
    for (int comp = 0; comp < 2; ++comp) {
      const ScalarField v = zeta[comp].evaluate(grid);
      std::copy(v.v.begin(), v.v.end(), z.component(comp));
    }
    double gdev = 0;
    std::vector<SpinorField> dz;
    for (int mu = 0; mu < 4; ++mu) {
      const int axis[1] = {mu};
      dz.push_back(partial(z, axis, Deriv::spectral));
    }
    for (std::size_t p = 0; p < grid.points(); ++p) {
      Mat zp(2, 1);
      zp << z.at(0, p), z.at(1, p);
      Mat lhs = w.n * f[0] * zp, rhs = Mat::Zero(2, 1);
      for (int mu = 0; mu < 4; ++mu) {
        Mat d(2, 1);
        d << dz[mu].at(0, p), dz[mu].at(1, p);
        lhs += w.m[mu] * d;
        rhs += eff[mu] * d;
      }
      gdev = std::max(gdev, max_abs(Mat(lhs - rhs)) / std::max(1.0, max_abs(lhs)));
    }
    r.grid_witness_deviation = gdev;
  }
  return r;
}

}  // namespace tstk
