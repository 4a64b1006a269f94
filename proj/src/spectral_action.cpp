#include "tstk/action.hpp"

#include <cmath>

#include "tstk/kernels.hpp"

namespace tstk {

namespace {

struct PointTraces {
  cplx tr_e = 0, tr_b1 = 0, tr_btilde = 0, tr_e2 = 0, tr_omega2 = 0, tr_b1sq = 0, tr_gggg = 0;
  double f2 = 0, grad_identity = 0;
  double imag_e = 0;
};

}  // namespace

HeatCoefficients heat_coefficients(const DifferentialForm& f, const GammaRep& rep, Deriv scheme) {
  const int n = rep.dim(), d = rep.spin_dim();
  if (f.k != 1 || f.grid.dim() != n) throw DomainError("heat_coefficients: need a 1-form on a grid of dimension 2m");
  for (const auto& c : f.comp)
    if (c.max_imag() > kTolAlgebraic) throw DomainError("heat_coefficients: torsion 1-form must be real");
  const TorusGrid& grid = f.grid;
  const std::size_t P = grid.points();

  std::vector<std::vector<ScalarField>> df(n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) df[mu].push_back(partial(f.comp[nu], mu, scheme));

  // C[mu][nu] = [gamma^mu, gamma^nu] Gamma, so that omega-bar_mu = 1/2 C[mu][nu] f_nu.
  std::vector<std::vector<Mat>> C(n, std::vector<Mat>(n));
  std::vector<std::vector<Mat>> GG(n, std::vector<Mat>(n));
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      C[mu][nu] = (rep[mu] * rep[nu] - rep[nu] * rep[mu]) * rep.grading;
      GG[mu][nu] = rep[mu] * rep[nu];
    }
  const Mat id = rep.identity();

  std::vector<PointTraces> pt(P);
#pragma omp parallel for schedule(static)
  for (std::size_t p = 0; p < P; ++p) {
    std::vector<Mat> w(n, Mat::Zero(d, d));
    std::vector<std::vector<Mat>> dw(n, std::vector<Mat>(n, Mat::Zero(d, d)));  // dw[lam][mu] = d_lam omega_mu
    double f2 = 0;
    for (int mu = 0; mu < n; ++mu) {
      f2 += std::norm(f.comp[mu].v[p]);
      for (int nu = 0; nu < n; ++nu) {
        w[mu] += 0.5 * f.comp[nu].v[p].real() * C[mu][nu];
        for (int lam = 0; lam < n; ++lam) dw[lam][mu] += 0.5 * df[lam][nu].v[p].real() * C[mu][nu];
      }
    }
    Mat b1 = Mat::Zero(d, d), bt = Mat::Zero(d, d);
    for (int mu = 0; mu < n; ++mu) {
      for (int nu = 0; nu < n; ++nu) b1 += df[mu][nu].v[p].real() * GG[mu][nu];
      bt -= dw[mu][mu] + w[mu] * w[mu];
    }
    b1 = b1 * rep.grading;
    const Mat e = b1 - f2 * id + bt;
    PointTraces& t = pt[p];
    t.f2 = f2;
    t.tr_e = e.trace();
    t.imag_e = std::abs(t.tr_e.imag());
    t.tr_b1 = b1.trace();
    t.tr_btilde = bt.trace();
    t.tr_e2 = (e * e).trace();
    t.tr_b1sq = (b1 * b1).trace();
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) {
        const Mat om = dw[mu][nu] - dw[nu][mu] + w[mu] * w[nu] - w[nu] * w[mu];
        t.tr_omega2 += (om * om).trace();
      }
    double div = 0, sym = 0, sq = 0;
    for (int mu = 0; mu < n; ++mu) {
      div += df[mu][mu].v[p].real();
      for (int nu = 0; nu < n; ++nu) {
        sym += df[mu][nu].v[p].real() * df[nu][mu].v[p].real();
        sq += df[mu][nu].v[p].real() * df[mu][nu].v[p].real();
        for (int rho = 0; rho < n; ++rho)
          for (int lam = 0; lam < n; ++lam)
            t.tr_gggg += (GG[mu][nu] * GG[rho][lam]).trace() * df[mu][nu].v[p].real() * df[rho][lam].v[p].real();
      }
    }
    t.grad_identity = div * div + sym - sq;
  }

  auto integral = [&](auto get) {
    ScalarField s(grid);
    for (std::size_t p = 0; p < P; ++p) s.v[p] = get(pt[p]);
    return integrate(s);
  };
  const double tr1 = static_cast<double>(d);
  const double norm = 1.0 / std::pow(4 * kPi, rep.m);
  const double norm4 = norm / 360.0;

  HeatCoefficients h;
  h.a0 = norm * tr1 * grid.cell_volume() * static_cast<double>(P);
  h.a2 = norm * integral([](const PointTraces& t) { return t.tr_e; });
  h.a2_printed =
      norm * integral([&](const PointTraces& t) { return -tr1 * t.f2 + t.tr_b1 + t.tr_btilde; });
  h.trace_b1 = integral([](const PointTraces& t) { return t.tr_b1; });
  h.a4_raw = norm4 * integral([](const PointTraces& t) { return 180.0 * t.tr_e2 + 30.0 * t.tr_omega2; });
  // Flat metric: the curvature-corrected b1' vanishes.
  h.a4_form1 = norm4 * integral([&](const PointTraces& t) {
    const double f4 = t.f2 * t.f2;
    return 180.0 * tr1 * f4 + 180.0 * t.tr_gggg + 30.0 * t.tr_omega2 + 180.0 * (t.tr_e2 - tr1 * f4);
  });
  h.a4_form2 = norm4 * integral([&](const PointTraces& t) {
    const double f4 = t.f2 * t.f2;
    return 180.0 * tr1 * f4 + 30.0 * t.tr_omega2 + 180.0 * tr1 * t.grad_identity + 180.0 * (t.tr_e2 - tr1 * f4);
  });
  h.a4_form2_literal = norm4 * integral([&](const PointTraces& t) {
    const double f4 = t.f2 * t.f2;
    return 180.0 * f4 + 30.0 * t.tr_omega2 + 180.0 * t.grad_identity + 180.0 * (t.tr_e2 - f4);
  });
  h.trace_b1_squared = norm4 * integral([](const PointTraces& t) { return 180.0 * t.tr_b1sq; });
  for (const auto& t : pt) h.max_imag_E = std::max(h.max_imag_E, t.imag_e);
  return h;
}

Mat mode_matrix(const GammaRep& rep, const std::array<double, 4>& k, const std::array<double, 4>& f) {
  if (rep.m != 2) throw DomainError("mode_matrix: dimension 4 only");
  Mat out = Mat::Zero(4, 4);
  for (int mu = 0; mu < 4; ++mu) out += k[mu] * rep[mu] - kI * f[mu] * rep[mu] * rep.grading;
  return out;
}

namespace {

using Mat4 = Eigen::Matrix4cd;

// Sum over one k_0 slice of the cube of Tr exp(-D D^dagger / Lambda^2), for all Lambda.
void slice_traces(const GammaRep& rep, const std::array<double, 4>& f, const std::vector<double>& inv_l2, int cutoff,
                  double k0, int i0, double* out) {
  const Mat4 g[4] = {rep[0], rep[1], rep[2], rep[3]};
  Mat4 shift = Mat4::Zero();
  for (int mu = 0; mu < 4; ++mu) shift -= kI * f[mu] * g[mu] * Mat4(rep.grading);
  Eigen::SelfAdjointEigenSolver<Mat4> es;
  const double a = k0 * i0;
  for (int i1 = -cutoff; i1 <= cutoff; ++i1)
    for (int i2 = -cutoff; i2 <= cutoff; ++i2)
      for (int i3 = -cutoff; i3 <= cutoff; ++i3) {
        const Mat4 D = a * g[0] + (k0 * i1) * g[1] + (k0 * i2) * g[2] + (k0 * i3) * g[3] + shift;
        es.compute(D * D.adjoint(), Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        for (std::size_t l = 0; l < inv_l2.size(); ++l)
          for (int j = 0; j < 4; ++j) out[l] += std::exp(-ev[j] * inv_l2[l]);
      }
}

template <bool Parallel>
std::vector<double> mode_sum(const std::array<double, 4>& f, const std::vector<double>& lambdas, int cutoff,
                             const GammaRep& rep, double period) {
  if (rep.m != 2) throw DomainError("Fourier oracle: dimension 4 only");
  if (cutoff < 1) throw DomainError("Fourier oracle: cutoff must be positive");
  std::vector<double> inv_l2;
  for (double l : lambdas) {
    if (!(l > 0)) throw DomainError("Fourier oracle: Lambda must be positive");
    inv_l2.push_back(1.0 / (l * l));
  }
  const double k0 = 2 * kPi / period;
  const int slices = 2 * cutoff + 1;
  const std::size_t nl = lambdas.size();
  std::vector<double> part(slices * nl, 0.0);
  if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < slices; ++s) slice_traces(rep, f, inv_l2, cutoff, k0, s - cutoff, part.data() + s * nl);
  } else {
    for (int s = 0; s < slices; ++s) slice_traces(rep, f, inv_l2, cutoff, k0, s - cutoff, part.data() + s * nl);
  }
  std::vector<double> out(nl, 0.0);
  for (int s = 0; s < slices; ++s)
    for (std::size_t l = 0; l < nl; ++l) out[l] += part[s * nl + l];
  return out;
}

}  // namespace

std::vector<double> fourier_traces(const std::array<double, 4>& f, const std::vector<double>& lambdas, int cutoff,
                                   const GammaRep& rep, double period) {
  return mode_sum<true>(f, lambdas, cutoff, rep, period);
}

std::vector<double> fourier_traces_reference(const std::array<double, 4>& f, const std::vector<double>& lambdas,
                                             int cutoff, const GammaRep& rep, double period) {
  return mode_sum<false>(f, lambdas, cutoff, rep, period);
}

FourierOracle fourier_spectral_action(const std::array<double, 4>& f, const std::vector<double>& lambdas, int cutoff,
                                      const GammaRep& rep, double period, std::uint64_t seed) {
  if (lambdas.size() < 3) throw DomainError("Fourier oracle: need at least 3 values of Lambda");
  FourierOracle o;
  o.lambdas = lambdas;
  const double lmax = *std::max_element(lambdas.begin(), lambdas.end());
  const double kc = cutoff * 2 * kPi / period;
  o.tail_bound = 1.0 - std::pow(std::erf(kc / lmax), 4);
  if (o.tail_bound > 1e-3)
    throw DomainError("Fourier oracle: cutoff " + std::to_string(cutoff) + " under-resolves Lambda = " +
                      std::to_string(lmax) + " (tail bound " + std::to_string(o.tail_bound) + ")");

  const std::size_t nl = lambdas.size();
  Eigen::MatrixXd A(nl, 3);
  for (std::size_t i = 0; i < nl; ++i) {
    const double l2 = lambdas[i] * lambdas[i];
    A(i, 0) = l2 * l2;
    A(i, 1) = l2;
    A(i, 2) = 1.0;
  }
  const Eigen::VectorXd scale = A.colwise().norm().transpose();
  const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto sv = svd.singularValues();
  o.condition_number = sv[sv.size() - 1] > 0 ? sv[0] / sv[sv.size() - 1] : INFINITY;
  if (!(o.condition_number < 1e8))
    throw DomainError("Fourier oracle: ill-conditioned fit (condition number " + std::to_string(o.condition_number) +
                      "); spread the Lambda values");

  o.traces = fourier_traces(f, lambdas, cutoff, rep, period);
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(o.traces.data(), nl);
  const Eigen::VectorXd c = svd.solve(y).cwiseQuotient(scale);
  o.a0_fit = c[0];
  o.a2_fit = c[1];
  o.c_fit = c[2];

  // Invariance on sampled modes.
  FieldSampler sampler(seed);
  const LorentzGammaRep lrep = lorentz_gammas();
  Eigen::Matrix4d rot = Eigen::Matrix4d::Zero();
  rot(1, 2) = 0.7;
  Eigen::Matrix4d rot2 = Eigen::Matrix4d::Zero();
  rot2(1, 3) = sampler.uniform(-1, 1);
  rot2(2, 3) = sampler.uniform(-1, 1);
  rot2(1, 2) = sampler.uniform(-1, 1);
  Eigen::Matrix4d boost = Eigen::Matrix4d::Zero();
  boost(0, 1) = 0.3;
  const std::vector<Mat> vs = {spin_rep(lrep, rot), spin_rep(lrep, rot2)};
  const double r = 1.7;
  Mat dil = Mat::Identity(4, 4);
  dil.block(0, 0, 2, 2) *= r;
  dil.block(2, 2, 2, 2) /= r;
  const std::vector<Mat> us = {spin_rep(lrep, boost), dil};
  const double il2 = 1.0 / (lmax * lmax);
  auto heat = [&](const Mat& d) {
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Mat>(d * d.adjoint(), Eigen::EigenvaluesOnly).eigenvalues();
    return (-ev.array() * il2).exp().sum();
  };
  for (int s = 0; s < 64; ++s) {
    std::array<double, 4> k;
    for (double& x : k) x = static_cast<double>(std::uniform_int_distribution<int>(-cutoff, cutoff)(sampler.rng()));
    for (double& x : k) x *= 2 * kPi / period;
    const Mat D = mode_matrix(rep, k, f);
    const double h0 = heat(D);
    for (const Mat& V : vs) {
      const Mat Dv = V * D * rho_adjoint(V, rep);
      o.invariance_unitary = std::max(o.invariance_unitary, std::abs(heat(Dv) - h0) / std::max(1.0, h0));
    }
    const cplx t0 = (D * rho_adjoint(D, rep)).trace();
    for (const Mat& U : us) {
      const Mat Du = U * D * U.adjoint();
      const cplx t1 = (Du * rho_adjoint(Du, rep)).trace();
      o.invariance_rho = std::max(o.invariance_rho, std::abs(t1 - t0) / std::max(1.0, std::abs(t0)));
    }
  }
  return o;
}

}  // namespace tstk
