#include "tstk/random_fields.hpp"

#include <cmath>

#include "tstk/spectral.hpp"

namespace tstk {

double FieldSampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

double FieldSampler::normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

cplx FieldSampler::complex_normal() {
  const double re = normal();
  return {re, normal()};
}

namespace {

// Mode coefficients on the spectral grid for |k_mu| <= band (band < N/2).
std::vector<cplx> random_spectrum(const TorusGrid& g, int band, FieldSampler& s) {
  std::vector<cplx> hat(g.points(), 0.0);
  const int n = g.dim(), N = g.per_axis();
  const int b = std::min(band, N / 2 - 1);
  std::vector<int> k(n, -b);
  for (;;) {
    std::size_t p = 0;
    double k2 = 0;
    for (int mu = 0; mu < n; ++mu) {
      p += static_cast<std::size_t>((k[mu] + N) % N) * g.stride(mu);
      k2 += k[mu] * k[mu];
    }
    hat[p] = s.complex_normal() / (1.0 + k2);
    int mu = n - 1;
    while (mu >= 0 && k[mu] == b) k[mu--] = -b;
    if (mu < 0) break;
    ++k[mu];
  }
  return hat;
}

}  // namespace

ScalarField FieldSampler::scalar(const TorusGrid& g, double scale, bool real) {
  std::vector<cplx> hat = random_spectrum(g, band_, *this);
  ScalarField f(g);
  f.v = spectral::inverse(g, hat.data());
  if (real)
    for (auto& z : f.v) z = z.real();
  double m = 0;
  for (const auto& z : f.v) m = std::max(m, std::abs(z));
  const double c = m > 0 ? scale / m : 1.0;
  for (auto& z : f.v) z *= c;
  f.band_limited = true;
  f = with_grad(std::move(f), Deriv::spectral);
  return f;
}

SpinorField FieldSampler::spinor(const TorusGrid& g, int comps) {
  SpinorField psi(g, comps);
  for (int c = 0; c < comps; ++c) {
    const ScalarField f = scalar(g, 1.0);
    std::copy(f.v.begin(), f.v.end(), psi.component(c));
  }
  return psi;
}

ScalarField FieldSampler::nonvanishing(const TorusGrid& g, double amplitude) {
  const ScalarField s = scalar(g, amplitude, true);
  const ScalarField t = scalar(g, amplitude, true);
  return exp(s + kI * t);
}

ScalarField FieldSampler::phase(const TorusGrid& g, double amplitude) {
  return exp(kI * scalar(g, amplitude, true));
}

Mat FieldSampler::matrix(int rows, int cols) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = complex_normal();
  return m;
}

Mat FieldSampler::unitary(int n) {
  Eigen::HouseholderQR<Mat> qr(matrix(n, n));
  return qr.householderQ();
}

}  // namespace tstk
