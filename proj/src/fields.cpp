#include "tstk/fields.hpp"

#include <algorithm>
#include <cmath>

#include "tstk/kernels.hpp"
#include "tstk/spectral.hpp"

namespace tstk {

namespace {

void require_same(const TorusGrid& a, const TorusGrid& b) {
  if (!(a == b)) throw DomainError("field grids differ");
}

// Pointwise unary map with derivative rule: out = f(a), d out = fp(a) * d a.
template <class F, class Fp>
ScalarField unary(const ScalarField& a, F f, Fp fp) {
  ScalarField r(a.grid);
  const std::size_t n = a.size();
#pragma omp parallel for schedule(static)
  for (std::size_t p = 0; p < n; ++p) r.v[p] = f(a.v[p]);
  if (a.has_grad()) {
    r.grad.assign(a.grad.size(), std::vector<cplx>(n));
    for (std::size_t mu = 0; mu < a.grad.size(); ++mu) {
#pragma omp parallel for schedule(static)
      for (std::size_t p = 0; p < n; ++p) r.grad[mu][p] = fp(a.v[p]) * a.grad[mu][p];
    }
  }
  return r;
}

}  // namespace

ScalarField ScalarField::constant(const TorusGrid& g, cplx c) {
  ScalarField f(g);
  std::fill(f.v.begin(), f.v.end(), c);
  f.grad.assign(g.dim(), std::vector<cplx>(g.points(), 0.0));
  f.band_limited = true;
  return f;
}

double ScalarField::max_imag() const {
  double m = 0;
  for (const auto& z : v) m = std::max(m, std::abs(z.imag()));
  return m;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  require_same(a.grid, b.grid);
  ScalarField r(a.grid);
  for (std::size_t p = 0; p < r.size(); ++p) r.v[p] = a.v[p] + b.v[p];
  if (a.has_grad() && b.has_grad()) {
    r.grad = a.grad;
    for (std::size_t mu = 0; mu < r.grad.size(); ++mu)
      for (std::size_t p = 0; p < r.size(); ++p) r.grad[mu][p] += b.grad[mu][p];
  }
  r.band_limited = a.band_limited && b.band_limited;
  return r;
}

ScalarField operator-(const ScalarField& a) { return cplx(-1.0) * a; }

ScalarField operator-(const ScalarField& a, const ScalarField& b) { return a + (-b); }

ScalarField operator*(cplx s, const ScalarField& a) {
  ScalarField r(a.grid);
  for (std::size_t p = 0; p < r.size(); ++p) r.v[p] = s * a.v[p];
  if (a.has_grad()) {
    r.grad = a.grad;
    for (auto& g : r.grad)
      for (auto& z : g) z *= s;
  }
  r.band_limited = a.band_limited;
  return r;
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  require_same(a.grid, b.grid);
  ScalarField r(a.grid);
  const std::size_t n = r.size();
#pragma omp parallel for schedule(static)
  for (std::size_t p = 0; p < n; ++p) r.v[p] = a.v[p] * b.v[p];
  if (a.has_grad() && b.has_grad()) {
    r.grad.assign(a.grad.size(), std::vector<cplx>(n));
    for (std::size_t mu = 0; mu < r.grad.size(); ++mu) {
#pragma omp parallel for schedule(static)
      for (std::size_t p = 0; p < n; ++p) r.grad[mu][p] = a.grad[mu][p] * b.v[p] + a.v[p] * b.grad[mu][p];
    }
  }
  return r;
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  for (const auto& z : b.v)
    if (z == 0.0) throw DomainError("field division by zero");
  const ScalarField inv = unary(b, [](cplx z) { return 1.0 / z; }, [](cplx z) { return -1.0 / (z * z); });
  return a * inv;
}

ScalarField exp(const ScalarField& a) {
  return unary(a, [](cplx z) { return std::exp(z); }, [](cplx z) { return std::exp(z); });
}

ScalarField log(const ScalarField& a) {
  for (const auto& z : a.v)
    if (z == 0.0) throw DomainError("log of zero field value");
  return unary(a, [](cplx z) { return std::log(z); }, [](cplx z) { return 1.0 / z; });
}

ScalarField conj(const ScalarField& a) {
  ScalarField r(a.grid);
  for (std::size_t p = 0; p < r.size(); ++p) r.v[p] = std::conj(a.v[p]);
  if (a.has_grad()) {
    r.grad = a.grad;
    for (auto& g : r.grad)
      for (auto& z : g) z = std::conj(z);
  }
  r.band_limited = a.band_limited;
  return r;
}

ScalarField abs2(const ScalarField& a) { return real_part(a * conj(a)); }

ScalarField real_part(const ScalarField& a) {
  ScalarField r(a.grid);
  for (std::size_t p = 0; p < r.size(); ++p) r.v[p] = a.v[p].real();
  if (a.has_grad()) {
    r.grad = a.grad;
    for (auto& g : r.grad)
      for (auto& z : g) z = z.real();
  }
  r.band_limited = a.band_limited;
  return r;
}

double min_abs(const ScalarField& a) {
  double m = INFINITY;
  for (const auto& z : a.v) m = std::min(m, std::abs(z));
  return m;
}

double max_abs(const ScalarField& a) {
  double m = 0;
  for (const auto& z : a.v) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  require_same(a.grid, b.grid);
  double m = 0;
  for (std::size_t p = 0; p < a.size(); ++p) m = std::max(m, std::abs(a.v[p] - b.v[p]));
  return m;
}

ScalarField partial(const ScalarField& f, int mu) {
  if (f.has_grad()) {
    ScalarField r(f.grid);
    r.v = f.grad[mu];
    return r;
  }
  return partial(f, mu, f.band_limited ? Deriv::spectral : Deriv::fd2);
}

ScalarField partial(const ScalarField& f, int mu, Deriv scheme) {
  if (f.has_grad()) return partial(f, mu);
  if (mu < 0 || mu >= f.grid.dim()) throw DomainError("partial: axis out of range");
  ScalarField r(f.grid);
  const int axis[1] = {mu};
  r.v = scheme == Deriv::spectral ? spectral::derivative(f.grid, f.v.data(), axis)
                                  : spectral::fd2_derivative(f.grid, f.v.data(), axis);
  r.band_limited = f.band_limited && scheme == Deriv::spectral;
  return r;
}

ScalarField with_grad(ScalarField f, Deriv scheme) {
  if (f.has_grad()) return f;
  if (scheme == Deriv::spectral) {
    f.grad = spectral::gradient(f.grid, f.v.data());
  } else {
    for (int mu = 0; mu < f.grid.dim(); ++mu) {
      const int axis[1] = {mu};
      f.grad.push_back(spectral::fd2_derivative(f.grid, f.v.data(), axis));
    }
  }
  return f;
}

cplx integrate(const ScalarField& f) {
  return kernels::blocked_sum(f.v.data(), f.size()) * f.grid.cell_volume();
}

SpinorField operator+(const SpinorField& a, const SpinorField& b) {
  require_same(a.grid, b.grid);
  SpinorField r = a;
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] += b.v[i];
  return r;
}

SpinorField operator-(const SpinorField& a, const SpinorField& b) {
  require_same(a.grid, b.grid);
  SpinorField r = a;
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] -= b.v[i];
  return r;
}

SpinorField operator*(cplx s, const SpinorField& a) {
  SpinorField r = a;
  for (auto& z : r.v) z *= s;
  return r;
}

SpinorField conj(const SpinorField& a) {
  SpinorField r = a;
  for (auto& z : r.v) z = std::conj(z);
  return r;
}

double max_abs(const SpinorField& a) {
  double m = 0;
  for (const auto& z : a.v) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const SpinorField& a, const SpinorField& b) {
  require_same(a.grid, b.grid);
  double m = 0;
  for (std::size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return m;
}

SpinorField partial(const SpinorField& psi, std::span<const int> alpha, Deriv scheme) {
  SpinorField r(psi.grid, psi.comps);
  for (int c = 0; c < psi.comps; ++c) {
    auto d = scheme == Deriv::spectral ? spectral::derivative(psi.grid, psi.component(c), alpha)
                                       : spectral::fd2_derivative(psi.grid, psi.component(c), alpha);
    std::copy(d.begin(), d.end(), r.component(c));
  }
  return r;
}

cplx inner(const SpinorField& psi, const SpinorField& phi) {
  require_same(psi.grid, phi.grid);
  const std::size_t n = psi.points();
  std::vector<cplx> dens(n, 0.0);
  for (int c = 0; c < psi.comps; ++c) {
    const cplx* a = psi.component(c);
    const cplx* b = phi.component(c);
    for (std::size_t p = 0; p < n; ++p) dens[p] += std::conj(a[p]) * b[p];
  }
  return kernels::blocked_sum(dens.data(), n) * psi.grid.cell_volume();
}

MatrixField::MatrixField(const TorusGrid& g, int dim, bool uniform_field)
    : grid(g), d(dim), uniform(uniform_field),
      v(uniform_field ? static_cast<std::size_t>(dim) * dim : g.points() * dim * dim, 0.0) {}

MatrixField MatrixField::constant(const TorusGrid& g, const Mat& m) {
  MatrixField f(g, static_cast<int>(m.rows()), true);
  f.at(0) = m;
  return f;
}

MatrixField MatrixField::scalar_times(const ScalarField& s, const Mat& m) {
  MatrixField f(s.grid, static_cast<int>(m.rows()), false);
  const std::size_t n = s.size();
#pragma omp parallel for schedule(static)
  for (std::size_t p = 0; p < n; ++p) f.at(p) = s.v[p] * m;
  if (s.has_grad()) {
    const std::size_t st = f.stride();
    f.grad.assign(s.grad.size(), std::vector<cplx>(n * st));
    for (std::size_t mu = 0; mu < s.grad.size(); ++mu)
      for (std::size_t p = 0; p < n; ++p) Eigen::Map<Mat>(f.grad[mu].data() + p * st, f.d, f.d) = s.grad[mu][p] * m;
  }
  return f;
}

MatrixField MatrixField::expanded() const {
  if (!uniform) return *this;
  MatrixField r(grid, d, false);
  const std::size_t st = stride();
  for (std::size_t p = 0; p < grid.points(); ++p) std::copy(v.begin(), v.begin() + st, r.v.begin() + p * st);
  return r;
}

namespace {

// Entrywise-gradient view: gradient of entry block at p, zero for uniform.
const cplx* grad_ptr(const MatrixField& a, int mu, std::size_t p) {
  return a.grad[mu].data() + p * a.stride();
}

template <class Op>
MatrixField combine(const MatrixField& a, const MatrixField& b, Op op) {
  require_same(a.grid, b.grid);
  if (a.d != b.d) throw DomainError("matrix field sizes differ");
  if (a.uniform && b.uniform) {
    MatrixField r(a.grid, a.d, true);
    r.at(0) = op(Mat(a.at(0)), Mat(b.at(0)));
    return r;
  }
  MatrixField r(a.grid, a.d, false);
  const std::size_t n = a.grid.points();
#pragma omp parallel for schedule(static)
  for (std::size_t p = 0; p < n; ++p) r.at(p) = op(Mat(a.at(p)), Mat(b.at(p)));
  return r;
}

}  // namespace

MatrixField operator+(const MatrixField& a, const MatrixField& b) {
  MatrixField r = combine(a, b, [](const Mat& x, const Mat& y) { return Mat(x + y); });
  if (!r.uniform && a.has_grad() && b.has_grad()) {
    const std::size_t n = a.grid.points(), st = r.stride();
    r.grad.assign(a.grid.dim(), std::vector<cplx>(n * st, 0.0));
    for (int mu = 0; mu < a.grid.dim(); ++mu)
      for (std::size_t i = 0; i < n * st; ++i)
        r.grad[mu][i] = (a.uniform ? 0.0 : a.grad[mu][i]) + (b.uniform ? 0.0 : b.grad[mu][i]);
  }
  return r;
}

MatrixField operator*(cplx s, const MatrixField& a) {
  MatrixField r = a;
  for (auto& z : r.v) z *= s;
  for (auto& g : r.grad)
    for (auto& z : g) z *= s;
  return r;
}

MatrixField operator-(const MatrixField& a, const MatrixField& b) { return a + cplx(-1.0) * b; }

MatrixField operator*(const MatrixField& a, const MatrixField& b) { return product(a, b, true); }

MatrixField product(const MatrixField& a, const MatrixField& b, bool with_grad) {
  MatrixField r = combine(a, b, [](const Mat& x, const Mat& y) { return Mat(x * y); });
  if (with_grad && !r.uniform && a.has_grad() && b.has_grad()) {
    const std::size_t n = a.grid.points(), st = r.stride();
    const int d = r.d;
    r.grad.assign(a.grid.dim(), std::vector<cplx>(n * st, 0.0));
    for (int mu = 0; mu < a.grid.dim(); ++mu) {
#pragma omp parallel for schedule(static)
      for (std::size_t p = 0; p < n; ++p) {
        Eigen::Map<Mat> out(r.grad[mu].data() + p * st, d, d);
        if (!a.uniform) out += Eigen::Map<const Mat>(grad_ptr(a, mu, p), d, d) * b.at(p);
        if (!b.uniform) out += a.at(p) * Eigen::Map<const Mat>(grad_ptr(b, mu, p), d, d);
      }
    }
  }
  return r;
}

MatrixField adjoint(const MatrixField& a) {
  MatrixField r = a;
  const std::size_t n = a.uniform ? 1 : a.grid.points(), st = a.stride();
  for (std::size_t p = 0; p < n; ++p) r.at(p) = a.at(p).adjoint();
  for (std::size_t mu = 0; mu < a.grad.size(); ++mu)
    for (std::size_t p = 0; p < n; ++p)
      Eigen::Map<Mat>(r.grad[mu].data() + p * st, a.d, a.d) =
          Eigen::Map<const Mat>(a.grad[mu].data() + p * st, a.d, a.d).adjoint();
  return r;
}

MatrixField conj(const MatrixField& a) {
  MatrixField r = a;
  for (auto& z : r.v) z = std::conj(z);
  for (auto& g : r.grad)
    for (auto& z : g) z = std::conj(z);
  return r;
}

double max_abs(const MatrixField& a) {
  double m = 0;
  for (const auto& z : a.v) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const MatrixField& a, const MatrixField& b) {
  require_same(a.grid, b.grid);
  if (a.uniform && b.uniform) return max_abs(Mat(a.at(0) - b.at(0)));
  double m = 0;
  for (std::size_t p = 0; p < a.grid.points(); ++p) m = std::max(m, max_abs(Mat(a.at(p) - b.at(p))));
  return m;
}

MatrixField partial(const MatrixField& a, int mu, Deriv scheme) {
  if (a.uniform) return MatrixField::zero(a.grid, a.d);
  MatrixField r(a.grid, a.d, false);
  if (!a.grad.empty()) {
    r.v = a.grad[mu];
    return r;
  }
  const std::size_t n = a.grid.points(), st = a.stride();
  std::vector<cplx> entry(n);
  const int axis[1] = {mu};
  for (std::size_t e = 0; e < st; ++e) {
    for (std::size_t p = 0; p < n; ++p) entry[p] = a.v[p * st + e];
    auto d = scheme == Deriv::spectral ? spectral::derivative(a.grid, entry.data(), axis)
                                       : spectral::fd2_derivative(a.grid, entry.data(), axis);
    for (std::size_t p = 0; p < n; ++p) r.v[p * st + e] = d[p];
  }
  return r;
}

ScalarField trace(const MatrixField& a) {
  ScalarField r(a.grid);
  for (std::size_t p = 0; p < a.grid.points(); ++p) r.v[p] = a.at(p).trace();
  return r;
}

}  // namespace tstk
