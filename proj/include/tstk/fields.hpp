#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tstk/grid.hpp"

namespace tstk {

enum class Deriv { spectral, fd2 };

// Complex scalar per grid point. `grad`, when present, holds exact first
// partials (from the expression evaluator or Fourier synthesis) and is carried
// through arithmetic by the chain rule.
struct ScalarField {
  TorusGrid grid;
  std::vector<cplx> v;
  std::vector<std::vector<cplx>> grad;
  bool band_limited = false;

  explicit ScalarField(const TorusGrid& g) : grid(g), v(g.points(), 0.0) {}
  static ScalarField constant(const TorusGrid& g, cplx c);

  bool has_grad() const { return !grad.empty(); }
  std::size_t size() const { return v.size(); }
  cplx operator[](std::size_t p) const { return v[p]; }
  void drop_grad() { grad.clear(); }
  // Max |imaginary part| over the grid.
  double max_imag() const;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator*(cplx s, const ScalarField& a);
ScalarField operator-(const ScalarField& a);
ScalarField exp(const ScalarField& a);
ScalarField log(const ScalarField& a);
ScalarField conj(const ScalarField& a);
ScalarField abs2(const ScalarField& a);
ScalarField real_part(const ScalarField& a);

double min_abs(const ScalarField& a);
double max_abs(const ScalarField& a);
double max_abs_diff(const ScalarField& a, const ScalarField& b);

// Exact gradient if present, spectral if band-limited, else central fd2.
ScalarField partial(const ScalarField& f, int mu);
ScalarField partial(const ScalarField& f, int mu, Deriv scheme);
// Attach a gradient computed by the given scheme (no-op if one exists).
ScalarField with_grad(ScalarField f, Deriv scheme);

// Flat quadrature: sum f * Delta^n.
cplx integrate(const ScalarField& f);

// 2^m-component spinor per point, stored component-major: v[c * P + p].
struct SpinorField {
  TorusGrid grid;
  int comps;
  std::vector<cplx> v;

  SpinorField(const TorusGrid& g, int c) : grid(g), comps(c), v(static_cast<std::size_t>(c) * g.points(), 0.0) {}
  std::size_t points() const { return grid.points(); }
  cplx& at(int c, std::size_t p) { return v[c * grid.points() + p]; }
  cplx at(int c, std::size_t p) const { return v[c * grid.points() + p]; }
  const cplx* component(int c) const { return v.data() + c * grid.points(); }
  cplx* component(int c) { return v.data() + c * grid.points(); }
};

SpinorField operator+(const SpinorField& a, const SpinorField& b);
SpinorField operator-(const SpinorField& a, const SpinorField& b);
SpinorField operator*(cplx s, const SpinorField& a);
SpinorField conj(const SpinorField& a);
double max_abs(const SpinorField& a);
double max_abs_diff(const SpinorField& a, const SpinorField& b);
SpinorField partial(const SpinorField& psi, std::span<const int> alpha, Deriv scheme);
// <psi, phi> = integral of psi^dagger phi (flat quadrature).
cplx inner(const SpinorField& psi, const SpinorField& phi);

// d x d complex matrix per point (column-major per point), or a single matrix
// when uniform. `grad` as for ScalarField; a uniform field has zero gradient.
struct MatrixField {
  TorusGrid grid;
  int d;
  bool uniform;
  std::vector<cplx> v;
  std::vector<std::vector<cplx>> grad;

  MatrixField(const TorusGrid& g, int dim, bool uniform_field);
  static MatrixField constant(const TorusGrid& g, const Mat& m);
  static MatrixField zero(const TorusGrid& g, int dim) { return constant(g, Mat::Zero(dim, dim)); }
  // f(x) * m.
  static MatrixField scalar_times(const ScalarField& f, const Mat& m);

  std::size_t stride() const { return static_cast<std::size_t>(d) * d; }
  const cplx* ptr(std::size_t p) const { return v.data() + (uniform ? 0 : p * stride()); }
  cplx* ptr(std::size_t p) { return v.data() + (uniform ? 0 : p * stride()); }
  Eigen::Map<const Mat> at(std::size_t p) const { return Eigen::Map<const Mat>(ptr(p), d, d); }
  Eigen::Map<Mat> at(std::size_t p) { return Eigen::Map<Mat>(ptr(p), d, d); }
  bool has_grad() const { return uniform || !grad.empty(); }
  MatrixField expanded() const;  // non-uniform copy
};

MatrixField operator+(const MatrixField& a, const MatrixField& b);
MatrixField operator-(const MatrixField& a, const MatrixField& b);
MatrixField operator*(const MatrixField& a, const MatrixField& b);
// Product; the chain-rule gradient is only formed when with_grad is set.
MatrixField product(const MatrixField& a, const MatrixField& b, bool with_grad);
MatrixField operator*(cplx s, const MatrixField& a);
MatrixField adjoint(const MatrixField& a);
MatrixField conj(const MatrixField& a);
double max_abs(const MatrixField& a);
double max_abs_diff(const MatrixField& a, const MatrixField& b);
// d_mu of the matrix entries: exact gradient if present, else `scheme`.
MatrixField partial(const MatrixField& a, int mu, Deriv scheme);
// Pointwise trace.
ScalarField trace(const MatrixField& a);

}  // namespace tstk
