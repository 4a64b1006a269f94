#pragma once

#include <iosfwd>
#include <vector>

#include "tstk/forms.hpp"
#include "tstk/spinor_operator.hpp"

namespace tstk {

// Real rank-3 tensor per point, T[i][j][k] at v[(p * n + i) * n * n + j * n + k].
struct Tensor3Field {
  TorusGrid grid;
  std::vector<double> v;

  explicit Tensor3Field(const TorusGrid& g);
  int n() const { return grid.dim(); }
  std::size_t index(std::size_t p, int i, int j, int k) const {
    const std::size_t nn = static_cast<std::size_t>(n());
    return ((p * nn + i) * nn + j) * nn + k;
  }
  double operator()(std::size_t p, int i, int j, int k) const { return v[index(p, i, j, k)]; }
  double& operator()(std::size_t p, int i, int j, int k) { return v[index(p, i, j, k)]; }
};

Tensor3Field operator+(const Tensor3Field& a, const Tensor3Field& b);
Tensor3Field operator-(const Tensor3Field& a, const Tensor3Field& b);
Tensor3Field operator*(double s, const Tensor3Field& a);
double max_abs(const Tensor3Field& a);
double max_abs_diff(const Tensor3Field& a, const Tensor3Field& b);

// Gamma^l_{mu nu}: nabla_{d_mu} d_nu = Gamma^l_{mu nu} d_l.
using ConnectionField = Tensor3Field;

// K^l_{mu nu} and K_{l mu nu} = g_{l r} K^r_{mu nu}.
struct Contorsion {
  Tensor3Field upper;
  Tensor3Field flat;
};

Contorsion make_contorsion(const Tensor3Field& upper, const Vielbein& frame);
// Lowered-index input; raises with the inverse metric.
Contorsion contorsion_from_flat(const Tensor3Field& flat, const Vielbein& frame);
// Max deviation of K_{l mu nu} - g_{l r} K^r_{mu nu}.
double contorsion_consistency(const Contorsion& k, const Vielbein& frame);

// Levi-Civita symbols; metric derivatives with `scheme` (zero on a flat frame).
ConnectionField christoffel(const Vielbein& frame, Deriv scheme = Deriv::spectral);
// Max |nabla_l g_{mu nu}| for the given connection.
double metric_compatibility(const ConnectionField& gamma, const Vielbein& frame, Deriv scheme = Deriv::spectral);

Contorsion contorsion(const ConnectionField& gamma, const Vielbein& frame, Deriv scheme = Deriv::spectral);
// T^l_{mu nu} = Gamma^l_{mu nu} - Gamma^l_{nu mu}.
Tensor3Field torsion_tensor(const ConnectionField& gamma);

struct ContorsionClass {
  bool orthogonal, geodesic_preserving, totally_antisymmetric;
  // Deviations from skew symmetry in slots (1,3) of K_flat, (2,3) of K^l and
  // all pairs of K_flat.
  double orthogonal_dev, geodesic_dev, antisymmetric_dev;
};
// Throws IdentityViolation if (orthogonal and geodesic) disagrees with
// totally antisymmetric.
ContorsionClass classify_contorsion(const Contorsion& k, double tol = kTolAlgebraic);

// omega_mu, one d x d matrix field per axis, added to d_mu on spinors.
struct SpinConnection {
  std::vector<MatrixField> omega;
};

// omega_mu = (1/4)(Gamma^r_{mu nu} g_{r l} - e^a_l d_mu e^a_nu) gamma^nu gamma^l.
// Rejects connections whose contorsion is not orthogonal.
SpinConnection spin_lift(const ConnectionField& gamma, const GammaRep& rep, const Vielbein& frame,
                         Deriv scheme = Deriv::spectral);
// Flat frame, totally antisymmetric K: omega_mu = (1/4) K_{nu l mu} gamma^nu gamma^l.
SpinConnection spin_lift(const Contorsion& k, const GammaRep& rep);

// -i gamma^mu (d_mu + omega_mu).
SpinorOperator dirac_from_spin_connection(const SpinConnection& s, const GammaRep& rep, const Vielbein& frame);

// K_{l mu nu} = w_{l mu nu} for a 3-form w.
Contorsion contorsion_from_threeform(const DifferentialForm& w, const Vielbein& frame);
// K_flat viewed as a 3-form (requires total antisymmetry).
DifferentialForm threeform_from_contorsion(const Contorsion& k);

// Scale s with K_flat = s * (*omega) for the torsion generated by a twisted
// fluctuation -i f_mu gamma^mu Gamma, omega = f_mu dx^mu. Pinned to -4; the
// printed value is -1.
inline constexpr double kTorsionScale = -4.0;
inline constexpr double kTorsionScalePrinted = -1.0;

// K_flat = kTorsionScale * (*omega) (dimension 4 only).
Contorsion torsion_from_oneform(const DifferentialForm& omega, const Vielbein& frame);
Contorsion torsion_from_oneform(const DifferentialForm& omega, const Vielbein& frame, double scale);
// Inverse map: omega = (*K_flat) / (kTorsionScale * s) with s the double-dual sign.
DifferentialForm oneform_from_torsion(const Contorsion& k, const Vielbein& frame);

// CSV: point, x0.., then K_{l mu nu} for every index triple.
void write_csv(std::ostream& os, const Contorsion& k);

}  // namespace tstk
