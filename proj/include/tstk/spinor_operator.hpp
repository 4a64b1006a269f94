#pragma once

#include <vector>

#include <json.hpp>

#include "tstk/fields.hpp"

namespace tstk {

// coeff(x) * d^alpha, alpha a sorted list of axes (order = alpha.size()).
struct OpTerm {
  MatrixField coeff;
  std::vector<int> alpha;
};

// Finite sum of matrix-valued coefficients times partial derivatives, acting
// on spinor fields; optionally followed by complex conjugation (antilinear):
//   (O psi)(x) = sum_t M_t(x) (d^alpha_t psi')(x),  psi' = conj(psi) if antilinear.
class SpinorOperator {
 public:
  SpinorOperator(const TorusGrid& grid, int spin_dim, bool antilinear = false);

  static SpinorOperator identity(const TorusGrid& grid, int spin_dim);
  static SpinorOperator multiplication(const MatrixField& m);
  static SpinorOperator constant(const TorusGrid& grid, const Mat& m, bool antilinear = false);
  static SpinorOperator derivative(const TorusGrid& grid, int spin_dim, std::vector<int> alpha, cplx scale = 1.0);

  const TorusGrid& grid() const { return grid_; }
  int spin_dim() const { return d_; }
  bool antilinear() const { return antilinear_; }
  const std::vector<OpTerm>& terms() const { return terms_; }
  int order() const;

  SpinorOperator& add_term(MatrixField coeff, std::vector<int> alpha);

  SpinorField apply(const SpinorField& psi, Deriv scheme = Deriv::spectral) const;
  // Serial reference for apply (identical arithmetic, no threading).
  SpinorField apply_reference(const SpinorField& psi, Deriv scheme = Deriv::spectral) const;

  // Terms merged per multi-index and sorted; exactly-zero uniform terms removed.
  SpinorOperator canonical() const;
  // Coefficient of d^alpha after canonicalization (zero if absent).
  MatrixField coefficient(const std::vector<int>& alpha) const;
  // Remove terms whose coefficients are all below tol in magnitude.
  SpinorOperator drop_small(double tol) const;
  // Max coefficient magnitude over terms of the given derivative order.
  double max_coefficient(int order) const;
  // Same operator without chain-rule gradients on its coefficients.
  SpinorOperator without_grads() const;

 private:
  TorusGrid grid_;
  int d_;
  bool antilinear_;
  std::vector<OpTerm> terms_;
};

SpinorOperator operator+(const SpinorOperator& a, const SpinorOperator& b);
SpinorOperator operator-(const SpinorOperator& a, const SpinorOperator& b);
SpinorOperator operator*(cplx s, const SpinorOperator& a);

// A o B with the Leibniz rule; coefficient derivatives use exact gradients when
// present, else `scheme`. Gradients are kept on the result only when both
// factors are multiplication operators.
SpinorOperator compose(const SpinorOperator& a, const SpinorOperator& b, Deriv scheme = Deriv::spectral);
SpinorOperator compose(std::initializer_list<const SpinorOperator*> ops, Deriv scheme = Deriv::spectral);
// L^2 adjoint by integration by parts on the torus.
SpinorOperator adjoint(const SpinorOperator& a, Deriv scheme = Deriv::spectral);
// Conjugate every coefficient (K L K for linear L).
SpinorOperator conj_coefficients(const SpinorOperator& a);

// Max coefficient difference after canonicalization; infinity if the
// antilinearity flags differ.
double structural_distance(const SpinorOperator& a, const SpinorOperator& b);
// max over the battery of max|A psi - B psi| / max(1, max|A psi|).
double application_distance(const SpinorOperator& a, const SpinorOperator& b, const std::vector<SpinorField>& battery,
                            Deriv scheme = Deriv::spectral);

// Term list with coefficient hashes, derivative orders and antilinearity.
nlohmann::ordered_json summarize(const SpinorOperator& a);

}  // namespace tstk
