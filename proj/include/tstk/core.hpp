#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tstk {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// Default tolerances: derivative-free identities vs. identities involving a
// spectral derivative.
inline constexpr double kTolAlgebraic = 1e-12;
inline constexpr double kTolDerivative = 1e-10;
inline constexpr double kNonVanishing = 1e-8;

// A checked identity failed; carries the measured deviation.
class IdentityViolation : public std::runtime_error {
 public:
  IdentityViolation(const std::string& what, double deviation)
      : std::runtime_error(what + " (max deviation " + std::to_string(deviation) + ")"),
        deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

// Invalid argument: wrong dimension, bad index list, vanishing field, ...
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace tstk
