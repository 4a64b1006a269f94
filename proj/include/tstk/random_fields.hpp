#pragma once

#include <cstdint>
#include <random>

#include "tstk/fields.hpp"

namespace tstk {

// Seeded generator for band-limited random data. Fields are synthesized from
// Fourier modes with |k_mu| <= band, so spectral derivatives of them are exact
// and scalar fields carry exact gradients.
class FieldSampler {
 public:
  explicit FieldSampler(std::uint64_t seed, int band = 2) : rng_(seed), band_(band) {}

  std::mt19937_64& rng() { return rng_; }
  double uniform(double lo, double hi);
  double normal();
  cplx complex_normal();

  // Amplitudes decay like 1/(1+|k|^2); overall scale normalizes max|f| to about `scale`.
  ScalarField scalar(const TorusGrid& g, double scale = 1.0, bool real = false);
  SpinorField spinor(const TorusGrid& g, int comps);
  // exp(s + i t) for random real s, t: nowhere vanishing, exact gradients.
  ScalarField nonvanishing(const TorusGrid& g, double amplitude = 0.5);
  // exp(i theta) for random real theta.
  ScalarField phase(const TorusGrid& g, double amplitude = 1.0);
  Mat matrix(int rows, int cols);
  Mat unitary(int n);

 private:
  std::mt19937_64 rng_;
  int band_;
};

}  // namespace tstk
