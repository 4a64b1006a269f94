#pragma once

#include <array>
#include <cstddef>

#include "tstk/core.hpp"

namespace tstk {

inline constexpr int kMaxDim = 6;

// Periodic flat torus [0, L)^n sampled on N points per axis. Axis 0 is the
// slowest-varying index of the flat point numbering.
class TorusGrid {
 public:
  TorusGrid(int n = 4, int N = 16, double L = 2 * kPi);

  int dim() const { return n_; }
  int per_axis() const { return N_; }
  double period() const { return L_; }
  double spacing() const { return L_ / N_; }
  std::size_t points() const { return points_; }
  std::size_t stride(int mu) const { return stride_[mu]; }

  int axis_index(std::size_t p, int mu) const { return static_cast<int>((p / stride_[mu]) % N_); }
  double coord(std::size_t p, int mu) const { return axis_index(p, mu) * spacing(); }
  std::size_t neighbor(std::size_t p, int mu, int step) const;
  // Integer wavenumber of FFT bin j along an axis (Nyquist bin reported as N/2).
  int wavenumber(int j) const { return j <= N_ / 2 ? j : j - N_; }
  double cell_volume() const;

  bool operator==(const TorusGrid& o) const { return n_ == o.n_ && N_ == o.N_ && L_ == o.L_; }

 private:
  int n_, N_;
  double L_;
  std::size_t points_;
  std::array<std::size_t, kMaxDim> stride_{};
};

}  // namespace tstk
