#include "tstk/grid.hpp"

#include <cmath>

namespace tstk {

TorusGrid::TorusGrid(int n, int N, double L) : n_(n), N_(N), L_(L) {
  if (n < 1 || n > kMaxDim) throw DomainError("TorusGrid: dimension must be in 1..6");
  if (N < 4) throw DomainError("TorusGrid: need at least 4 points per axis");
  if (!(L > 0) || !std::isfinite(L)) throw DomainError("TorusGrid: period must be positive");
  points_ = 1;
  for (int mu = n_ - 1; mu >= 0; --mu) {
    stride_[mu] = points_;
    points_ *= static_cast<std::size_t>(N_);
  }
}

std::size_t TorusGrid::neighbor(std::size_t p, int mu, int step) const {
  const int i = axis_index(p, mu);
  const int j = ((i + step) % N_ + N_) % N_;
  return p + (static_cast<std::ptrdiff_t>(j) - i) * static_cast<std::ptrdiff_t>(stride_[mu]);
}

double TorusGrid::cell_volume() const { return std::pow(spacing(), n_); }

}  // namespace tstk
