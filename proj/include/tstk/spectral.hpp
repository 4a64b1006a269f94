#pragma once

#include <span>
#include <vector>

#include "tstk/grid.hpp"

namespace tstk::spectral {

// Unnormalized forward / normalized inverse n-dimensional DFT over the grid.
std::vector<cplx> forward(const TorusGrid& g, const cplx* in);
std::vector<cplx> inverse(const TorusGrid& g, const cplx* in);

// Fourier multiplier of d^alpha at point p of the spectral grid; the Nyquist
// bin is zeroed so that d^alpha is exactly the composition of first partials
// and maps real data to real data.
cplx multiplier(const TorusGrid& g, std::size_t p, std::span<const int> alpha);

// d^alpha of scalar data (alpha a list of axes, repetition allowed).
std::vector<cplx> derivative(const TorusGrid& g, const cplx* in, std::span<const int> alpha);
// All first partials from one forward transform.
std::vector<std::vector<cplx>> gradient(const TorusGrid& g, const cplx* in);

// Central second-order finite difference of d^alpha.
std::vector<cplx> fd2_derivative(const TorusGrid& g, const cplx* in, std::span<const int> alpha);

}  // namespace tstk::spectral
