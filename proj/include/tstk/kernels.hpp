#pragma once

#include <cstddef>

#include "tstk/core.hpp"

// Reductions with a fixed block decomposition: the parallel and serial
// versions add the same partial sums in the same order, so results are
// bitwise identical regardless of thread count.
namespace tstk::kernels {

inline constexpr std::size_t kBlock = 4096;

cplx blocked_sum(const cplx* x, std::size_t n);
double blocked_sum(const double* x, std::size_t n);

namespace reference {
cplx blocked_sum(const cplx* x, std::size_t n);
double blocked_sum(const double* x, std::size_t n);
}  // namespace reference

}  // namespace tstk::kernels
