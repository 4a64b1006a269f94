#include "tstk/spectral.hpp"

#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

#include <fftw3.h>

#include "tstk/kernels.hpp"

namespace tstk::spectral {

namespace {

struct Buffer {
  explicit Buffer(std::size_t n) : data(fftw_alloc_complex(n)), size(n) {}
  ~Buffer() { fftw_free(data); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  fftw_complex* data;
  std::size_t size;
};

// Plans are created once per (dim, N, direction) under a lock and executed
// concurrently on fresh fftw_malloc buffers (same alignment guarantee).
fftw_plan plan_for(const TorusGrid& g, int sign) {
  static std::mutex mtx;
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mtx);
  const auto key = std::make_tuple(g.dim(), g.per_axis(), sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<int> dims(g.dim(), g.per_axis());
  Buffer a(g.points()), b(g.points());
  fftw_plan p = fftw_plan_dft(g.dim(), dims.data(), a.data, b.data, sign, FFTW_ESTIMATE);
  cache.emplace(key, p);
  return p;
}

void run(const TorusGrid& g, int sign, const cplx* in, cplx* out) {
  const std::size_t n = g.points();
  Buffer a(n), b(n);
  std::memcpy(a.data, in, n * sizeof(cplx));
  fftw_execute_dft(plan_for(g, sign), a.data, b.data);
  std::memcpy(static_cast<void*>(out), b.data, n * sizeof(cplx));
}

}  // namespace

std::vector<cplx> forward(const TorusGrid& g, const cplx* in) {
  std::vector<cplx> out(g.points());
  run(g, FFTW_FORWARD, in, out.data());
  return out;
}

std::vector<cplx> inverse(const TorusGrid& g, const cplx* in) {
  std::vector<cplx> out(g.points());
  run(g, FFTW_BACKWARD, in, out.data());
  const double s = 1.0 / static_cast<double>(g.points());
  for (auto& v : out) v *= s;
  return out;
}

cplx multiplier(const TorusGrid& g, std::size_t p, std::span<const int> alpha) {
  cplx m = 1.0;
  const double k0 = 2 * kPi / g.period();
  for (int mu : alpha) {
    const int j = g.axis_index(p, mu);
    if (2 * j == g.per_axis()) return 0.0;
    m *= kI * (k0 * g.wavenumber(j));
  }
  return m;
}

std::vector<cplx> derivative(const TorusGrid& g, const cplx* in, std::span<const int> alpha) {
  if (alpha.empty()) return std::vector<cplx>(in, in + g.points());
  auto hat = forward(g, in);
  const std::size_t n = g.points();
#pragma omp parallel for schedule(static)
  for (std::size_t p = 0; p < n; ++p) hat[p] *= multiplier(g, p, alpha);
  return inverse(g, hat.data());
}

std::vector<std::vector<cplx>> gradient(const TorusGrid& g, const cplx* in) {
  const auto hat = forward(g, in);
  const std::size_t n = g.points();
  std::vector<std::vector<cplx>> out;
  for (int mu = 0; mu < g.dim(); ++mu) {
    std::vector<cplx> h(n);
    const int axis[1] = {mu};
#pragma omp parallel for schedule(static)
    for (std::size_t p = 0; p < n; ++p) h[p] = hat[p] * multiplier(g, p, axis);
    out.push_back(inverse(g, h.data()));
  }
  return out;
}

std::vector<cplx> fd2_derivative(const TorusGrid& g, const cplx* in, std::span<const int> alpha) {
  std::vector<cplx> cur(in, in + g.points()), next(g.points());
  const double inv2h = 1.0 / (2 * g.spacing());
  for (int mu : alpha) {
    const std::size_t n = g.points();
#pragma omp parallel for schedule(static)
    for (std::size_t p = 0; p < n; ++p)
      next[p] = (cur[g.neighbor(p, mu, 1)] - cur[g.neighbor(p, mu, -1)]) * inv2h;
    std::swap(cur, next);
  }
  return cur;
}

}  // namespace tstk::spectral

namespace tstk::kernels {

namespace {
template <class T>
T block_partial(const T* x, std::size_t lo, std::size_t hi) {
  T s{};
  for (std::size_t i = lo; i < hi; ++i) s += x[i];
  return s;
}

template <class T>
T parallel_sum(const T* x, std::size_t n) {
  const std::size_t nb = (n + kBlock - 1) / kBlock;
  std::vector<T> part(nb);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < nb; ++b) part[b] = block_partial(x, b * kBlock, std::min(n, (b + 1) * kBlock));
  T s{};
  for (const T& v : part) s += v;
  return s;
}

template <class T>
T serial_sum(const T* x, std::size_t n) {
  T s{};
  for (std::size_t lo = 0; lo < n; lo += kBlock) s += block_partial(x, lo, std::min(n, lo + kBlock));
  return s;
}
}  // namespace

cplx blocked_sum(const cplx* x, std::size_t n) { return parallel_sum(x, n); }
double blocked_sum(const double* x, std::size_t n) { return parallel_sum(x, n); }
cplx reference::blocked_sum(const cplx* x, std::size_t n) { return serial_sum(x, n); }
double reference::blocked_sum(const double* x, std::size_t n) { return serial_sum(x, n); }

}  // namespace tstk::kernels
