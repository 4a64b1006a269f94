// Parallel kernels against their serial reference twins: wall time and
// agreement of the results.
#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "tstk/action.hpp"
#include "tstk/kernels.hpp"

using namespace tstk;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const char* name, double par, double ser, double diff) {
  std::printf("%-28s %12.4f %12.4f %8.2fx %12.3e\n", name, par * 1e3, ser * 1e3, ser / par, diff);
}

}  // namespace

int main(int argc, char** argv) {
  const int N = argc > 1 ? std::atoi(argv[1]) : 16;
  std::printf("threads %d, grid %d^4\n", omp_get_max_threads(), N);
  std::printf("%-28s %12s %12s %9s %12s\n", "kernel", "parallel ms", "serial ms", "speedup", "max diff");

  const TorusGrid g(4, N);
  FieldSampler s(1);
  const GammaRep rep = euclidean_gammas(2);
  std::vector<ScalarField> fc;
  for (int mu = 0; mu < 4; ++mu) fc.push_back(s.scalar(g, 1.0, true));
  const SpinorOperator D = dirac_with_torsion(one_form(fc), rep, flat_vielbein(g));
  const SpinorField psi = s.spinor(g, 4);

  SpinorField a(g, 4), b(g, 4);
  const double tp = seconds([&] { a = D.apply(psi); }, 5);
  const double ts = seconds([&] { b = D.apply_reference(psi); }, 5);
  row("operator apply", tp, ts, max_abs_diff(a, b));

  const ScalarField f = s.scalar(g);
  cplx x = 0, y = 0;
  const double sp = seconds([&] { x = kernels::blocked_sum(f.v.data(), f.v.size()); }, 50);
  const double ss = seconds([&] { y = kernels::reference::blocked_sum(f.v.data(), f.v.size()); }, 50);
  row("blocked sum", sp, ss, std::abs(x - y));

  const std::array<double, 4> fv{1.0, 0.0, 0.0, 0.0};
  const std::vector<double> lambdas{4, 5, 6, 7, 8};
  std::vector<double> u, v;
  const double fp = seconds([&] { u = fourier_traces(fv, lambdas, 12, rep); }, 1);
  const double fs = seconds([&] { v = fourier_traces_reference(fv, lambdas, 12, rep); }, 1);
  double d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d = std::max(d, std::abs(u[i] - v[i]));
  row("Fourier mode sum (cutoff 12)", fp, fs, d);
  return 0;
}
