#include "tstk/clifford.hpp"

#include <algorithm>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

namespace tstk {

std::array<Mat, 3> pauli() {
  Mat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -kI, kI, 0;
  s3 << 1, 0, 0, -1;
  return {s1, s2, s3};
}

Mat sigma_up(int a) {
  if (a == 0) return Mat::Identity(2, 2);
  return -kI * pauli()[a - 1];
}

Mat sigma_tilde(int a) {
  if (a == 0) return Mat::Identity(2, 2);
  return kI * pauli()[a - 1];
}

namespace {

Mat offdiag(const Mat& upper, const Mat& lower) {
  const int h = static_cast<int>(upper.rows());
  Mat g = Mat::Zero(2 * h, 2 * h);
  g.block(0, h, h, h) = upper;
  g.block(h, 0, h, h) = lower;
  return g;
}

Mat chiral_grading(int size) {
  Mat g = Mat::Identity(size, size);
  g.bottomRightCorner(size / 2, size / 2) *= -1.0;
  return g;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

// One step up in dimension: sigma_1 (x) gamma^a, sigma_1 (x) Gamma, sigma_2 (x) 1.
// The new grading sigma_3 (x) 1 is again diag(1, -1).
GammaRep extend(const GammaRep& r) {
  const auto s = pauli();
  GammaRep out;
  out.m = r.m + 1;
  const Mat one = r.identity();
  for (const auto& g : r.gammas) out.gammas.push_back(kron(s[0], g));
  out.gammas.push_back(kron(s[0], r.grading));
  out.gammas.push_back(kron(s[1], one));
  out.grading = chiral_grading(out.spin_dim());
  return out;
}

}  // namespace

GammaRep euclidean_gammas(int m) {
  if (m <= 0) throw DomainError("euclidean_gammas: m must be positive");
  GammaRep rep;
  if (m == 1) {
    rep.m = 1;
    Mat one = Mat::Identity(1, 1);
    rep.gammas.push_back(offdiag(one, one));
    rep.gammas.push_back(offdiag(-kI * one, kI * one));
    rep.grading = chiral_grading(2);
    return rep;
  }
  rep.m = 2;
  for (int a = 0; a < 4; ++a) rep.gammas.push_back(offdiag(sigma_up(a), sigma_tilde(a)));
  rep.grading = chiral_grading(4);
  while (rep.m < m) rep = extend(rep);
  return rep;
}

double gamma_invariant_deviation(const GammaRep& rep) {
  const int n = rep.dim();
  const Mat one = rep.identity();
  double dev = 0;
  for (int a = 0; a < n; ++a) {
    const Mat& ga = rep[a];
    for (int b = 0; b < n; ++b) {
      const Mat ac = ga * rep[b] + rep[b] * ga - (a == b ? 2.0 : 0.0) * one;
      dev = std::max(dev, max_abs(ac));
    }
    dev = std::max(dev, max_abs(ga - ga.adjoint()));
    dev = std::max(dev, max_abs(ga.adjoint() * ga - one));
    dev = std::max(dev, max_abs(ga * rep.grading + rep.grading * ga));
  }
  const Mat& G = rep.grading;
  dev = std::max(dev, max_abs(G - G.adjoint()));
  dev = std::max(dev, max_abs(G * G - one));
  dev = std::max(dev, max_abs(G - chiral_grading(rep.spin_dim())));
  return dev;
}

int levi_civita_sign(std::span<const int> idx) {
  const int n = static_cast<int>(idx.size());
  std::vector<int> p(idx.begin(), idx.end());
  for (int v : p)
    if (v < 0 || v >= n) throw DomainError("levi_civita_sign: index out of range");
  int sign = 1;
  for (int i = 0; i < n; ++i) {
    while (p[i] != i) {
      const int j = p[i];
      if (p[j] == j) return 0;  // repeated index
      std::swap(p[i], p[j]);
      sign = -sign;
    }
  }
  return sign;
}

Mat gamma_product(const GammaRep& rep, std::span<const int> idx) {
  Mat r = rep.identity();
  for (int a : idx) r = r * rep[a];
  return r;
}

cplx grading_product_sign(const GammaRep& rep) {
  std::vector<int> all(rep.dim());
  std::iota(all.begin(), all.end(), 0);
  const Mat prod = gamma_product(rep, all);
  // grading = s * prod with prod^2 = (-1)^m, so s = grading * prod^{-1}.
  const Mat s = rep.grading * prod.inverse();
  return s(0, 0);
}

Mat grading_from_product_formula(const GammaRep& rep) {
  std::vector<int> all(rep.dim());
  std::iota(all.begin(), all.end(), 0);
  return -std::pow(-kI, rep.m) * gamma_product(rep, all);
}

cplx absorption_prefactor(const GammaRep& rep) {
  return grading_product_sign(rep) / static_cast<double>(factorial(2 * rep.m - 1));
}

cplx absorption_prefactor_printed(int m) {
  return -std::pow(-kI, m) / static_cast<double>(factorial(2 * m));
}

Mat epsilon_contracted_product(const GammaRep& rep, int a) {
  const int n = rep.dim();
  const int k = n - 1;
  Mat sum = Mat::Zero(rep.spin_dim(), rep.spin_dim());
  std::vector<int> full(n), tail(k, 0);
  long total = 1;
  for (int i = 0; i < k; ++i) total *= n;
  for (long t = 0; t < total; ++t) {
    long r = t;
    for (int i = k - 1; i >= 0; --i) {
      tail[i] = static_cast<int>(r % n);
      r /= n;
    }
    full[0] = a;
    std::copy(tail.begin(), tail.end(), full.begin() + 1);
    const int e = levi_civita_sign(full);
    if (e != 0) sum += static_cast<double>(e) * gamma_product(rep, tail);
  }
  return sum;
}

Absorption absorb_gamma(const GammaRep& rep, int a, double tol) {
  if (a < 0 || a >= rep.dim()) throw DomainError("absorb_gamma: index out of range");
  Absorption r;
  r.prefactor = absorption_prefactor(rep);
  r.lhs = rep[a] * rep.grading;
  r.rhs = r.prefactor * epsilon_contracted_product(rep, a);
  r.deviation = max_abs(r.lhs - r.rhs);
  if (r.deviation > tol) throw IdentityViolation("gamma absorption", r.deviation);
  return r;
}

cplx hodge_kappa(const GammaRep& rep) { return kI * grading_product_sign(rep); }

cplx hodge_kappa_printed(int m) { return std::pow(-kI, m + 1) / static_cast<double>(2 * m); }

LorentzGammaRep lorentz_gammas() {
  LorentzGammaRep r;
  r.base = euclidean_gammas(2);
  r.gammas_L[0] = r.base[0];
  for (int j = 1; j < 4; ++j) r.gammas_L[j] = kI * r.base[j];
  return r;
}

Mat LorentzGammaRep::generator(int a, int b) const {
  if (a < 0 || a > 3 || b < 0 || b > 3) throw DomainError("lorentz_generator: index out of range");
  return -(kI / 4.0) * (gammas_L[a] * gammas_L[b] - gammas_L[b] * gammas_L[a]);
}

Mat matrix_exp(const Mat& a) { return a.exp(); }

Mat spin_rep(const LorentzGammaRep& rep, const Eigen::Matrix4d& t) {
  Mat x = Mat::Zero(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (t(a, b) != 0.0) x += t(a, b) * rep.generator(a, b);
  return matrix_exp((kI / 2.0) * x);
}

Mat rho_adjoint(const Mat& o, const GammaRep& rep) { return rep[0] * o.adjoint() * rep[0]; }

RealStructure real_structure_dim4(const GammaRep& rep) {
  if (rep.m != 2) throw DomainError("real_structure_dim4: requires m = 2");
  RealStructure J;
  J.U = kI * rep[0] * rep[2];
  J.eps = -1;
  J.eps_prime = 1;
  J.eps_dprime = 1;
  const auto d = real_structure_deviation(J, rep);
  const double worst = std::max({d.square, d.gamma_anti, d.grading});
  if (worst > kTolAlgebraic) throw IdentityViolation("real structure sign table", worst);
  return J;
}

RealStructureDeviation real_structure_deviation(const RealStructure& J, const GammaRep& rep) {
  RealStructureDeviation d{};
  const Mat& U = J.U;
  d.square = max_abs(U * U.conjugate() - static_cast<double>(J.eps) * rep.identity());
  for (int mu = 0; mu < rep.dim(); ++mu)
    d.gamma_anti = std::max(d.gamma_anti, max_abs(U * rep[mu].conjugate() + rep[mu] * U));
  d.grading = max_abs(U * rep.grading.conjugate() - static_cast<double>(J.eps_dprime) * rep.grading * U);
  return d;
}

}  // namespace tstk
