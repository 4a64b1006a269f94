#include "tstk/spinor_operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>

#include "tstk/spectral.hpp"

namespace tstk {

namespace {

void require_compatible(const SpinorOperator& a, const SpinorOperator& b) {
  if (!(a.grid() == b.grid()) || a.spin_dim() != b.spin_dim()) throw DomainError("operators act on different spaces");
}

bool is_exact_zero(const MatrixField& m) {
  if (!m.uniform) return false;
  for (const auto& z : m.v)
    if (z != 0.0) return false;
  return true;
}

// Derivatives of every component for every distinct multi-index of the operator.
std::map<std::vector<int>, SpinorField> derivative_table(const SpinorOperator& op, const SpinorField& psi,
                                                         Deriv scheme) {
  std::map<std::vector<int>, SpinorField> table;
  for (const auto& t : op.terms())
    if (!table.count(t.alpha)) table.emplace(t.alpha, t.alpha.empty() ? psi : partial(psi, t.alpha, scheme));
  return table;
}

template <bool Parallel>
SpinorField apply_impl(const SpinorOperator& op, const SpinorField& in, Deriv scheme) {
  if (!(in.grid == op.grid()) || in.comps != op.spin_dim()) throw DomainError("spinor does not match operator");
  const SpinorField psi = op.antilinear() ? conj(in) : in;
  const auto table = derivative_table(op, psi, scheme);
  std::vector<std::pair<const MatrixField*, const SpinorField*>> work;
  for (const auto& t : op.terms()) work.emplace_back(&t.coeff, &table.at(t.alpha));
  const int d = op.spin_dim();
  const std::size_t P = op.grid().points();
  SpinorField out(op.grid(), d);
  auto point = [&](std::size_t p) {
    Vec acc = Vec::Zero(d), x(d);
    for (const auto& [m, f] : work) {
      for (int c = 0; c < d; ++c) x[c] = f->at(c, p);
      acc.noalias() += m->at(p) * x;
    }
    for (int c = 0; c < d; ++c) out.at(c, p) = acc[c];
  };
  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (std::size_t p = 0; p < P; ++p) point(p);
  } else {
    for (std::size_t p = 0; p < P; ++p) point(p);
  }
  return out;
}

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xffu;
    h *= 1099511628211ull;
  }
  return h;
}

// Hash of coefficient values quantized to 1e-10, stable under last-bit noise
// in most cases.
std::uint64_t field_hash(const MatrixField& m) {
  std::uint64_t h = 1469598103934665603ull;
  const MatrixField& e = m;
  const std::size_t P = e.uniform ? 1 : e.grid.points();
  for (std::size_t p = 0; p < P; ++p)
    for (std::size_t i = 0; i < e.stride(); ++i) {
      const cplx z = e.ptr(p)[i];
      h = fnv_mix(h, static_cast<std::uint64_t>(std::llround(z.real() * 1e10)));
      h = fnv_mix(h, static_cast<std::uint64_t>(std::llround(z.imag() * 1e10)));
    }
  return h;
}

}  // namespace

SpinorOperator::SpinorOperator(const TorusGrid& grid, int spin_dim, bool antilinear)
    : grid_(grid), d_(spin_dim), antilinear_(antilinear) {
  if (spin_dim <= 0) throw DomainError("spinor dimension must be positive");
}

SpinorOperator SpinorOperator::identity(const TorusGrid& grid, int spin_dim) {
  return constant(grid, Mat::Identity(spin_dim, spin_dim));
}

SpinorOperator SpinorOperator::multiplication(const MatrixField& m) {
  SpinorOperator op(m.grid, m.d);
  op.add_term(m, {});
  return op;
}

SpinorOperator SpinorOperator::constant(const TorusGrid& grid, const Mat& m, bool antilinear) {
  SpinorOperator op(grid, static_cast<int>(m.rows()), antilinear);
  op.add_term(MatrixField::constant(grid, m), {});
  return op;
}

SpinorOperator SpinorOperator::derivative(const TorusGrid& grid, int spin_dim, std::vector<int> alpha, cplx scale) {
  SpinorOperator op(grid, spin_dim);
  op.add_term(MatrixField::constant(grid, scale * Mat::Identity(spin_dim, spin_dim)), std::move(alpha));
  return op;
}

int SpinorOperator::order() const {
  int o = 0;
  for (const auto& t : terms_) o = std::max(o, static_cast<int>(t.alpha.size()));
  return o;
}

SpinorOperator& SpinorOperator::add_term(MatrixField coeff, std::vector<int> alpha) {
  if (!(coeff.grid == grid_) || coeff.d != d_) throw DomainError("term coefficient does not match operator");
  for (int a : alpha)
    if (a < 0 || a >= grid_.dim()) throw DomainError("derivative axis out of range");
  std::sort(alpha.begin(), alpha.end());
  terms_.push_back({std::move(coeff), std::move(alpha)});
  return *this;
}

SpinorField SpinorOperator::apply(const SpinorField& psi, Deriv scheme) const {
  return apply_impl<true>(*this, psi, scheme);
}

SpinorField SpinorOperator::apply_reference(const SpinorField& psi, Deriv scheme) const {
  return apply_impl<false>(*this, psi, scheme);
}

SpinorOperator SpinorOperator::canonical() const {
  std::map<std::vector<int>, std::vector<const MatrixField*>> groups;
  for (const auto& t : terms_) groups[t.alpha].push_back(&t.coeff);
  SpinorOperator out(grid_, d_, antilinear_);
  for (const auto& [alpha, fields] : groups) {
    MatrixField sum = *fields[0];
    for (std::size_t i = 1; i < fields.size(); ++i) sum = sum + *fields[i];
    if (!is_exact_zero(sum)) out.terms_.push_back({std::move(sum), alpha});
  }
  return out;
}

MatrixField SpinorOperator::coefficient(const std::vector<int>& alpha) const {
  std::vector<int> a(alpha);
  std::sort(a.begin(), a.end());
  MatrixField sum = MatrixField::zero(grid_, d_);
  for (const auto& t : terms_)
    if (t.alpha == a) sum = sum + t.coeff;
  return sum;
}

SpinorOperator SpinorOperator::drop_small(double tol) const {
  SpinorOperator out(grid_, d_, antilinear_);
  for (const auto& t : canonical().terms_)
    if (max_abs(t.coeff) > tol) out.terms_.push_back(t);
  return out;
}

double SpinorOperator::max_coefficient(int ord) const {
  double m = 0;
  for (const auto& t : canonical().terms_)
    if (static_cast<int>(t.alpha.size()) == ord) m = std::max(m, max_abs(t.coeff));
  return m;
}

SpinorOperator SpinorOperator::without_grads() const {
  SpinorOperator out = *this;
  for (auto& t : out.terms_) t.coeff.grad.clear();
  return out;
}

SpinorOperator operator+(const SpinorOperator& a, const SpinorOperator& b) {
  require_compatible(a, b);
  if (a.antilinear() != b.antilinear()) throw DomainError("cannot add linear and antilinear operators");
  SpinorOperator r(a.grid(), a.spin_dim(), a.antilinear());
  for (const auto& t : a.terms()) r.add_term(t.coeff, t.alpha);
  for (const auto& t : b.terms()) r.add_term(t.coeff, t.alpha);
  return r.canonical();
}

SpinorOperator operator*(cplx s, const SpinorOperator& a) {
  SpinorOperator r(a.grid(), a.spin_dim(), a.antilinear());
  for (const auto& t : a.terms()) r.add_term(s * t.coeff, t.alpha);
  return r;
}

SpinorOperator operator-(const SpinorOperator& a, const SpinorOperator& b) { return a + cplx(-1.0) * b; }

SpinorOperator conj_coefficients(const SpinorOperator& a) {
  SpinorOperator r(a.grid(), a.spin_dim(), a.antilinear());
  for (const auto& t : a.terms()) r.add_term(conj(t.coeff), t.alpha);
  return r;
}

SpinorOperator compose(const SpinorOperator& a, const SpinorOperator& b_in, Deriv scheme) {
  require_compatible(a, b_in);
  // (L1 K^s)(L2 K^t) = L1 conj^s(L2) K^(s+t).
  const SpinorOperator b = a.antilinear() ? conj_coefficients(b_in) : b_in;
  const bool keep_grad = a.order() == 0 && b.order() == 0;
  SpinorOperator r(a.grid(), a.spin_dim(), a.antilinear() != b.antilinear());
  for (const auto& ta : a.terms()) {
    const int k = static_cast<int>(ta.alpha.size());
    for (const auto& tb : b.terms()) {
      // Leibniz: d^alpha (N psi) = sum over subsets S of alpha of (d^S N)(d^(alpha\S) psi).
      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        MatrixField n = tb.coeff;
        std::vector<int> rest = tb.alpha;
        bool zero = false;
        for (int i = 0; i < k && !zero; ++i) {
          if (mask & (1u << i)) {
            n = partial(n, ta.alpha[i], scheme);
            zero = is_exact_zero(n);
          } else {
            rest.push_back(ta.alpha[i]);
          }
        }
        if (zero) continue;
        MatrixField c = product(ta.coeff, n, keep_grad);
        if (!keep_grad) c.grad.clear();
        r.add_term(std::move(c), std::move(rest));
      }
    }
  }
  return r.canonical();
}

SpinorOperator compose(std::initializer_list<const SpinorOperator*> ops, Deriv scheme) {
  if (ops.size() == 0) throw DomainError("compose: empty product");
  auto it = ops.begin();
  SpinorOperator acc = **it;
  for (++it; it != ops.end(); ++it) acc = compose(acc, **it, scheme);
  return acc;
}

SpinorOperator adjoint(const SpinorOperator& a, Deriv scheme) {
  // (M d^alpha)^dagger = (-1)^|alpha| d^alpha o M^dagger; (L K)^dagger = conj(L^dagger) K.
  SpinorOperator lin(a.grid(), a.spin_dim());
  for (const auto& t : a.terms()) {
    const cplx sign = (t.alpha.size() % 2 == 0) ? 1.0 : -1.0;
    const SpinorOperator d = SpinorOperator::derivative(a.grid(), a.spin_dim(), t.alpha, sign);
    const SpinorOperator m = SpinorOperator::multiplication(adjoint(t.coeff));
    const SpinorOperator piece = compose(d, m, scheme);
    for (const auto& pt : piece.terms()) lin.add_term(pt.coeff, pt.alpha);
  }
  lin = lin.canonical();
  if (!a.antilinear()) return lin;
  SpinorOperator out(a.grid(), a.spin_dim(), true);
  for (const auto& t : lin.terms()) out.add_term(conj(t.coeff), t.alpha);
  return out;
}

double structural_distance(const SpinorOperator& a, const SpinorOperator& b) {
  require_compatible(a, b);
  if (a.antilinear() != b.antilinear()) return std::numeric_limits<double>::infinity();
  const SpinorOperator ca = a.canonical(), cb = b.canonical();
  std::map<std::vector<int>, std::pair<const MatrixField*, const MatrixField*>> both;
  for (const auto& t : ca.terms()) both[t.alpha].first = &t.coeff;
  for (const auto& t : cb.terms()) both[t.alpha].second = &t.coeff;
  double dist = 0;
  for (const auto& [alpha, pr] : both) {
    const auto& [x, y] = pr;
    if (x && y) dist = std::max(dist, max_abs_diff(*x, *y));
    else dist = std::max(dist, max_abs(x ? *x : *y));
  }
  return dist;
}

double application_distance(const SpinorOperator& a, const SpinorOperator& b, const std::vector<SpinorField>& battery,
                            Deriv scheme) {
  require_compatible(a, b);
  double worst = 0;
  for (const auto& psi : battery) {
    const SpinorField x = a.apply(psi, scheme), y = b.apply(psi, scheme);
    worst = std::max(worst, max_abs_diff(x, y) / std::max(1.0, max_abs(x)));
  }
  return worst;
}

nlohmann::ordered_json summarize(const SpinorOperator& a) {
  nlohmann::ordered_json j;
  j["spin_dim"] = a.spin_dim();
  j["antilinear"] = a.antilinear();
  j["order"] = a.order();
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  const SpinorOperator c = a.canonical();
  for (const auto& t : c.terms()) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(field_hash(t.coeff)));
    terms.push_back({{"alpha", t.alpha},
                     {"uniform", t.coeff.uniform},
                     {"max_abs", max_abs(t.coeff)},
                     {"hash", hex}});
  }
  j["terms"] = terms;
  return j;
}

}  // namespace tstk
