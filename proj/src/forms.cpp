#include "tstk/forms.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace tstk {

std::vector<std::vector<int>> sorted_tuples(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> t(k);
  std::iota(t.begin(), t.end(), 0);
  for (;;) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && t[i] == n - k + i) --i;
    if (i < 0) break;
    ++t[i];
    for (int j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
  }
  return out;
}

namespace {

// Sign of the permutation sorting idx, 0 on repeats; idx is sorted in place.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

std::vector<int> complement(int n, const std::vector<int>& t) {
  std::vector<int> c;
  for (int i = 0; i < n; ++i)
    if (std::find(t.begin(), t.end(), i) == t.end()) c.push_back(i);
  return c;
}

void require_degree(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.k != b.k || !(a.grid == b.grid)) throw DomainError("forms differ in degree or grid");
}

// Minor of m with the given rows and columns.
double minor_det(const Eigen::MatrixXd& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  if (k == 0) return 1.0;
  Eigen::MatrixXd s(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) s(i, j) = m(rows[i], cols[j]);
  return s.determinant();
}

// out_J = sum_I det(T[I, J]) in_I per point: the induced map on antisymmetric
// components of a (0,k)-tensor under the per-point matrix T.
DifferentialForm transform(const DifferentialForm& w, const Vielbein& frame, bool to_frame_components) {
  DifferentialForm out(w.grid, w.k);
  const std::size_t P = w.grid.points();
  for (std::size_t p = 0; p < P; ++p) {
    // to frame: T = e^mu_a (rows mu, cols a); back: T = e^a_mu (rows a, cols mu).
    const Eigen::MatrixXd T = to_frame_components ? Eigen::MatrixXd(frame.einv_at(p)) : Eigen::MatrixXd(frame.e_at(p));
    for (std::size_t J = 0; J < w.tuples.size(); ++J) {
      cplx s = 0.0;
      for (std::size_t I = 0; I < w.tuples.size(); ++I) s += minor_det(T, w.tuples[I], w.tuples[J]) * w.comp[I].v[p];
      out.comp[J].v[p] = s;
    }
  }
  return out;
}

}  // namespace

DifferentialForm::DifferentialForm(const TorusGrid& g, int degree) : grid(g), k(degree) {
  if (degree < 0 || degree > g.dim()) throw DomainError("form degree out of range");
  tuples = sorted_tuples(g.dim(), degree);
  comp.assign(tuples.size(), ScalarField(g));
}

std::pair<int, int> DifferentialForm::locate(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != k) throw DomainError("form index has wrong length");
  std::vector<int> s(idx.begin(), idx.end());
  for (int v : s)
    if (v < 0 || v >= grid.dim()) throw DomainError("form index out of range");
  const int sign = sort_sign(s);
  if (sign == 0) return {0, 0};
  const auto it = std::lower_bound(tuples.begin(), tuples.end(), s);
  return {sign, static_cast<int>(it - tuples.begin())};
}

cplx DifferentialForm::value(std::span<const int> idx, std::size_t p) const {
  const auto [sign, slot] = locate(idx);
  return sign == 0 ? cplx(0.0) : static_cast<double>(sign) * comp[slot].v[p];
}

ScalarField& DifferentialForm::operator[](std::span<const int> sorted_idx) {
  const auto [sign, slot] = locate(sorted_idx);
  if (sign != 1) throw DomainError("form component access requires an increasing tuple");
  return comp[slot];
}

DifferentialForm scalar_form(const ScalarField& f) {
  DifferentialForm w(f.grid, 0);
  w.comp[0] = f;
  return w;
}

DifferentialForm one_form(const std::vector<ScalarField>& f) {
  if (f.empty()) throw DomainError("one_form: no components");
  DifferentialForm w(f[0].grid, 1);
  if (static_cast<int>(f.size()) != f[0].grid.dim()) throw DomainError("one_form: need one component per axis");
  for (std::size_t mu = 0; mu < f.size(); ++mu) w.comp[mu] = f[mu];
  return w;
}

DifferentialForm volume_form(const TorusGrid& grid) {
  DifferentialForm w(grid, grid.dim());
  w.comp[0] = ScalarField::constant(grid, 1.0 / static_cast<double>(factorial(grid.dim())));
  return w;
}

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
  require_degree(a, b);
  DifferentialForm r = a;
  for (std::size_t i = 0; i < r.comp.size(); ++i) r.comp[i] = a.comp[i] + b.comp[i];
  return r;
}

DifferentialForm operator*(cplx s, const DifferentialForm& a) {
  DifferentialForm r = a;
  for (auto& c : r.comp) c = s * c;
  return r;
}

double max_abs(const DifferentialForm& a) {
  double m = 0;
  for (const auto& c : a.comp) m = std::max(m, max_abs(c));
  return m;
}

double max_abs_diff(const DifferentialForm& a, const DifferentialForm& b) {
  require_degree(a, b);
  double m = 0;
  for (std::size_t i = 0; i < a.comp.size(); ++i) m = std::max(m, max_abs_diff(a.comp[i], b.comp[i]));
  return m;
}

DifferentialForm hodge_dual(const DifferentialForm& w) {
  const int n = w.grid.dim(), k = w.k;
  DifferentialForm out(w.grid, n - k);
  // Sum over all k-tuples collapses to k! times the sorted complement term.
  const double scale = static_cast<double>(factorial(k)) / static_cast<double>(factorial(n - k));
  for (std::size_t J = 0; J < out.tuples.size(); ++J) {
    const std::vector<int>& b = out.tuples[J];
    const std::vector<int> a = complement(n, b);
    std::vector<int> full(a);
    full.insert(full.end(), b.begin(), b.end());
    const int eps = levi_civita_sign(full);
    const auto [sign, slot] = w.locate(a);
    out.comp[J] = (scale * eps * sign) * w.comp[slot];
  }
  return out;
}

DifferentialForm hodge_dual(const DifferentialForm& w, const Vielbein& frame) {
  if (frame.flat) return hodge_dual(w);
  return from_frame(hodge_dual(to_frame(w, frame)), frame);
}

DifferentialForm partial(const DifferentialForm& w, int mu, Deriv scheme) {
  DifferentialForm r(w.grid, w.k);
  for (std::size_t i = 0; i < w.comp.size(); ++i) r.comp[i] = partial(w.comp[i], mu, scheme);
  return r;
}

DifferentialForm exterior_derivative(const DifferentialForm& w, Deriv scheme) {
  const int n = w.grid.dim();
  if (w.k == n) return DifferentialForm(w.grid, n);
  DifferentialForm out(w.grid, w.k + 1);
  std::vector<std::vector<ScalarField>> dcomp(n);
  for (int mu = 0; mu < n; ++mu)
    for (const auto& c : w.comp) dcomp[mu].push_back(partial(c, mu, scheme));
  const double inv = 1.0 / (w.k + 1);
  for (std::size_t J = 0; J < out.tuples.size(); ++J) {
    const std::vector<int>& t = out.tuples[J];
    ScalarField acc(w.grid);
    for (int i = 0; i <= w.k; ++i) {
      std::vector<int> rest(t);
      rest.erase(rest.begin() + i);
      const auto [sign, slot] = w.locate(rest);
      const double s = (i % 2 == 0 ? 1.0 : -1.0) * sign * inv;
      acc = acc + cplx(s) * dcomp[t[i]][slot];
    }
    out.comp[J] = acc;
  }
  return out;
}

DifferentialForm codifferential(const DifferentialForm& w, Deriv scheme) {
  if (w.k == 0) throw DomainError("codifferential of a 0-form");
  return cplx(-1.0) * hodge_dual(exterior_derivative(hodge_dual(w), scheme));
}

DifferentialForm to_frame(const DifferentialForm& w, const Vielbein& frame) {
  if (frame.flat) return w;
  return transform(w, frame, true);
}

DifferentialForm from_frame(const DifferentialForm& w, const Vielbein& frame) {
  if (frame.flat) return w;
  return transform(w, frame, false);
}

MatrixField clifford_action(const DifferentialForm& w, const GammaRep& rep) {
  if (w.grid.dim() != rep.dim()) throw DomainError("clifford_action: form and gamma dimensions differ");
  const int d = rep.spin_dim();
  MatrixField out = MatrixField::zero(w.grid, d);
  const double kfact = static_cast<double>(factorial(w.k));
  for (std::size_t I = 0; I < w.tuples.size(); ++I) {
    // Distinct anticommuting gammas: every ordering of I contributes the same.
    const Mat g = kfact * gamma_product(rep, w.tuples[I]);
    out = out + MatrixField::scalar_times(w.comp[I], g);
  }
  return out;
}

MatrixField clifford_action(const DifferentialForm& w, const GammaRep& rep, const Vielbein& frame) {
  return clifford_action(to_frame(w, frame), rep);
}

void write_csv(std::ostream& os, const DifferentialForm& w, const std::string& name) {
  const int n = w.grid.dim();
  os << "point";
  for (int mu = 0; mu < n; ++mu) os << ",x" << mu;
  for (const auto& t : w.tuples) {
    std::string label = name;
    for (int a : t) label += std::to_string(a);
    os << ',' << label << "_re," << label << "_im";
  }
  os << '\n';
  os.precision(17);
  for (std::size_t p = 0; p < w.grid.points(); ++p) {
    os << p;
    for (int mu = 0; mu < n; ++mu) os << ',' << w.grid.coord(p, mu);
    for (const auto& c : w.comp) os << ',' << c.v[p].real() << ',' << c.v[p].imag();
    os << '\n';
  }
}

}  // namespace tstk
