#include "tstk/twist.hpp"

#include <algorithm>
#include <cmath>

namespace tstk {

namespace {

void require_grid(const TorusGrid& g, const GammaRep& rep) {
  if (g.dim() != rep.dim()) throw DomainError("grid dimension does not match the gamma representation");
}

Mat chiral_projector(const GammaRep& rep, double sign) { return 0.5 * (rep.identity() + sign * rep.grading); }

// Pointwise |f|^s computed as exp((s/2) ln|f|^2) so that gradients propagate.
ScalarField modulus_power(const ScalarField& f, double s) { return exp(cplx(0.5 * s) * log(abs2(f))); }

double max_imag(const DifferentialForm& w) {
  double m = 0;
  for (const auto& c : w.comp) m = std::max(m, c.max_imag());
  return m;
}

}  // namespace

TwistedElement constant_element(const TorusGrid& grid, cplx f, cplx g) {
  return {ScalarField::constant(grid, f), ScalarField::constant(grid, g)};
}

TwistedElement flip(const TwistedElement& a) { return {a.g, a.f}; }

TwistedElement star(const TwistedElement& a) { return {conj(a.f), conj(a.g)}; }

TwistedElement operator*(const TwistedElement& a, const TwistedElement& b) { return {a.f * b.f, a.g * b.g}; }

MatrixField represent_field(const TwistedElement& a, const GammaRep& rep) {
  require_grid(a.f.grid, rep);
  return MatrixField::scalar_times(a.f, chiral_projector(rep, 1.0)) +
         MatrixField::scalar_times(a.g, chiral_projector(rep, -1.0));
}

SpinorOperator represent(const TwistedElement& a, const GammaRep& rep) {
  return SpinorOperator::multiplication(represent_field(a, rep));
}

SpinorOperator rho_conj(const SpinorOperator& o, const GammaRep& rep) {
  const SpinorOperator g0 = SpinorOperator::constant(o.grid(), rep[0]);
  return compose(g0, compose(o, g0));
}

SpinorOperator rho_adjoint(const SpinorOperator& o, const GammaRep& rep) { return adjoint(rho_conj(o, rep)); }

SpinorOperator twisted_commutator(const SpinorOperator& d, const TwistedElement& a, const GammaRep& rep,
                                  double tol) {
  const SpinorOperator c = compose(d, represent(a, rep)) - compose(represent(flip(a), rep), d);
  SpinorOperator out(c.grid(), c.spin_dim(), c.antilinear());
  double leftover = 0;
  for (const auto& t : c.terms()) {
    if (t.alpha.empty()) {
      out.add_term(t.coeff, t.alpha);
      continue;
    }
    leftover = std::max(leftover, max_abs(t.coeff));
  }
  if (leftover > tol) throw IdentityViolation("twisted commutator keeps derivative terms", leftover);
  return out;
}

SpinorOperator twisted_commutator(const SpinorOperator& a, const SpinorOperator& b, const GammaRep& rep) {
  return compose(a, b) - compose(rho_conj(b, rep), a);
}

cplx twisted_product(const SpinorField& psi, const SpinorField& phi, const SpinorOperator& r) {
  return inner(psi, r.apply(phi));
}

UnitarityCheck is_rho_unitary(const TwistedElement& a, double tol) {
  if (min_abs(a.f) < kNonVanishing) return {false, INFINITY};
  double dev = 0;
  for (std::size_t p = 0; p < a.f.size(); ++p) dev = std::max(dev, std::abs(a.f.v[p] * std::conj(a.g.v[p]) - 1.0));
  return {dev <= tol, dev};
}

UnitarityCheck is_unitary(const TwistedElement& a, double tol) {
  double dev = 0;
  for (std::size_t p = 0; p < a.f.size(); ++p)
    dev = std::max({dev, std::abs(std::abs(a.f.v[p]) - 1.0), std::abs(std::abs(a.g.v[p]) - 1.0)});
  return {dev <= tol, dev};
}

UnitarityCheck is_rho_unitary(const SpinorOperator& o, const GammaRep& rep, double tol) {
  const SpinorOperator plus = rho_adjoint(o, rep);
  const SpinorOperator id = SpinorOperator::identity(o.grid(), o.spin_dim());
  const double dev = std::max(structural_distance(compose(plus, o), id), structural_distance(compose(o, plus), id));
  return {dev <= tol, dev};
}

SpinorOperator real_structure_operator(const RealStructure& j, const TorusGrid& grid) {
  return SpinorOperator::constant(grid, j.U, true);
}

SpinorOperator real_structure_inverse(const RealStructure& j, const TorusGrid& grid) {
  // (U K)^{-1} = K U^{-1} = conj(U^{-1}) K.
  return SpinorOperator::constant(grid, Mat(j.U.inverse().conjugate()), true);
}

SpinorOperator j_conjugate(const SpinorOperator& o, const RealStructure& j) {
  const SpinorOperator jo = real_structure_operator(j, o.grid());
  const SpinorOperator ji = real_structure_inverse(j, o.grid());
  return compose(jo, compose(o, ji));
}

SpinorOperator adjoint_action(const TwistedElement& a, const GammaRep& rep, const RealStructure& j) {
  const SpinorOperator pa = represent(a, rep);
  return compose(pa, j_conjugate(pa, j));
}

SpinorOperator dirac_free(const GammaRep& rep, const Vielbein& frame) {
  require_grid(frame.grid, rep);
  if (!frame.flat) throw DomainError("dirac_free: curved frames are out of scope");
  SpinorOperator d(frame.grid, rep.spin_dim());
  for (int mu = 0; mu < rep.dim(); ++mu) d.add_term(MatrixField::constant(frame.grid, -kI * rep[mu]), {mu});
  return d;
}

MatrixField torsion_term(const DifferentialForm& f, const GammaRep& rep) {
  if (f.k != 1) throw DomainError("torsion term needs a 1-form");
  require_grid(f.grid, rep);
  MatrixField m = MatrixField::scalar_times(f.comp[0], Mat(-kI * rep[0] * rep.grading));
  for (int mu = 1; mu < rep.dim(); ++mu) m = m + MatrixField::scalar_times(f.comp[mu], Mat(-kI * rep[mu] * rep.grading));
  return m;
}

SpinorOperator dirac_with_torsion(const DifferentialForm& f, const GammaRep& rep, const Vielbein& frame) {
  if (max_imag(f) > kTolAlgebraic * std::max(1.0, max_abs(f)))
    throw DomainError("dirac_with_torsion: the 1-form must be real");
  SpinorOperator d = dirac_free(rep, frame);
  d.add_term(torsion_term(f, rep), {});
  return d;
}

HodgeCheck hodge_identity_check(const DifferentialForm& f, const GammaRep& rep, const Vielbein& frame, double tol) {
  if (f.k != 1) throw DomainError("hodge_identity_check: need a 1-form");
  require_grid(f.grid, rep);
  const MatrixField lhs = product(kI * clifford_action(f, rep, frame), MatrixField::constant(f.grid, rep.grading), false);
  const MatrixField c = clifford_action(hodge_dual(f, frame), rep, frame);
  HodgeCheck h;
  h.kappa = hodge_kappa(rep);
  h.kappa_printed = hodge_kappa_printed(rep.m);
  h.deviation = max_abs_diff(lhs, h.kappa * c);
  h.printed_deviation = max_abs_diff(lhs, h.kappa_printed * c);
  if (h.deviation > tol) throw IdentityViolation("Hodge identification of the twisted term", h.deviation);
  return h;
}

DifferentialForm extract_torsion_oneform(const MatrixField& m, const GammaRep& rep) {
  require_grid(m.grid, rep);
  DifferentialForm f(m.grid, 1);
  const double norm = static_cast<double>(rep.spin_dim());
  for (int nu = 0; nu < rep.dim(); ++nu) {
    const Mat gg = rep.grading * rep[nu];
    ScalarField& c = f.comp[nu];
    for (std::size_t p = 0; p < m.grid.points(); ++p) c.v[p] = kI * (m.at(p) * gg).trace() / norm;
  }
  return f;
}

Fluctuation twisted_fluctuation(const SpinorOperator& d, const SpinorOperator& a, const GammaRep& rep,
                                const RealStructure& j, double tol) {
  if (a.order() != 0 || a.antilinear()) throw DomainError("twisted 1-form must be a multiplication operator");
  if (j.eps_prime != 1) throw DomainError("twisted_fluctuation: KO-dimension 4 required");
  SpinorOperator op = d + a + j_conjugate(a, j);
  const MatrixField m = op.coefficient({});
  DifferentialForm f = extract_torsion_oneform(m, rep);
  double imag = 0;
  for (auto& c : f.comp) imag = std::max(imag, c.max_imag());
  const MatrixField rebuilt = torsion_term(f, rep);
  const double structure = max_abs_diff(m, rebuilt);
  const double sa = structural_distance(adjoint(op), op);
  return {std::move(op), std::move(f), structure, imag, sa, sa <= tol};
}

DifferentialForm log_modulus_differential(const ScalarField& h) {
  const ScalarField lr = real_part(log(abs2(h)));
  std::vector<ScalarField> comps;
  for (int mu = 0; mu < h.grid.dim(); ++mu) comps.push_back(real_part(partial(lr, mu)));
  return one_form(comps);
}

TorsionGeneration generate_torsion(const ScalarField& h, const GammaRep& rep, const Vielbein& frame,
                                   const RealStructure& j) {
  if (min_abs(h) < kNonVanishing) throw DomainError("generate_torsion: h vanishes somewhere on the grid");
  const TwistedElement u{h, ScalarField::constant(h.grid, 1.0) / conj(h)};
  const SpinorOperator ad = adjoint_action(u, rep, j);
  const SpinorOperator d = dirac_free(rep, frame);
  TorsionGeneration out{compose(ad, compose(d, adjoint(ad))), d, log_modulus_differential(h), 0.0};
  out.closed = dirac_with_torsion(out.omega, rep, frame);
  out.structural_deviation = structural_distance(out.direct, out.closed);
  return out;
}

TorsionComposition compose_torsion(const DifferentialForm& f, const ScalarField& h, const GammaRep& rep,
                                   const Vielbein& frame, const RealStructure& j) {
  if (min_abs(h) < kNonVanishing) throw DomainError("compose_torsion: h vanishes somewhere on the grid");
  const TwistedElement u{h, ScalarField::constant(h.grid, 1.0) / conj(h)};
  const SpinorOperator ad = adjoint_action(u, rep, j);
  const SpinorOperator ad_dag = adjoint(ad);
  const SpinorOperator direct = compose(ad, compose(dirac_with_torsion(f, rep, frame), ad_dag));
  TorsionComposition out{f + log_modulus_differential(h), 0.0, 0.0};
  out.structural_deviation = structural_distance(direct, dirac_with_torsion(out.omega, rep, frame));
  const SpinorOperator t = SpinorOperator::multiplication(torsion_term(f, rep));
  out.term_invariance = structural_distance(compose(ad, compose(t, ad_dag)), t);
  return out;
}

CoexactTorsion coexact_torsion(const ScalarField& f, Deriv scheme) {
  if (f.max_imag() > kTolAlgebraic * std::max(1.0, max_abs(f))) throw DomainError("coexact_torsion: f must be real");
  const int n = f.grid.dim();
  DifferentialForm fnu(f.grid, n);
  fnu.comp[0] = cplx(1.0 / static_cast<double>(factorial(n))) * f;
  CoexactTorsion out{codifferential(fnu, scheme), 0.0};
  const DifferentialForm alt = cplx(-1.0) * hodge_dual(exterior_derivative(scalar_form(f), scheme));
  out.route_deviation = max_abs_diff(out.threeform, alt);
  return out;
}

RMatrix build_R(const std::vector<int>& indices, const GammaRep& rep) {
  const int k = static_cast<int>(indices.size());
  if (k % 2 == 0) throw DomainError("build_R: need an odd number of gamma indices");
  if (k > rep.dim()) throw DomainError("build_R: too many indices");
  for (int i = 0; i < k; ++i) {
    if (indices[i] < 0 || indices[i] >= rep.dim()) throw DomainError("build_R: index out of range");
    if (i > 0 && indices[i] <= indices[i - 1]) throw DomainError("build_R: indices must be distinct and increasing");
  }
  RMatrix r;
  r.indices = indices;
  r.r = gamma_product(rep, indices);
  r.l = (k - 1) / 2;
  r.alpha = r.l % 2 == 0 ? cplx(1.0) : kI;
  const Mat one = rep.identity();
  const double sign = r.l % 2 == 0 ? 1.0 : -1.0;
  const double dev = std::max({max_abs(Mat(r.r.adjoint() * r.r - one)),
                               max_abs(Mat(r.r * rep.grading + rep.grading * r.r)),
                               max_abs(Mat(r.r * chiral_projector(rep, 1.0) * r.r.adjoint() - chiral_projector(rep, -1.0))),
                               max_abs(Mat(r.r.adjoint() - sign * r.r))});
  if (dev > kTolAlgebraic) throw IdentityViolation("R matrix properties", dev);
  return r;
}

GaugeResult gauge_transform(const SpinorOperator& a, const TwistedElement& u, const SpinorOperator& d,
                            const GammaRep& rep, const RealStructure& j) {
  if (a.order() != 0) throw DomainError("gauge_transform: A must be a multiplication operator");
  if (!is_unitary(u, kTolAlgebraic).holds) throw DomainError("gauge_transform: u is not unitary");
  const SpinorOperator rho_u = represent(flip(u), rep);
  const TwistedElement us = star(u);
  SpinorOperator au = compose(rho_u, twisted_commutator(d, us, rep)) + compose(rho_u, compose(a, represent(us, rep)));
  SpinorOperator d_a = d + a + j_conjugate(a, j);
  SpinorOperator d_a_u = d + au + j_conjugate(au, j);
  SpinorOperator conj = compose(adjoint_action(flip(u), rep, j), compose(d_a, adjoint_action(us, rep, j)));
  return {std::move(au), std::move(d_a_u), std::move(conj), std::move(d_a)};
}

namespace {

// X = D + M with M a J-symmetric twisted 1-form: derivative part of X - D
// vanishes, and M anticommutes with Gamma and equals J M J^{-1}.
bool fluctuation_shape(const SpinorOperator& x, const SpinorOperator& d, const GammaRep& rep, const RealStructure& j,
                       double tol) {
  const SpinorOperator diff = x - d;
  for (const auto& t : diff.terms())
    if (!t.alpha.empty() && max_abs(t.coeff) > tol) return false;
  const MatrixField m = diff.coefficient({});
  const MatrixField g = MatrixField::constant(m.grid, rep.grading);
  const double anti = max_abs(product(g, m, false) + product(m, g, false));
  const double sym = max_abs_diff(j_conjugate(SpinorOperator::multiplication(m), j).coefficient({}), m);
  const double scale = std::max(1.0, max_abs(m));
  return anti <= tol * scale && sym <= tol * scale;
}

}  // namespace

NonEntangled nonentangled_classify(const TwistedElement& a, const SpinorOperator& d, const GammaRep& rep,
                                   const RealStructure& j, double tol) {
  NonEntangled out{};
  double plus = 0, dagger = 0;
  for (std::size_t p = 0; p < a.f.size(); ++p) {
    const double af = std::abs(a.f.v[p]), ag = std::abs(a.g.v[p]);
    plus = std::max({plus, std::abs(af - 1.0), std::abs(ag - 1.0)});
    dagger = std::max(dagger, std::abs(af * ag - 1.0));
  }
  out.form_plus = plus <= tol;
  out.form_dagger = dagger <= tol;
  if (out.form_dagger) {
    const ScalarField rf = modulus_power(a.f, 1.0), rg = modulus_power(a.g, 1.0);
    TwistedElement u{a.f * modulus_power(a.f, -1.0), a.g * modulus_power(a.g, -1.0)};
    TwistedElement ur{rf, rg};
    out.factorization = std::make_pair(std::move(u), std::move(ur));
  }
  const SpinorOperator ad = adjoint_action(a, rep, j);
  out.direct_plus = fluctuation_shape(compose(ad, compose(d, rho_adjoint(ad, rep))), d, rep, j, tol);
  out.direct_dagger = fluctuation_shape(compose(ad, compose(d, adjoint(ad))), d, rep, j, tol);
  if (out.direct_plus != out.form_plus || out.direct_dagger != out.form_dagger)
    throw IdentityViolation("non-entangled classification disagrees with direct assembly", std::max(plus, dagger));
  return out;
}

}  // namespace tstk
