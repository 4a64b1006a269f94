#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tstk/forms.hpp"
#include "tstk/spinor_operator.hpp"

namespace tstk {

// a = (f, g) in C^inf(M) (x) C^2.
struct TwistedElement {
  ScalarField f, g;
};

TwistedElement constant_element(const TorusGrid& grid, cplx f, cplx g);
TwistedElement flip(const TwistedElement& a);
TwistedElement star(const TwistedElement& a);
TwistedElement operator*(const TwistedElement& a, const TwistedElement& b);

// diag(f 1, g 1) in the chiral basis.
MatrixField represent_field(const TwistedElement& a, const GammaRep& rep);
SpinorOperator represent(const TwistedElement& a, const GammaRep& rep);

// gamma^0 O gamma^0.
SpinorOperator rho_conj(const SpinorOperator& o, const GammaRep& rep);
// O^+ = rho(O)^dagger.
SpinorOperator rho_adjoint(const SpinorOperator& o, const GammaRep& rep);

// D pi(a) - pi(rho(a)) D, with derivative terms below tol removed. Throws
// IdentityViolation if derivative terms survive.
SpinorOperator twisted_commutator(const SpinorOperator& d, const TwistedElement& a, const GammaRep& rep,
                                  double tol = kTolDerivative);
// A B - rho(B) A for operators.
SpinorOperator twisted_commutator(const SpinorOperator& a, const SpinorOperator& b, const GammaRep& rep);

// <psi, R phi>.
cplx twisted_product(const SpinorField& psi, const SpinorField& phi, const SpinorOperator& r);

struct UnitarityCheck {
  bool holds;
  double deviation;
};
// gbar = 1/f pointwise (|f gbar - 1| <= tol) and f nowhere zero.
UnitarityCheck is_rho_unitary(const TwistedElement& a, double tol = kTolAlgebraic);
// |f| = |g| = 1.
UnitarityCheck is_unitary(const TwistedElement& a, double tol = kTolAlgebraic);
// O^+ O = O O^+ = 1 (structural).
UnitarityCheck is_rho_unitary(const SpinorOperator& o, const GammaRep& rep, double tol = kTolAlgebraic);

// J and J^{-1} as antilinear operators on the grid.
SpinorOperator real_structure_operator(const RealStructure& j, const TorusGrid& grid);
SpinorOperator real_structure_inverse(const RealStructure& j, const TorusGrid& grid);
// J O J^{-1}.
SpinorOperator j_conjugate(const SpinorOperator& o, const RealStructure& j);

// Ad(a) = pi(a) J pi(a) J^{-1}.
SpinorOperator adjoint_action(const TwistedElement& a, const GammaRep& rep, const RealStructure& j);

// -i gamma^mu d_mu on a flat frame.
SpinorOperator dirac_free(const GammaRep& rep, const Vielbein& frame);
// -i f_mu gamma^mu Gamma, f a real 1-form.
MatrixField torsion_term(const DifferentialForm& f, const GammaRep& rep);
// dirac_free + torsion_term; rejects complex f.
SpinorOperator dirac_with_torsion(const DifferentialForm& f, const GammaRep& rep, const Vielbein& frame);

struct HodgeCheck {
  double deviation;          // with the pinned kappa
  double printed_deviation;  // with the printed (-i)^{m+1}/(2m)
  cplx kappa, kappa_printed;
};
// i gamma^mu f_mu Gamma = kappa_m c(*omega_f); throws above tol.
HodgeCheck hodge_identity_check(const DifferentialForm& f, const GammaRep& rep, const Vielbein& frame,
                                double tol = kTolDerivative);

// f_nu = i Tr(M Gamma gamma^nu) / 2^m for the order-zero coefficient M.
DifferentialForm extract_torsion_oneform(const MatrixField& m, const GammaRep& rep);

struct Fluctuation {
  SpinorOperator op;
  DifferentialForm f;          // extracted torsion 1-form
  double structure_deviation;  // |M + i f_mu gamma^mu Gamma|
  double imaginary_part;       // max |Im f|
  double selfadjoint_deviation;
  bool selfadjoint;
};
// D + A + eps' J A J^{-1} (KO-dimension 4).
Fluctuation twisted_fluctuation(const SpinorOperator& d, const SpinorOperator& a, const GammaRep& rep,
                                const RealStructure& j, double tol = kTolDerivative);

struct TorsionGeneration {
  SpinorOperator direct;     // Ad(u) D Ad(u)^dagger
  SpinorOperator closed;     // D - i gamma^mu d_mu(ln|h|^2) Gamma
  DifferentialForm omega;    // d ln|h|^2
  double structural_deviation;
};
// u_h = (h, 1/hbar); requires min|h| >= kNonVanishing.
TorsionGeneration generate_torsion(const ScalarField& h, const GammaRep& rep, const Vielbein& frame,
                                   const RealStructure& j);
// Ad(u_h) D_{omega_f} Ad(u_h)^dagger with D_{omega_f} = dirac_with_torsion(f).
struct TorsionComposition {
  DifferentialForm omega;       // f + d ln|h|^2
  double structural_deviation;  // vs dirac_with_torsion(omega)
  double term_invariance;       // |Ad(u) T Ad(u)^dagger - T| for the torsion term T
};
TorsionComposition compose_torsion(const DifferentialForm& f, const ScalarField& h, const GammaRep& rep,
                                   const Vielbein& frame, const RealStructure& j);

// d ln|h|^2 as a 1-form (exact gradients when h carries them).
DifferentialForm log_modulus_differential(const ScalarField& h);

// delta(f nu_g) = -*df; both routes are computed and must agree.
struct CoexactTorsion {
  DifferentialForm threeform;  // delta(f nu)
  double route_deviation;      // |delta(f nu) + *df|
};
CoexactTorsion coexact_torsion(const ScalarField& f, Deriv scheme = Deriv::spectral);

struct RMatrix {
  std::vector<int> indices;
  Mat r;
  int l;       // k = 2l + 1
  cplx alpha;  // 1 for even l, i for odd l
};
// Ordered product of distinct gammas; asserts unitarity, anticommutation with
// Gamma, R pi(a) R^dagger = pi(rho(a)) and R^dagger = (-1)^l R.
RMatrix build_R(const std::vector<int>& indices, const GammaRep& rep);

struct GaugeResult {
  SpinorOperator a_u;        // rho(u)[D, u*]_rho + rho(u) A u*
  SpinorOperator d_a_u;      // D + A^u + J A^u J^{-1}
  SpinorOperator conjugate;  // Ad(rho(u)) D_A Ad(u)^{-1}
  SpinorOperator d_a;        // D + A + J A J^{-1}
};
GaugeResult gauge_transform(const SpinorOperator& a, const TwistedElement& u, const SpinorOperator& d,
                            const GammaRep& rep, const RealStructure& j);

struct NonEntangled {
  bool form_plus, form_dagger;
  bool direct_plus, direct_dagger;  // read off the assembled operators
  std::optional<std::pair<TwistedElement, TwistedElement>> factorization;  // (u, u_rho)
};
NonEntangled nonentangled_classify(const TwistedElement& a, const SpinorOperator& d, const GammaRep& rep,
                                   const RealStructure& j, double tol = kTolDerivative);

}  // namespace tstk
