#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tstk/action.hpp"
#include "tstk/config.hpp"
#include "tstk/expr.hpp"
#include "tstk/torsion.hpp"
#include "tstk/verify.hpp"

using namespace tstk;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<double> parse_numbers(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& t : split(s)) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(t, &pos));
      if (pos != t.size() && t.find_first_not_of(" ", pos) != std::string::npos) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw ConfigError(what + ": '" + t + "' is not a number");
    }
  }
  return out;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open CSV output " + path);
  os.precision(17);
  return os;
}

// Emits the report: to the configured file (summary on stdout) or as JSON on stdout.
int finish(const Report& r, const RunConfig& c) {
  if (c.report.empty()) {
    std::cout << r.dump();
  } else {
    r.write(c.report);
    std::size_t failed = 0;
    for (const auto& k : r.checks()) failed += k.pass ? 0 : 1;
    std::cout << "tstk: " << r.checks().size() << " checks, " << failed << " failed; report written to " << c.report
              << "\n";
  }
  for (const auto& k : r.checks())
    if (!k.pass)
      std::cerr << "FAIL " << k.name << ": error " << k.max_abs_error << " > tolerance " << k.tolerance << "\n";
  return r.pass() ? kExitPass : kExitFail;
}

int cmd_verify(const RunConfig& c) { return finish(run_verify(c), c); }

int cmd_torsion(const RunConfig& c, const std::string& hexpr, const std::string& fexpr, const std::string& csv) {
  if (hexpr.empty() == fexpr.empty()) throw ConfigError("torsion: give exactly one of --h and --f");
  const TorusGrid g(4, c.N, c.L);
  const Vielbein flat = flat_vielbein(g);
  const GammaRep rep = euclidean_gammas(2);
  Report r("torsion");
  r.set_config(to_json(c));
  r.pin("torsion_scale", {{"pinned", kTorsionScale}, {"printed", kTorsionScalePrinted}});

  DifferentialForm omega(g, 1);
  Contorsion k = torsion_from_oneform(omega, flat);
  if (!hexpr.empty()) {
    const ScalarField h = FieldExpr::parse(hexpr).evaluate(g);
    if (min_abs(h) < kNonVanishing) throw DomainError("torsion: h vanishes somewhere on the grid");
    const TorsionGeneration gen = generate_torsion(h, rep, flat, real_structure_dim4(rep));
    omega = gen.omega;
    k = torsion_from_oneform(omega, flat);
    FieldSampler s(c.seed);
    std::vector<SpinorField> bat;
    for (int i = 0; i < 3; ++i) bat.push_back(s.spinor(g, 4));
    r.add("torsion.operator_identity", "torsion generated by a twisted fluctuation",
          std::max(gen.structural_deviation, application_distance(gen.direct, gen.closed, bat, c.deriv)), c.tol_deriv,
          "Ad(u_h) D Ad(u_h)^dagger against D - i gamma^mu omega_mu Gamma");
    r.add("torsion.oneform_exact", "generated torsion 1-form is exact", max_abs(exterior_derivative(omega, c.deriv)),
          c.tol_deriv);
  } else {
    const ScalarField f = real_part(FieldExpr::parse(fexpr).evaluate(g));
    const CoexactTorsion co = coexact_torsion(f, c.deriv);
    std::vector<ScalarField> df;
    for (int mu = 0; mu < 4; ++mu) df.push_back(partial(f, mu, c.deriv));
    omega = one_form(df);
    k = contorsion_from_threeform(co.threeform, flat);
    r.add("torsion.coexact_routes", "torsion 3-form from a twisted fluctuation is co-exact", co.route_deviation,
          c.tol_deriv, "delta(f nu) against -*df");
  }
  const ContorsionClass cl = classify_contorsion(k, c.tol_alg);
  r.add_flag("torsion.totally_antisymmetric", "orthogonal and geodesic-preserving iff totally antisymmetric",
             cl.totally_antisymmetric && cl.orthogonal && cl.geodesic_preserving);
  r.set_result("omega_max_abs", max_abs(omega));
  r.set_result("threeform_max_abs", max_abs(threeform_from_contorsion(k)));
  r.set_result("classification", {{"orthogonal", cl.orthogonal},
                                   {"geodesic_preserving", cl.geodesic_preserving},
                                   {"totally_antisymmetric", cl.totally_antisymmetric}});
  if (!csv.empty()) {
    auto os = open_csv(csv + "_omega.csv");
    write_csv(os, omega, "omega");
    auto ks = open_csv(csv + "_K.csv");
    write_csv(ks, k);
  }
  return finish(r, c);
}

int cmd_fermionic(const RunConfig& c, const std::string& rlist, const std::string& fexprs, const std::string& csv) {
  std::vector<int> idx;
  for (const auto& t : split(rlist)) {
    try {
      idx.push_back(std::stoi(t));
    } catch (const std::exception&) {
      throw ConfigError("fermionic: bad R index '" + t + "'");
    }
  }
  const auto fparts = split(fexprs);
  if (fparts.size() != 4) throw ConfigError("fermionic: --f needs four comma-separated expressions");
  const TorusGrid g(4, c.N, c.L);
  const GammaRep rep = euclidean_gammas(2);
  const RealStructure J = real_structure_dim4(rep);
  std::vector<ScalarField> fc;
  std::array<double, 4> fmean{};
  for (int mu = 0; mu < 4; ++mu) {
    ScalarField v = FieldExpr::parse(fparts[mu]).evaluate(g);
    if (v.max_imag() > c.tol_alg) throw DomainError("fermionic: f must be real");
    v = real_part(v);
    fmean[mu] = integrate(v).real() / std::pow(c.L, 4);
    fc.push_back(std::move(v));
  }
  const DifferentialForm f = one_form(fc);
  const RMatrix R = build_R(idx, rep);
  FieldSampler s(c.seed);
  Report r("fermionic");
  r.set_config(to_json(c));
  r.pin("ko_signs", {{"epsilon", J.eps}, {"epsilon_prime", J.eps_prime}, {"epsilon_dprime", J.eps_dprime}});

  std::ofstream os;
  if (!csv.empty()) {
    os = open_csv(csv);
    os << "R,alpha_re,alpha_im,general_re,general_im,closed_re,closed_im,relative_deviation,skew_re,skew_im,signature\n";
  }
  const std::string rname = rlist;
  // J antilinear: J(alpha psi) = conj(alpha) J psi, so the alpha factors cancel
  // and the symmetry factor is eps eps' for every odd R.
  const cplx expected_skew = static_cast<double>(J.eps * J.eps_prime);
  const cplx printed_skew = expected_skew * std::conj(R.alpha) * std::conj(R.alpha);
  auto skew_note = [&](cplx ratio) {
    return "expected eps*eps' = " + std::to_string(expected_skew.real()) + "; printed factor with conj(alpha)^2 is off by " +
           std::to_string(std::abs(ratio - printed_skew));
  };
  if (idx.size() == 1) {
    const int a = idx[0];
    const FermionicCheck fcheck = fermionic_check(a, R.alpha, f, s.spinor(g, 2), s.spinor(g, 2), rep, J);
    r.add("fermionic.closed_form", "closed form of the twisted fermionic action", fcheck.relative_deviation, 1e-8,
          "relative deviation");
    r.add("fermionic.symmetry", "symmetry of the fermionic bilinear in an R-eigenspace",
          std::abs(fcheck.skew_ratio - expected_skew), 1e-8, skew_note(fcheck.skew_ratio));
    const SignatureResult sig = signature_classify(a, fmean);
    r.add("fermionic.signature_witness", "plane-wave witness of the Weyl operators",
          std::max(sig.witness_deviation, sig.grid_witness_deviation), c.tol_deriv);
    r.set_result("signature", to_string(sig.signature));
    r.set_result("replaced_axis", sig.replaced_axis);
    r.set_result("general", {fcheck.general.real(), fcheck.general.imag()});
    r.set_result("closed", {fcheck.closed.real(), fcheck.closed.imag()});
    if (os.is_open())
      os << '"' << rname << '"' << ',' << R.alpha.real() << ',' << R.alpha.imag() << ',' << fcheck.general.real()
         << ',' << fcheck.general.imag() << ',' << fcheck.closed.real() << ',' << fcheck.closed.imag() << ','
         << fcheck.relative_deviation << ',' << fcheck.skew_ratio.real() << ',' << fcheck.skew_ratio.imag() << ','
         << to_string(sig.signature) << '\n';
  } else {
    // No closed form: eigenspinors from the projector (1 + R/alpha)/2.
    const Mat P = 0.5 * (rep.identity() + R.r / R.alpha);
    const SpinorOperator proj = SpinorOperator::constant(g, P);
    const SpinorField phi = proj.apply(s.spinor(g, 4)), psi = proj.apply(s.spinor(g, 4));
    const SpinorOperator Rop = SpinorOperator::constant(g, R.r);
    const SpinorOperator D = dirac_with_torsion(f, rep, flat_vielbein(g));
    r.add("fermionic.eigenspace", "R-eigenspinors", max_abs_diff(Rop.apply(psi), R.alpha * psi), c.tol_alg);
    const cplx a1 = fermionic_form(phi, psi, Rop, D, J), a2 = fermionic_form(psi, phi, Rop, D, J);
    const cplx ratio = a1 / a2;
    r.add("fermionic.symmetry", "symmetry of the fermionic bilinear in an R-eigenspace",
          std::abs(ratio - expected_skew), 1e-8, "closed form unavailable for this R; " + skew_note(ratio));
    r.set_result("general", {a1.real(), a1.imag()});
    r.set_result("signature", "n/a");
    if (os.is_open())
      os << '"' << rname << '"' << ',' << R.alpha.real() << ',' << R.alpha.imag() << ',' << a1.real() << ','
         << a1.imag() << ",,,," << ratio.real() << ',' << ratio.imag() << ",n/a\n";
  }
  return finish(r, c);
}

int cmd_spectral(const RunConfig& c, const std::string& fstr, const std::string& lstr, int cutoff,
                 const std::string& csv) {
  const auto fv = parse_numbers(fstr, "spectral --f");
  if (fv.size() != 4) throw ConfigError("spectral: --f needs four constants");
  const std::array<double, 4> f{fv[0], fv[1], fv[2], fv[3]};
  const auto lambdas = parse_numbers(lstr, "spectral --lambda");
  const GammaRep rep = euclidean_gammas(2);
  const FourierOracle o = fourier_spectral_action(f, lambdas, cutoff, rep, c.L, c.seed);
  const TorusGrid g(4, 4, c.L);
  std::vector<ScalarField> comps;
  for (double x : f) comps.push_back(ScalarField::constant(g, x));
  const HeatCoefficients h = heat_coefficients(one_form(comps), rep, c.deriv);

  Report r("spectral");
  r.set_config(to_json(c));
  const double e0 = std::abs(o.a0_fit - h.a0) / h.a0;
  // Relative to max(|a2|, a0) so that f = 0 stays meaningful.
  const double e2 = std::abs(o.a2_fit - h.a2.real()) / std::max(std::abs(h.a2), h.a0);
  r.add("spectral.a0", "spectral action mode sum against the leading coefficient", e0, 0.02);
  r.add("spectral.a2", "spectral action mode sum against the second coefficient", e2, 0.05,
        "relative to max(|a2|, a0)");
  r.add("spectral.invariance", "spectral action invariance under twisted conjugations",
        std::max(o.invariance_unitary, o.invariance_rho), c.tol_alg);
  r.set_result("heat", {{"a0", h.a0}, {"a2", h.a2.real()}, {"a4_raw", h.a4_raw.real()}});
  r.set_result("fit", {{"a0", o.a0_fit},
                       {"a2", o.a2_fit},
                       {"constant", o.c_fit},
                       {"condition_number", o.condition_number},
                       {"tail_bound", o.tail_bound}});
  if (!csv.empty()) {
    auto os = open_csv(csv);
    os << "lambda,trace,fit\n";
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const double l2 = lambdas[i] * lambdas[i];
      os << lambdas[i] << ',' << o.traces[i] << ',' << o.a0_fit * l2 * l2 + o.a2_fit * l2 + o.c_fit << '\n';
    }
  }
  return finish(r, c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for twisted spectral triples with torsion"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  std::string config_file, report_path;
  std::vector<std::string> sets;
  std::optional<int> m, N;
  std::optional<double> L, tol_alg, tol_deriv, tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> deriv, suites;
  bool m3 = false;
  app.add_option("--config", config_file, "key=value configuration file");
  app.add_option("--set", sets, "override one configuration key (key=value)");
  app.add_option("--report", report_path, "report output path (overrides TSTK_REPORT)");
  app.add_option("--m", m, "half dimension");
  app.add_option("--N", N, "grid points per axis");
  app.add_option("--L", L, "torus period");
  app.add_option("--deriv", deriv, "derivative scheme: spectral or fd2");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--tol-alg", tol_alg, "tolerance for derivative-free identities");
  app.add_option("--tol-deriv", tol_deriv, "tolerance for identities with derivatives");
  app.add_option("--tol", tol, "set both tolerances");
  app.add_option("--suites", suites, "comma-separated suites");
  app.add_flag("--m3", m3, "include m = 3 in the Clifford suite");

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  auto* torsion = app.add_subcommand("torsion", "generate torsion from h or f");
  torsion->set_help_flag("--help", "print this help message and exit");
  std::string hexpr, fexpr, tcsv;
  torsion->add_option("--h", hexpr, "nowhere-vanishing scalar expression h");
  torsion->add_option("--f", fexpr, "real scalar expression f");
  torsion->add_option("--csv", tcsv, "CSV prefix for omega and K");
  auto* fermionic = app.add_subcommand("fermionic", "fermionic action for R");
  std::string rlist, ffexpr = "0,0,0,0", fcsv;
  fermionic->add_option("--R", rlist, "increasing odd list of gamma indices")->required();
  fermionic->add_option("--f", ffexpr, "four expressions for the torsion 1-form");
  fermionic->add_option("--csv", fcsv, "CSV output path");
  auto* spectral = app.add_subcommand("spectral", "spectral action cross-check for constant f");
  std::string sf = "0,0,0,0", sl = "4,4.8,5.6,6.4,7.2,8", scsv;
  int cutoff = 24;
  spectral->add_option("--f", sf, "four constants");
  spectral->add_option("--lambda", sl, "comma-separated Lambda values");
  spectral->add_option("--cutoff", cutoff, "max |k_mu|");
  spectral->add_option("--csv", scsv, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    RunConfig c;
    if (!config_file.empty()) load_config_file(c, config_file);
    if (const char* env = std::getenv("TSTK_REPORT"); env && *env) c.report = env;
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      apply_setting(c, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (m) c.m = *m;
    if (N) c.N = *N;
    if (L) c.L = *L;
    if (deriv) apply_setting(c, "deriv", *deriv);
    if (seed) c.seed = *seed;
    if (tol) c.tol_alg = c.tol_deriv = *tol;
    if (tol_alg) c.tol_alg = *tol_alg;
    if (tol_deriv) c.tol_deriv = *tol_deriv;
    if (suites) apply_setting(c, "suites", *suites);
    if (m3) c.m3 = true;
    if (!report_path.empty()) c.report = report_path;
    validate(c);

    if (verify->parsed()) return cmd_verify(c);
    if (torsion->parsed()) return cmd_torsion(c, hexpr, fexpr, tcsv);
    if (fermionic->parsed()) return cmd_fermionic(c, rlist, ffexpr, fcsv);
    if (spectral->parsed()) return cmd_spectral(c, sf, sl, cutoff, scsv);
  } catch (const ConfigError& e) {
    std::cerr << "tstk: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "tstk: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IdentityViolation& e) {
    std::cerr << "tstk: identity check failed: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "tstk: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
