#include "nclat/cli.hpp"

#include "nclat/bratteli.hpp"
#include "nclat/clockshift.hpp"
#include "nclat/contfrac.hpp"
#include "nclat/linalg.hpp"
#include "nclat/modes.hpp"
#include "nclat/poset.hpp"
#include "nclat/pvtower.hpp"
#include "nclat/rng.hpp"

#include <CLI11.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace nclat {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

struct CheckList {
  Json checks = Json::array();
  bool any_fail = false;

  void add(const std::string& name, const std::string& status, double measured,
           double bound) {
    Json c;
    c["name"] = name;
    c["status"] = status;
    c["measured"] = measured;
    c["bound"] = bound;
    if (status == "fail") any_fail = true;
    checks.push_back(std::move(c));
  }
  // residual-style: pass iff measured <= bound
  void residual(const std::string& name, double measured, double bound) {
    add(name, measured <= bound ? "pass" : "fail", measured, bound);
  }
  void require(const std::string& name, bool ok) {
    add(name, ok ? "pass" : "fail", ok ? 1.0 : 0.0, 1.0);
  }
};

ContinuedFraction resolve_theta(const std::string& theta, std::size_t levels) {
  if (theta == "golden") return golden(levels);
  if (theta == "sqrt2m1") return sqrt2m1(levels);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(theta, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("--theta must be 'golden', 'sqrt2m1', or a number in (0,1)");
  }
  if (used != theta.size())
    throw std::invalid_argument("--theta must be 'golden', 'sqrt2m1', or a number in (0,1)");
  return expand(value, levels);
}

ModeElement random_small_element(Rng& rng) {
  ModeElement e;
  for (int t = 0; t < 3; ++t)
    e.add({rng.uniform_int(-2, 2), rng.uniform_int(-2, 2)},
          Scalar(rng.normal(), rng.normal()));
  e.prune();
  if (e.size() == 0) e.add({1, 0}, Scalar(1.0, 0.0));
  return e;
}

// ---------------------------------------------------------------- su ----

void run_su(const std::string& family, long n, const std::string& theta,
            std::size_t levels, std::uint64_t seed, double tol, Json& params,
            CheckList& checks) {
  ClockShiftBasis basis;
  params["family"] = family;
  if (family == "rotation") {
    const ContinuedFraction cf = resolve_theta(theta, levels);
    if (cf.levels() < levels)
      throw std::invalid_argument("theta expansion terminated before the requested level");
    const BigInt& q_big = cf.q(levels);
    if (q_big > kMaxTowerDim)
      throw std::invalid_argument("rotation denominator exceeds the dimension cap");
    const long q = q_big.convert_to<long>();
    long p = (cf.p(levels) % cf.q(levels)).convert_to<long>();
    if (p < 0) p += q;
    basis = build_basis_rotation(p, q);
    params["theta"] = theta;
    params["levels"] = levels;
    params["p"] = p;
    params["q"] = q;
  } else if (family == "odd" || family == "even") {
    basis = build_basis(n, family == "odd" ? Family::CyclotomicOdd
                                           : Family::CyclotomicEven);
    params["n"] = n;
  } else {
    throw std::invalid_argument("--family must be odd, even, or rotation");
  }
  params["seed"] = seed;
  params["tol"] = tol;

  const Matrix eye = Matrix::Identity(basis.dim, basis.dim);
  const double unit_g = operator_norm(basis.g.adjoint() * basis.g - eye);
  const double unit_h = operator_norm(basis.h.adjoint() * basis.h - eye);
  checks.residual("generator_unitarity", std::max(unit_g, unit_h), 1e-12);

  const VerificationReport vr = verification_report(basis, 100, seed);
  checks.residual("commutation_phase", vr.commutation_residual, 1e-12);
  checks.residual("generator_closure", vr.power_residual, 1e-12);
  checks.residual("product_law_samples", vr.max_product_residual, tol);
  checks.residual("bracket_law_samples", vr.max_bracket_residual, tol);

  if (basis.family == Family::CyclotomicOdd) {
    Rng rng(seed ^ 0x517cc1b727220a95ULL);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const ModeIndex m{rng.uniform_int(-basis.dim, basis.dim),
                        rng.uniform_int(-basis.dim, basis.dim)};
      const ModeIndex nn{rng.uniform_int(-basis.dim, basis.dim),
                         rng.uniform_int(-basis.dim, basis.dim)};
      worst = std::max(worst, bracket_residual(basis, m, nn, Convention::K));
    }
    checks.residual("bracket_law_scaled", worst, tol);
  }

  if (basis.dim <= 63) {
    const TraceLawResult tl = trace_law(basis);
    checks.residual("trace_law", tl.max_offdiagonal_trace, 1e-12);
    checks.residual("identity_trace", tl.identity_trace_error, 1e-12);
  } else {
    // exhaustive cell sweep is cubic-per-entry; sample instead
    Rng rng(seed ^ 0x2545f4914f6cdd1dULL);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      ModeIndex m{rng.uniform_int(0, basis.dim - 1), rng.uniform_int(0, basis.dim - 1)};
      if (m.m1 == 0 && m.m2 == 0) m.m1 = 1;
      worst = std::max(worst, abs_trace(basis, m));
    }
    checks.residual("trace_law_sampled", worst, 1e-12);
  }

  if (basis.dim <= 15) {
    const SpanResult sp = span_check(basis);
    checks.residual("span_traceless", sp.max_abs_trace, 1e-12);
    checks.residual("span_gram_identity", sp.gram_off_identity, 1e-9);
    const double floor = static_cast<double>(basis.dim) * (1.0 - 1e-9);
    checks.add("span_min_gram_eigenvalue",
               sp.min_gram_eigenvalue >= floor ? "pass" : "fail",
               sp.min_gram_eigenvalue, floor);
  }

  checks.residual("periodicity", periodicity_residual(basis, {1, 2}), 1e-12);

  const Scalar sc = structure_constant(basis, {1, 0}, {0, 1}, Convention::J);
  if (basis.family == Family::Rotation) {
    // with convergent fractions of the demo thetas this stays >= 1; report
    // without failing for other inputs
    checks.add("structure_nonvanishing", std::abs(sc) >= 1.0 ? "pass" : "info",
               std::abs(sc), 1.0);
  } else {
    checks.residual("structure_constant_bound", std::abs(sc),
                    4.0 * kPi / static_cast<double>(basis.dim));
  }
}

// ------------------------------------------------------------- moyal ----

void run_moyal(long n, std::uint64_t seed, double tol, Json& params,
               CheckList& checks, std::string& csv) {
  const DeformationParam d = DeformationParam::cyclotomic(n);
  params["n"] = n;
  params["seed"] = seed;
  params["tol"] = tol;

  Rng rng(seed);
  const ModeElement f = random_small_element(rng);
  const ModeElement g = random_small_element(rng);
  const ModeElement h = random_small_element(rng);

  ModeElement anti = sine_bracket(f, g, d) + sine_bracket(g, f, d);
  double anti_worst = 0.0;
  for (const auto& [idx, c] : anti.terms()) anti_worst = std::max(anti_worst, std::abs(c));
  checks.residual("antisymmetry", anti_worst, 0.0);
  checks.residual("self_bracket_zero",
                  static_cast<double>(sine_bracket(f, f, d).size()), 0.0);
  checks.residual("jacobi_identity", jacobi_residual(f, g, h, d), 1e-12);

  if (n <= 31) {
    double worst = 0.0;
    for (long a1 = -1; a1 <= 1; ++a1)
      for (long a2 = -1; a2 <= 1; ++a2)
        for (long b1 = -1; b1 <= 1; ++b1)
          for (long b2 = -1; b2 <= 1; ++b2) {
            const ModeIndex m{a1, a2}, nn{b1, b2};
            const double got = sine_bracket_quadrature(m, nn, d, 7);
            worst = std::max(worst, std::abs(got - sine_coefficient(cross(m, nn), d.k)));
          }
    checks.residual("quadrature_matches_closed_form", worst, tol);
  }

  std::vector<double> ks;
  for (int i = 0; i < 6; ++i) ks.push_back(0.4 / static_cast<double>(1 << i));
  double taylor_excess = -1.0;
  double ratio_min = 1e300, ratio_max = 0.0;
  for (long c = 1; c <= 3; ++c) {
    const auto rows = classical_limit_table({1, 0}, {0, c}, ks);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      taylor_excess = std::max(taylor_excess, rows[i].abs_err - rows[i].taylor_bound);
      if (i + 1 < rows.size()) {
        const double ratio = rows[i].abs_err / rows[i + 1].abs_err;
        ratio_min = std::min(ratio_min, ratio);
        ratio_max = std::max(ratio_max, ratio);
      }
    }
  }
  checks.residual("classical_limit_taylor", taylor_excess, 0.0);
  checks.add("halving_ratio_lower", ratio_min >= 3.5 ? "pass" : "fail", ratio_min, 3.5);
  checks.add("halving_ratio_upper", ratio_max <= 4.5 ? "pass" : "fail", ratio_max, 4.5);

  if (n % 2 == 1 && n >= 3) {
    const auto rows = bracket_conventions(n);
    const Scalar expect_j(0.0, 2.0 * d.k);
    const Scalar expect_k(0.0, 2.0);
    checks.residual("convention_factor_shifted", std::abs(rows[1].factor_vs_sine - expect_j),
                    1e-12);
    checks.residual("convention_factor_scaled", std::abs(rows[2].factor_vs_sine - expect_k),
                    1e-12);
  }

  csv = classical_limit_csv(classical_limit_table({1, 0}, {0, 1}, ks));
}

// ---------------------------------------------------------------- cf ----

void run_cf(const std::string& theta, std::size_t levels, Json& params,
            CheckList& checks, std::string& csv) {
  const ContinuedFraction cf = resolve_theta(theta, levels);
  params["theta"] = theta;
  params["levels_requested"] = levels;
  params["levels"] = cf.levels();

  long long gcd_violations = 0;
  long long det_violations = 0;
  long long growth_violations = 0;
  for (std::size_t n = 1; n <= cf.levels(); ++n) {
    if (boost::multiprecision::gcd(cf.p(n), cf.q(n)) != 1) ++gcd_violations;
    const BigInt expected = (n % 2 == 0) ? BigInt(1) : BigInt(-1);
    if (determinant_level(cf, n) != expected) ++det_violations;
    if (n >= 2 && cf.q(n) <= cf.q(n - 1)) ++growth_violations;
  }
  checks.residual("convergents_coprime", static_cast<double>(gcd_violations), 0.0);
  checks.residual("determinant_identity", static_cast<double>(det_violations), 0.0);
  checks.residual("denominators_increase", static_cast<double>(growth_violations), 0.0);

  const ApproximationReport rep = approximation_check(cf);
  long long bound_violations = 0;
  for (const ApproximationRow& row : rep.rows)
    if (row.bound_evaluable && !row.bound_holds) ++bound_violations;
  checks.residual("approximation_bound", static_cast<double>(bound_violations), 0.0);
  checks.require("error_signs_alternate", rep.signs_alternate);

  csv = to_csv(cf);
}

// ----------------------------------------------------------- bratteli ----

void run_bratteli(const std::string& family, const std::string& theta,
                  std::size_t levels, std::uint64_t seed, Json& params,
                  CheckList& checks, std::string& csv, std::string& dot) {
  BratteliDiagram diagram;
  params["family"] = family;
  if (family == "penrose") {
    diagram = penrose_diagram(levels);
  } else if (family == "pv") {
    diagram = pv_diagram(resolve_theta(theta, levels), levels);
    params["theta"] = theta;
  } else if (family == "poset") {
    diagram = poset_algebra_diagram(levels);
  } else {
    throw std::invalid_argument("--family must be penrose, pv, or poset");
  }
  params["levels"] = levels;
  params["seed"] = seed;

  validate(diagram);
  checks.require("structure_valid", true);

  double worst = -1.0;
  for (std::size_t l = 0; l + 1 < diagram.n_levels(); ++l) {
    long long top = 0;
    for (long long v : diagram.dims[l + 1]) top = std::max(top, v);
    if (top > 400) continue;  // keep the dense check interactive
    worst = std::max(worst, check_homomorphism(diagram, l, 5, seed + l));
  }
  if (worst >= 0.0) checks.residual("embedding_homomorphism", worst, 1e-12);

  if (family == "pv" && theta == "golden")
    checks.require("matches_penrose", diagram == penrose_diagram(levels));

  std::ostringstream table;
  table << "level,vertex,label,dim\n";
  for (std::size_t l = 0; l < diagram.n_levels(); ++l)
    for (std::size_t v = 0; v < diagram.dims[l].size(); ++v)
      table << l + 1 << "," << v << "," << diagram.labels[l][v] << ","
            << diagram.dims[l][v] << "\n";
  csv = table.str();
  dot = to_dot(diagram);
}

// ---------------------------------------------------------------- pv ----

void run_pv(const std::string& theta, std::size_t levels, const std::string& strategy,
            std::uint64_t seed, double tol, Json& params, CheckList& checks,
            std::string& csv) {
  if (levels < 4) throw std::invalid_argument("pv needs --levels >= 4");
  const ContinuedFraction cf = resolve_theta(theta, levels);
  if (cf.levels() < levels)
    throw std::invalid_argument("theta expansion terminated before the requested level");
  const Strategy strat = strategy_from_name(strategy);
  params["theta"] = theta;
  params["levels"] = levels;
  params["strategy"] = strategy;
  params["seed"] = seed;
  params["tol"] = tol;

  const DistanceReport rep =
      distance_report(cf, 4, levels, strat, kDefaultOptimizeIters, seed);

  double comm_max = 0.0, diameter = 0.0;
  for (const DistanceRow& row : rep.rows) {
    comm_max = std::max(comm_max, row.commutation);
    diameter = std::max({diameter, row.du, row.dv});
    std::ostringstream nu, nv;
    nu << "distance_u_n=" << row.n;
    nv << "distance_v_n=" << row.n;
    const auto status = [](double dist, double bound, bool vacuous) {
      if (vacuous) return "vacuous";
      return dist <= bound ? "pass" : "info";
    };
    checks.add(nu.str(), status(row.du, row.bound_u, row.vacuous_u), row.du, row.bound_u);
    checks.add(nv.str(), status(row.dv, row.bound_v, row.vacuous_v), row.dv, row.bound_v);
  }
  checks.residual("commutation_max", comm_max, tol);
  checks.residual("diameter_contract", diameter, 2.0 + 1e-9);

  csv = to_csv(rep);
}

// ------------------------------------------------------------- poset ----

OpenCover demo_cover(const std::string& family) {
  OpenCover cover;
  if (family == "twopoint") {
    cover.points = {"x", "y"};
    cover.sets = {{"O1", {"x", "y"}}, {"O2", {"y"}}};
  } else if (family == "overlap") {
    for (int i = 1; i <= 9; ++i) cover.points.push_back("p" + std::to_string(i));
    std::set<std::string> o1, o2;
    for (int i = 1; i <= 6; ++i) o1.insert("p" + std::to_string(i));
    for (int i = 4; i <= 9; ++i) o2.insert("p" + std::to_string(i));
    cover.sets = {{"O1", o1}, {"O2", o2}};
  } else if (family == "disjoint") {
    for (int i = 1; i <= 4; ++i) cover.points.push_back("p" + std::to_string(i));
    cover.sets = {{"O1", {"p1", "p2"}}, {"O2", {"p3", "p4"}}};
  } else {
    throw std::invalid_argument("--family must be twopoint, overlap, or disjoint");
  }
  return cover;
}

void run_poset(const std::string& family, Json& params, CheckList& checks,
               std::string& csv, std::string& dot) {
  params["family"] = family;
  const OpenCover cover = demo_cover(family);
  const QuotientResult q = quotient_from_cover(cover);

  checks.require("t0", is_t0(q.poset));
  if (family == "twopoint") {
    checks.require("not_hausdorff", !is_hausdorff(q.poset));
    checks.require("matches_two_ideal_order",
                   is_isomorphic(q.poset, two_point_ideal_poset()));
  } else if (family == "overlap") {
    checks.add("class_count", q.poset.size() == 3 ? "pass" : "fail",
               static_cast<double>(q.poset.size()), 3.0);
    checks.require("not_hausdorff", !is_hausdorff(q.poset));
    const int a = q.class_of.at("p1");
    const int b = q.class_of.at("p5");
    const int c = q.class_of.at("p9");
    checks.require("overlap_class_on_top",
                   q.poset.leq[a][b] && q.poset.leq[c][b] && !q.poset.leq[b][a]);
  } else {
    checks.require("hausdorff", is_hausdorff(q.poset));
    checks.require("discrete", is_discrete(q.poset));
  }
  const QuotientResult again = quotient_from_cover(induced_cover(cover));
  checks.require("quotient_idempotent", is_isomorphic(q.poset, again.poset));

  std::ostringstream table;
  table << "element,up_set_size\n";
  for (std::size_t u = 0; u < q.poset.size(); ++u) {
    int ups = 0;
    for (std::size_t v = 0; v < q.poset.size(); ++v)
      if (q.poset.leq[u][v]) ++ups;
    table << q.poset.elements[u] << "," << ups << "\n";
  }
  csv = table.str();
  dot = hasse_dot(q.poset);
}

std::string checks_csv(const Json& checks) {
  std::ostringstream out;
  out.precision(17);
  out << "name,status,measured,bound\n";
  for (const auto& c : checks)
    out << c.at("name").get<std::string>() << "," << c.at("status").get<std::string>()
        << "," << c.at("measured").get<double>() << "," << c.at("bound").get<double>()
        << "\n";
  return out.str();
}

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  CLI::App app{"finite-dimensional substitutes for smooth torus symmetry algebras"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 12345;

  // su
  long su_n = 5;
  std::string su_family = "odd";
  std::string su_theta = "golden";
  std::size_t su_levels = 5;
  double su_tol = 1e-11;
  auto* su = app.add_subcommand("su", "clock/shift generator and bracket checks");
  su->add_option("--n", su_n, "matrix dimension");
  su->add_option("--family", su_family)->check(CLI::IsMember({"odd", "even", "rotation"}));
  su->add_option("--theta", su_theta, "rotation family: continued fraction input");
  su->add_option("--levels", su_levels, "rotation family: convergent level");
  su->add_option("--tol", su_tol);

  // moyal
  long mo_n = 5;
  double mo_tol = 1e-6;
  auto* mo = app.add_subcommand("moyal", "mode bracket and quadrature checks");
  mo->add_option("--n", mo_n, "cyclotomic parameter N (k = 2*pi/N)");
  mo->add_option("--tol", mo_tol);

  // cf
  std::string cf_theta = "golden";
  std::size_t cf_levels = 10;
  auto* cfc = app.add_subcommand("cf", "continued fraction convergents");
  cfc->add_option("--theta", cf_theta);
  cfc->add_option("--levels", cf_levels);

  // bratteli
  std::string br_family = "penrose";
  std::string br_theta = "golden";
  std::size_t br_levels = 5;
  auto* br = app.add_subcommand("bratteli", "leveled multiplicity diagrams");
  br->add_option("--family", br_family)->check(CLI::IsMember({"penrose", "pv", "poset"}));
  br->add_option("--theta", br_theta);
  br->add_option("--levels", br_levels);

  // pv
  std::string pv_theta = "golden";
  std::size_t pv_levels = 8;
  std::string pv_strategy = "naive";
  double pv_tol = 1e-12;
  auto* pv = app.add_subcommand("pv", "finite tower distance report");
  pv->add_option("--theta", pv_theta);
  pv->add_option("--levels", pv_levels);
  pv->add_option("--strategy", pv_strategy)->check(CLI::IsMember({"naive", "optimized"}));
  pv->add_option("--tol", pv_tol);

  // poset
  std::string po_family = "twopoint";
  auto* po = app.add_subcommand("poset", "open-cover quotient posets");
  po->add_option("--family", po_family)
      ->check(CLI::IsMember({"twopoint", "overlap", "disjoint"}));

  for (CLI::App* sub : {su, mo, cfc, br, pv, po}) {
    sub->add_option("--seed", seed);
    sub->add_option("--out", out_path, "write the rendered output to this file");
  }
  for (CLI::App* sub : {su, mo, cfc, pv})
    sub->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  for (CLI::App* sub : {br, po})
    sub->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "dot"}));

  RunResult result;
  std::vector<const char*> argv;
  argv.push_back("nclat");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    result.exit_code = 2;
    result.error = e.what();
    return result;
  }

  std::string cmd;
  for (CLI::App* sub : {su, mo, cfc, br, pv, po})
    if (sub->parsed()) cmd = sub->get_name();

  Json params;
  CheckList checks;
  std::string csv, dot;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (cmd == "su") {
      run_su(su_family, su_n, su_theta, su_levels, seed, su_tol, params, checks);
    } else if (cmd == "moyal") {
      run_moyal(mo_n, seed, mo_tol, params, checks, csv);
    } else if (cmd == "cf") {
      run_cf(cf_theta, cf_levels, params, checks, csv);
    } else if (cmd == "bratteli") {
      run_bratteli(br_family, br_theta, br_levels, seed, params, checks, csv, dot);
    } else if (cmd == "pv") {
      run_pv(pv_theta, pv_levels, pv_strategy, seed, pv_tol, params, checks, csv);
    } else if (cmd == "poset") {
      run_poset(po_family, params, checks, csv, dot);
    }
  } catch (const std::invalid_argument& e) {
    result.exit_code = 2;
    result.error = e.what();
    return result;
  } catch (const std::exception& e) {
    checks.add(std::string("exception: ") + e.what(), "fail", 1.0, 0.0);
  }
  const auto t1 = std::chrono::steady_clock::now();
  params["format"] = format;

  Json report;
  report["command"] = cmd;
  report["parameters"] = std::move(params);
  report["checks"] = checks.checks;
  report["wall_time_ms"] = static_cast<std::int64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
  result.report = std::move(report);

  if (format == "json") {
    result.rendered = result.report.dump(2) + "\n";
  } else if (format == "csv") {
    result.rendered = csv.empty() ? checks_csv(checks.checks) : csv;
  } else {  // dot (only reachable for bratteli/poset)
    result.rendered = dot;
  }
  result.exit_code = checks.any_fail ? 1 : 0;
  result.out_path = out_path;
  return result;
}

}  // namespace nclat
