// Acceptance sweep: the headline guarantees, each printed as one
// [PASS]/[FAIL] line.  Exit code is the number of failed lines.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "nclat/bratteli.hpp"
#include "nclat/clockshift.hpp"
#include "nclat/contfrac.hpp"
#include "nclat/linalg.hpp"
#include "nclat/modes.hpp"
#include "nclat/poset.hpp"
#include "nclat/pvtower.hpp"
#include "nclat/rng.hpp"

using namespace nclat;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

int g_failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(const std::string& name, bool pass, const std::string& detail,
            double secs) {
  if (!pass) ++g_failures;
  std::printf("[%s] %s (%.2fs) %s\n", pass ? "PASS" : "FAIL", name.c_str(), secs,
              detail.c_str());
  std::fflush(stdout);
}

template <typename Fn>
void criterion(const std::string& name, Fn fn) {
  Timer t;
  bool pass = false;
  std::string detail;
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  report(name, pass, detail, t.seconds());
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(3);
  o << std::scientific << v;
  return o.str();
}

// ------------------------------------------------------------------------

bool odd_commutators(std::string& detail) {
  Timer t;
  Rng rng(20240819);
  double worst = 0.0;
  for (long n = 3; n <= 31; n += 2) {
    const ClockShiftBasis basis = build_basis(n, Family::CyclotomicOdd);
    for (int s = 0; s < 100; ++s) {
      const ModeIndex m{rng.uniform_int(-2 * n, 2 * n), rng.uniform_int(-2 * n, 2 * n)};
      const ModeIndex mm{rng.uniform_int(-2 * n, 2 * n), rng.uniform_int(-2 * n, 2 * n)};
      const Matrix jm = weyl_matrix(basis, m);
      const Matrix jn = weyl_matrix(basis, mm);
      const Matrix jmn = weyl_matrix(basis, m + mm);
      const double angle = 2.0 * kPi * static_cast<double>(cross(m, mm)) / n;
      const Scalar coeff(0.0, -2.0 * std::sin(angle));
      worst = std::max(worst, operator_norm(commutator(jm, jn) - coeff * jmn));
    }
  }
  const double secs = t.seconds();
  detail = "worst residual " + fmt(worst) + ", N = 3..31, 100 pairs each";
  return worst <= 1e-11 && secs < 10.0;
}

bool even_closure(std::string& detail) {
  double worst_pow = 0.0, worst_comm = 0.0;
  for (long n : {4L, 6L, 8L, 10L}) {
    const ClockShiftBasis b = build_basis(n, Family::CyclotomicEven);
    Matrix gp = Matrix::Identity(n, n);
    Matrix hp = Matrix::Identity(n, n);
    for (long i = 0; i < n; ++i) {
      gp = gp * b.g;
      hp = hp * b.h;
    }
    const Matrix eye = Matrix::Identity(n, n);
    worst_pow = std::max({worst_pow, operator_norm(gp + eye), operator_norm(hp + eye)});
    worst_comm =
        std::max(worst_comm, operator_norm(b.h * b.g - b.phase * (b.g * b.h)));
  }
  detail = "closure " + fmt(worst_pow) + ", twist " + fmt(worst_comm) +
           ", N in {4,6,8,10}";
  return worst_pow <= 1e-12 && worst_comm <= 1e-12;
}

bool trace_law_sweep(std::string& detail) {
  double worst = 0.0;
  for (long n = 2; n <= 15; ++n) {
    const Family fam = (n % 2 == 0) ? Family::CyclotomicEven : Family::CyclotomicOdd;
    const TraceLawResult r = trace_law(build_basis(n, fam));
    worst = std::max({worst, r.max_offdiagonal_trace, r.identity_trace_error});
  }
  detail = "worst trace defect " + fmt(worst) + ", every cell mode, N = 2..15";
  return worst <= 1e-12;
}

bool quadrature_matches(std::string& detail) {
  Timer t;
  double worst = 0.0;
  for (long n : {5L, 7L}) {
    const DeformationParam d = DeformationParam::cyclotomic(n);
    for (long a1 = -2; a1 <= 2; ++a1)
      for (long a2 = -2; a2 <= 2; ++a2)
        for (long b1 = -2; b1 <= 2; ++b1)
          for (long b2 = -2; b2 <= 2; ++b2) {
            const ModeIndex m{a1, a2}, mm{b1, b2};
            const double got = sine_bracket_quadrature(m, mm, d, 11);
            const double want = sine_coefficient(cross(m, mm), d.k);
            worst = std::max(worst, std::abs(got - want));
          }
  }
  const double secs = t.seconds();
  detail = "worst gap " + fmt(worst) + " over 1250 pairs, k = 2pi/5 and 2pi/7";
  return worst <= 1e-6 && secs < 30.0;
}

bool classical_limit(std::string& detail) {
  std::vector<double> ks;
  for (int i = 0; i < 6; ++i) ks.push_back(0.4 / static_cast<double>(1 << i));
  double excess = -1e300, ratio_min = 1e300, ratio_max = 0.0;
  for (long c = 1; c <= 3; ++c) {
    const auto rows = classical_limit_table({1, 0}, {0, c}, ks);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      excess = std::max(excess, rows[i].abs_err - rows[i].taylor_bound);
      if (i + 1 < rows.size()) {
        const double r = rows[i].abs_err / rows[i + 1].abs_err;
        ratio_min = std::min(ratio_min, r);
        ratio_max = std::max(ratio_max, r);
      }
    }
  }
  std::ostringstream d;
  d.precision(4);
  d << "ratios in [" << ratio_min << ", " << ratio_max << "], k = 0.4 .. 0.0125";
  detail = d.str();
  return excess <= 0.0 && ratio_min >= 3.5 && ratio_max <= 4.5;
}

bool convergent_laws(std::string& detail) {
  const ContinuedFraction g10 = golden(10);
  const std::vector<long long> want = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
  for (std::size_t n = 1; n <= 10; ++n) {
    if (g10.q(n) != BigInt(want[n - 1])) {
      detail = "golden denominator sequence broke at level " + std::to_string(n);
      return false;
    }
  }
  for (const ContinuedFraction& cf : {golden(30), sqrt2m1(30)}) {
    for (std::size_t n = 1; n <= 30; ++n) {
      const BigInt expect = (n % 2 == 0) ? BigInt(1) : BigInt(-1);
      if (determinant_level(cf, n) != expect) {
        detail = "determinant alternation broke at level " + std::to_string(n) +
                 " for " + cf.tag();
        return false;
      }
    }
  }
  for (const ContinuedFraction& cf : {golden(28), sqrt2m1(28)}) {
    const ApproximationReport rep = approximation_check(cf);
    if (!rep.bounds_hold) {
      detail = "approximation bound failed for " + cf.tag();
      return false;
    }
    if (!rep.signs_alternate) {
      detail = "error signs stopped alternating for " + cf.tag();
      return false;
    }
  }
  detail = "q = 1,2,3,5,...,89; determinants exact to level 30; bounds to level 28";
  return true;
}

bool tower_dimensions(std::string& detail) {
  const BratteliDiagram pen = penrose_diagram(20);
  long long fa = 1, fb = 1;
  for (std::size_t l = 0; l < 20; ++l) {
    if (pen.dims[l][0] != fb || pen.dims[l][1] != fa) {
      detail = "penrose dimensions left the Fibonacci ladder at level " +
               std::to_string(l + 1);
      return false;
    }
    const long long fc = fa + fb;
    fa = fb;
    fb = fc;
  }
  if (pen.dims[19][0] != 10946) {
    detail = "level-20 dimension is not 10946";
    return false;
  }
  if (!(pv_diagram(golden(20), 20) == pen)) {
    detail = "golden tower disagrees with the penrose diagram";
    return false;
  }

  double worst = 0.0;
  int pairs = 0;
  const BratteliDiagram towers[] = {penrose_diagram(12), pv_diagram(sqrt2m1(7), 7),
                                    poset_algebra_diagram(9)};
  for (const BratteliDiagram& d : towers) {
    for (std::size_t l = 0; l + 1 < d.n_levels(); ++l) {
      worst = std::max(worst, check_homomorphism(d, l, 2, 4242 + 17 * l));
      pairs += 2;
    }
  }
  std::ostringstream msg;
  msg << "dims exact to 10946; embedding residual " << fmt(worst) << " over "
      << pairs << " pairs";
  detail = msg.str();
  return worst <= 1e-12 && pairs == 50;
}

bool tower_distances(std::string& detail) {
  Timer t;
  const ContinuedFraction cf = golden(15);
  const DistanceReport naive = distance_report(cf, 4, 14, Strategy::Naive);
  const DistanceReport opt = distance_report(cf, 4, 14, Strategy::Optimized);
  double comm = 0.0, diameter = 0.0;
  bool rows_pass = true, dominated = true;
  for (std::size_t i = 0; i < naive.rows.size(); ++i) {
    const DistanceRow& nr = naive.rows[i];
    const DistanceRow& orow = opt.rows[i];
    comm = std::max({comm, nr.commutation, orow.commutation});
    diameter = std::max({diameter, nr.du, nr.dv, orow.du, orow.dv});
    if (!nr.pass || !orow.pass) rows_pass = false;
    if (orow.du > nr.du + 1e-12 || orow.dv > nr.dv + 1e-12) dominated = false;
  }
  const double secs = t.seconds();
  std::ostringstream msg;
  msg.precision(4);
  msg << "n = 4..14 (q up to 610), diameter " << diameter << ", twist " << fmt(comm);
  detail = msg.str();
  return comm <= 1e-12 && diameter <= 2.0 + 1e-9 && rows_pass && dominated &&
         secs < 120.0;
}

bool cover_quotients(std::string& detail) {
  OpenCover two;
  two.points = {"x", "y"};
  two.sets = {{"O1", {"x", "y"}}, {"O2", {"y"}}};
  const QuotientResult qt = quotient_from_cover(two);
  if (!(is_t0(qt.poset) && !is_hausdorff(qt.poset) &&
        is_isomorphic(qt.poset, two_point_ideal_poset()))) {
    detail = "two-point quotient is not the expected non-separated order";
    return false;
  }

  OpenCover overlap;
  for (int i = 1; i <= 9; ++i) overlap.points.push_back("p" + std::to_string(i));
  std::set<std::string> o1, o2;
  for (int i = 1; i <= 6; ++i) o1.insert("p" + std::to_string(i));
  for (int i = 4; i <= 9; ++i) o2.insert("p" + std::to_string(i));
  overlap.sets = {{"O1", o1}, {"O2", o2}};
  const QuotientResult qo = quotient_from_cover(overlap);
  if (qo.poset.size() != 3) {
    detail = "overlap quotient does not have three classes";
    return false;
  }
  // independent reconstruction from the membership patterns
  for (std::size_t u = 0; u < 3; ++u) {
    for (std::size_t v = 0; v < 3; ++v) {
      const bool subset = std::includes(qo.patterns[v].begin(), qo.patterns[v].end(),
                                        qo.patterns[u].begin(), qo.patterns[u].end());
      if (qo.poset.leq[u][v] != subset) {
        detail = "overlap order disagrees with pattern inclusion";
        return false;
      }
    }
  }
  const int a = qo.class_of.at("p1"), b = qo.class_of.at("p5"), c = qo.class_of.at("p9");
  if (!(qo.poset.leq[a][b] && qo.poset.leq[c][b] && !qo.poset.leq[b][a] &&
        !qo.poset.leq[b][c] && !is_hausdorff(qo.poset))) {
    detail = "overlap class is not on top";
    return false;
  }

  OpenCover disjoint;
  for (int i = 1; i <= 4; ++i) disjoint.points.push_back("p" + std::to_string(i));
  disjoint.sets = {{"O1", {"p1", "p2"}}, {"O2", {"p3", "p4"}}};
  const QuotientResult qd = quotient_from_cover(disjoint);
  if (!(is_hausdorff(qd.poset) && is_discrete(qd.poset))) {
    detail = "disjoint cover did not separate";
    return false;
  }

  detail = "two-point, overlap, and disjoint covers all ordered as expected";
  return true;
}

bool structure_scaling(std::string& detail) {
  double worst_ratio = 0.0;  // |sc| / (4 pi |c| / N), must stay <= 1
  for (long n = 2; n <= 201; ++n) {
    const Family fam = (n % 2 == 0) ? Family::CyclotomicEven : Family::CyclotomicOdd;
    const ClockShiftBasis b = build_basis(n, fam);
    for (long c = 1; c <= 3; ++c) {
      const double sc = std::abs(structure_constant(b, {1, 0}, {0, c}));
      worst_ratio = std::max(worst_ratio, sc / (4.0 * kPi * c / n));
    }
  }

  double min_rot = 1e300;
  const ContinuedFraction cf = golden(14);
  for (std::size_t n = 4; n <= 14; ++n) {
    const long q = cf.q(n).convert_to<long>();
    long p = cf.p(n).convert_to<long>() % q;
    if (p < 0) p += q;
    const ClockShiftBasis b = build_basis_rotation(p, q);
    min_rot = std::min(min_rot, std::abs(structure_constant(b, {1, 0}, {0, 1})));
  }
  std::ostringstream msg;
  msg.precision(4);
  msg << "cyclotomic ratio peak " << worst_ratio << " (N = 2..201), rotation floor "
      << min_rot;
  detail = msg.str();
  return worst_ratio <= 1.0 && min_rot >= 1.0;
}

}  // namespace

int main() {
  criterion("odd-family commutator law", odd_commutators);
  criterion("even-family closure and twist", even_closure);
  criterion("trace law across the cell", trace_law_sweep);
  criterion("lattice quadrature vs closed form", quadrature_matches);
  criterion("classical limit rate", classical_limit);
  criterion("convergent laws and bounds", convergent_laws);
  criterion("tower dimensions and embeddings", tower_dimensions);
  criterion("tower generator distances", tower_distances);
  criterion("cover quotient orders", cover_quotients);
  criterion("structure constant scaling", structure_scaling);

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
