#include "nclat/modes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nclat {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// union of the two supports, sorted
std::vector<ModeIndex> support_union(const ModeElement& f, const ModeElement& g) {
  std::vector<ModeIndex> u;
  u.reserve(f.terms().size() + g.terms().size());
  for (const auto& [m, c] : f.terms()) u.push_back(m);
  for (const auto& [n, c] : g.terms()) u.push_back(n);
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

// Shared bilinear-bracket skeleton.  Working over unordered index pairs
// with the combination w * (f_a g_b - f_b g_a) makes swapping the
// arguments negate every accumulated value bit-for-bit, so antisymmetry
// and bracket(f, f) = 0 are exact, not approximate.
template <typename CoeffFn>
ModeElement bracket_impl(const ModeElement& f, const ModeElement& g, CoeffFn w) {
  const std::vector<ModeIndex> u = support_union(f, g);
  ModeElement out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      const ModeIndex a = u[i];
      const ModeIndex b = u[j];
      const long c = cross(a, b);
      if (c == 0) continue;
      const double weight = w(c);
      const Scalar pair_total =
          weight * (f.coefficient(a) * g.coefficient(b) -
                    f.coefficient(b) * g.coefficient(a));
      out.add(a + b, pair_total);
    }
  }
  out.prune();
  return out;
}

double max_abs_coeff(const ModeElement& e) {
  double m = 0.0;
  for (const auto& [idx, c] : e.terms()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

long cross(ModeIndex m, ModeIndex n) { return m.m1 * n.m2 - m.m2 * n.m1; }

DeformationParam DeformationParam::from_k(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("deformation scale k must be positive");
  DeformationParam d;
  d.k = k;
  return d;
}

DeformationParam DeformationParam::cyclotomic(long N) {
  if (N < 2) throw std::invalid_argument("cyclotomic deformation needs N >= 2");
  DeformationParam d;
  d.k = kTwoPi / static_cast<double>(N);
  d.N = N;
  return d;
}

ModeElement ModeElement::mode(ModeIndex m, Scalar coeff) {
  ModeElement e;
  e.add(m, coeff);
  return e;
}

Scalar ModeElement::coefficient(ModeIndex m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0.0, 0.0) : it->second;
}

ModeElement& ModeElement::add(ModeIndex m, Scalar coeff) {
  terms_[m] += coeff;
  return *this;
}

ModeElement& ModeElement::scale(Scalar s) {
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

ModeElement operator+(const ModeElement& a, const ModeElement& b) {
  ModeElement out = a;
  for (const auto& [m, c] : b.terms_) out.add(m, c);
  out.prune();
  return out;
}

ModeElement operator-(const ModeElement& a, const ModeElement& b) {
  ModeElement out = a;
  for (const auto& [m, c] : b.terms_) out.add(m, -c);
  out.prune();
  return out;
}

ModeElement operator*(const ModeElement& a, const ModeElement& b) {
  // pointwise product of functions on the torus: modes add
  ModeElement out;
  for (const auto& [m, cm] : a.terms_)
    for (const auto& [n, cn] : b.terms_) out.add(m + n, cm * cn);
  out.prune();
  return out;
}

double ModeElement::max_coeff_distance(const ModeElement& a, const ModeElement& b) {
  double m = 0.0;
  for (const auto& [idx, c] : a.terms_) m = std::max(m, std::abs(c - b.coefficient(idx)));
  for (const auto& [idx, c] : b.terms_) m = std::max(m, std::abs(c - a.coefficient(idx)));
  return m;
}

void ModeElement::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= tol)
      it = terms_.erase(it);
    else
      ++it;
  }
}

ModeElement poisson_bracket(const ModeElement& f, const ModeElement& g) {
  return bracket_impl(f, g, [](long c) { return -static_cast<double>(c); });
}

ModeElement sine_bracket(const ModeElement& f, const ModeElement& g,
                         const DeformationParam& d) {
  return bracket_impl(f, g, [&d](long c) { return sine_coefficient(c, d.k); });
}

double sine_coefficient(long cross_value, double k) {
  if (cross_value < 0) return -sine_coefficient(-cross_value, k);
  return -std::sin(k * static_cast<double>(cross_value)) / k;
}

namespace {

// Projection of the lattice-summed kernel onto e_{m+n}, before
// normalization.  `factored` collapses the four lattice axes into the
// O(N^2) form; otherwise the quadruple loop is evaluated literally.
Scalar quadrature_raw(ModeIndex m, ModeIndex n, const DeformationParam& d,
                      int grid, bool factored) {
  if (!d.N.has_value())
    throw std::invalid_argument(
        "quadrature needs the cyclotomic form k = 2*pi/N of the deformation scale");
  const long N = *d.N;
  if (N < 3) throw std::invalid_argument("quadrature needs N >= 3");
  const long maxc = std::max({std::labs(m.m1), std::labs(m.m2),
                              std::labs(n.m1), std::labs(n.m2)});
  if (grid < 4 * maxc + 3) {
    std::ostringstream msg;
    msg << "quadrature grid " << grid << " too coarse for mode components up to "
        << maxc << " (needs >= " << 4 * maxc + 3 << ")";
    throw std::invalid_argument(msg.str());
  }

  const double k = d.k;
  const auto cis = [](double t) { return std::polar(1.0, t); };
  Scalar acc(0.0, 0.0);
  const double step = kTwoPi / grid;

  std::vector<Scalar> a_plus(N), a_minus(N), b_plus(N), b_minus(N);
  for (int s = 0; s < grid; ++s) {
    const double x = step * s;
    for (int t = 0; t < grid; ++t) {
      const double p = step * t;
      Scalar sample(0.0, 0.0);
      if (factored) {
        // z/k = x'(p - p'')/k + p'(x'' - x)/k + (x p'' - p x'')/k with
        // x', p', x'', p'' running over the N-point lattices anchored at
        // (x, p); the first two factors depend on one outer index each.
        for (long dlt = 0; dlt < N; ++dlt) {
          const double pdd = p + k * dlt;
          Scalar ap(0.0, 0.0), am(0.0, 0.0);
          for (long alf = 0; alf < N; ++alf) {
            const double xp = x + k * alf;
            ap += cis(m.m1 * xp + (p - pdd) * xp / k);
            am += cis(m.m1 * xp - (p - pdd) * xp / k);
          }
          a_plus[dlt] = ap;
          a_minus[dlt] = am;
        }
        for (long gam = 0; gam < N; ++gam) {
          const double xdd = x + k * gam;
          Scalar bp(0.0, 0.0), bm(0.0, 0.0);
          for (long bet = 0; bet < N; ++bet) {
            const double pp = p + k * bet;
            bp += cis(m.m2 * pp + (xdd - x) * pp / k);
            bm += cis(m.m2 * pp - (xdd - x) * pp / k);
          }
          b_plus[gam] = bp;
          b_minus[gam] = bm;
        }
        Scalar tp(0.0, 0.0), tm(0.0, 0.0);
        for (long gam = 0; gam < N; ++gam) {
          const double xdd = x + k * gam;
          for (long dlt = 0; dlt < N; ++dlt) {
            const double pdd = p + k * dlt;
            const Scalar gphase = cis(n.m1 * xdd + n.m2 * pdd);
            tp += gphase * cis((x * pdd - p * xdd) / k) * a_plus[dlt] * b_plus[gam];
            tm += gphase * cis(-(x * pdd - p * xdd) / k) * a_minus[dlt] * b_minus[gam];
          }
        }
        sample = (tp - tm) / Scalar(0.0, 2.0);
      } else {
        for (long alf = 0; alf < N; ++alf) {
          const double xp = x + k * alf;
          for (long bet = 0; bet < N; ++bet) {
            const double pp = p + k * bet;
            const Scalar fv = cis(m.m1 * xp + m.m2 * pp);
            for (long gam = 0; gam < N; ++gam) {
              const double xdd = x + k * gam;
              for (long dlt = 0; dlt < N; ++dlt) {
                const double pdd = p + k * dlt;
                const Scalar gv = cis(n.m1 * xdd + n.m2 * pdd);
                const double z = p * (xp - xdd) + x * (pdd - pp) + pp * xdd - pdd * xp;
                sample += fv * gv * std::sin(z / k);
              }
            }
          }
        }
      }
      // project onto e_{m+n}
      acc += sample * cis(-((m.m1 + n.m1) * x + (m.m2 + n.m2) * p));
    }
  }
  return acc / static_cast<double>(grid * grid);
}

double quadrature_calibrated(ModeIndex m, ModeIndex n, const DeformationParam& d,
                             int grid, bool factored) {
  const Scalar raw = quadrature_raw(m, n, d, grid, factored);
  // One pair with a known closed-form coefficient fixes the overall
  // normalization of the lattice sum.
  const Scalar ref = quadrature_raw({1, 0}, {0, 1}, d, grid, factored);
  const double ref_closed = sine_coefficient(1, d.k);
  if (std::abs(ref) < 1e-8)
    throw std::runtime_error("quadrature calibration degenerate: reference projection vanished");
  const double factor = ref_closed / ref.real();
  return factor * raw.real();
}

}  // namespace

double sine_bracket_quadrature(ModeIndex m, ModeIndex n,
                               const DeformationParam& d, int grid) {
  return quadrature_calibrated(m, n, d, grid, /*factored=*/true);
}

namespace detail {
double sine_bracket_quadrature_naive(ModeIndex m, ModeIndex n,
                                     const DeformationParam& d, int grid) {
  return quadrature_calibrated(m, n, d, grid, /*factored=*/false);
}
}  // namespace detail

std::vector<ClassicalLimitRow> classical_limit_table(ModeIndex m, ModeIndex n,
                                                     const std::vector<double>& ks) {
  const long c = cross(m, n);
  std::vector<ClassicalLimitRow> rows;
  rows.reserve(ks.size());
  for (double k : ks) {
    if (!(k > 0.0)) throw std::invalid_argument("classical limit needs k > 0");
    ClassicalLimitRow row;
    row.k = k;
    row.sine = sine_coefficient(c, k);
    row.poisson = -static_cast<double>(c);
    row.abs_err = std::abs(row.sine - row.poisson);
    const double ac = std::abs(static_cast<double>(c));
    row.taylor_bound = k * k * ac * ac * ac / 6.0;
    row.within_bound = row.abs_err <= row.taylor_bound;
    rows.push_back(row);
  }
  return rows;
}

std::string classical_limit_csv(const std::vector<ClassicalLimitRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "k,sine,poisson,abs_err\n";
  for (const ClassicalLimitRow& r : rows)
    out << r.k << "," << r.sine << "," << r.poisson << "," << r.abs_err << "\n";
  return out.str();
}

double jacobi_residual(const ModeElement& f, const ModeElement& g,
                       const ModeElement& h, const DeformationParam& d) {
  const ModeElement s = sine_bracket(f, sine_bracket(g, h, d), d) +
                        sine_bracket(g, sine_bracket(h, f, d), d) +
                        sine_bracket(h, sine_bracket(f, g, d), d);
  return max_abs_coeff(s);
}

}  // namespace nclat
