#ifndef NCLAT_MODES_HPP
#define NCLAT_MODES_HPP

#include "nclat/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nclat {

// Fourier mode label on the 2-torus: e_m(x, p) = exp(i(m1 x + m2 p)).
struct ModeIndex {
  long m1 = 0;
  long m2 = 0;

  friend bool operator==(ModeIndex a, ModeIndex b) {
    return a.m1 == b.m1 && a.m2 == b.m2;
  }
  friend bool operator<(ModeIndex a, ModeIndex b) {
    return a.m1 != b.m1 ? a.m1 < b.m1 : a.m2 < b.m2;
  }
  friend ModeIndex operator+(ModeIndex a, ModeIndex b) {
    return {a.m1 + b.m1, a.m2 + b.m2};
  }
};

// m1 n2 - m2 n1: the symplectic area that drives every bracket here.
long cross(ModeIndex m, ModeIndex n);

// Deformation scale.  hbar = 2k throughout; the cyclotomic form pins
// k = 2 pi / N, which is the only case the lattice quadrature handles.
struct DeformationParam {
  double k = 0.0;
  std::optional<long> N;  // set iff k = 2 pi / N
  double hbar() const { return 2.0 * k; }

  static DeformationParam from_k(double k);
  static DeformationParam cyclotomic(long N);
};

// Finite linear combination of modes, keyed by ModeIndex.  Terms with
// |coeff| <= 1e-15 are pruned so exact cancellations stay exact.
class ModeElement {
 public:
  ModeElement() = default;
  static ModeElement mode(ModeIndex m, Scalar coeff = Scalar(1.0, 0.0));

  const std::map<ModeIndex, Scalar>& terms() const { return terms_; }
  Scalar coefficient(ModeIndex m) const;
  std::size_t size() const { return terms_.size(); }

  ModeElement& add(ModeIndex m, Scalar coeff);
  ModeElement& scale(Scalar s);
  friend ModeElement operator+(const ModeElement& a, const ModeElement& b);
  friend ModeElement operator-(const ModeElement& a, const ModeElement& b);
  friend ModeElement operator*(const ModeElement& a, const ModeElement& b);

  // max |coeff| of a - b over the union of supports
  static double max_coeff_distance(const ModeElement& a, const ModeElement& b);

  void prune(double tol = 1e-15);

 private:
  std::map<ModeIndex, Scalar> terms_;
};

// {e_m, e_n} = -cross(m, n) e_{m+n}, extended bilinearly.
ModeElement poisson_bracket(const ModeElement& f, const ModeElement& g);

// {{e_m, e_n}} = -(1/k) sin(k cross(m, n)) e_{m+n}, extended bilinearly.
// Contributions are accumulated in a canonical order independent of the
// argument order, so antisymmetry holds to the last bit.
ModeElement sine_bracket(const ModeElement& f, const ModeElement& g,
                         const DeformationParam& d);

// Scalar coefficient the sine bracket attaches to e_{m+n}; odd in the
// cross value by construction.
double sine_coefficient(long cross_value, double k);

// Coefficient of e_{m+n} in the bracket of two single modes, evaluated by
// the integral kernel
//   sin((1/k)[p(x'-x'') + x(p''-p') + p'x'' - p''x'])
// summed over the N-point lattices (step k = 2 pi / N per axis) that the
// torus periodization collapses the plane integral onto, anchored at each
// sample point of a grid x grid mesh, then projected onto e_{m+n}.  The
// overall normalization is calibrated once per call on the pair
// (1,0),(0,1) whose coefficient is known in closed form.  Requires the
// cyclotomic form of d and grid >= 4*max|component| + 3 so the projection
// can separate every frequency that appears.
double sine_bracket_quadrature(ModeIndex m, ModeIndex n,
                               const DeformationParam& d, int grid);

namespace detail {
// Literal quadruple-loop evaluation of the same lattice sum; quadratic
// cost in lattice size per sample instead of linear, kept as the
// reference the factored evaluation is tested against.
double sine_bracket_quadrature_naive(ModeIndex m, ModeIndex n,
                                     const DeformationParam& d, int grid);
}  // namespace detail

struct ClassicalLimitRow {
  double k = 0.0;
  double sine = 0.0;     // sine-bracket coefficient at this k
  double poisson = 0.0;  // Poisson coefficient (k-independent)
  double abs_err = 0.0;
  double taylor_bound = 0.0;  // k^2 |c|^3 / 6, from |sin x - x| <= |x|^3/6
  bool within_bound = false;
};

// Convergence table of the sine bracket to the Poisson bracket as k -> 0
// for a single mode pair.
std::vector<ClassicalLimitRow> classical_limit_table(ModeIndex m, ModeIndex n,
                                                     const std::vector<double>& ks);

// Header: k,sine,poisson,abs_err
std::string classical_limit_csv(const std::vector<ClassicalLimitRow>& rows);

// max coefficient norm of {{f,{{g,h}}}} + {{g,{{h,f}}}} + {{h,{{f,g}}}}
double jacobi_residual(const ModeElement& f, const ModeElement& g,
                       const ModeElement& h, const DeformationParam& d);

}  // namespace nclat

#endif  // NCLAT_MODES_HPP
