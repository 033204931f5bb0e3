#ifndef NCLAT_CLOCKSHIFT_HPP
#define NCLAT_CLOCKSHIFT_HPP

#include "nclat/linalg.hpp"
#include "nclat/modes.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nclat {

enum class Family {
  CyclotomicOdd,   // odd N: g = diag(w^j), shift wraps with +1, g^N = h^N = I
  CyclotomicEven,  // even N: g = sqrt(w) diag(w^j), shift wraps with -1,
                   // g^N = h^N = -I
  Rotation,        // dim q, w = exp(2 pi i p/q), plain clock and shift
};

std::string family_name(Family f);

// Unitary clock/shift pair generating a finite Weyl system:
//   h g = phase * g h,  so the basis elements
//   J_m = half_phase^{m1 m2} g^{m1} h^{m2}
// multiply as J_m J_n = half_phase^{-cross(m,n)} J_{m+n}.
struct ClockShiftBasis {
  long dim = 0;
  Family family = Family::CyclotomicOdd;
  Scalar phase;       // w
  Scalar half_phase;  // a square root of w, fixed per family
  long rot_p = 0, rot_q = 0;  // Rotation family only
  Matrix g;
  Matrix h;
};

ClockShiftBasis build_basis(long dim, Family family);  // cyclotomic families
ClockShiftBasis build_basis_rotation(long p, long q);  // dim q, gcd(p, q) = 1

// J_m as above; m may have negative or out-of-cell components.
Matrix weyl_matrix(const ClockShiftBasis& basis, ModeIndex m);

// integer power of a unitary scalar, computed as a fresh cis so repeated
// multiplication drift never accumulates
Scalar unit_power(Scalar unit, long e);

// operator-norm residual of J_m J_n = half_phase^{-cross(m,n)} J_{m+n}
double product_residual(const ClockShiftBasis& basis, ModeIndex m, ModeIndex n);

// Which rescaling of the basis the structure constant refers to:
//   J:  plain J_m;  [J_m, J_n] = -2i sin(arg(half_phase) cross) J_{m+n}
//   K:  K_m = J_m / k with k = 2 pi/N (odd cyclotomic only);
//       [K_m, K_n] = -(2i/k) sin(k cross) K_{m+n}
enum class Convention { J, K };

Scalar structure_constant(const ClockShiftBasis& basis, ModeIndex m, ModeIndex n,
                          Convention convention = Convention::J);

// operator-norm residual of [J_m, J_n] = structure_constant * J_{m+n}
// (measured in the requested convention's scaling)
double bracket_residual(const ClockShiftBasis& basis, ModeIndex m, ModeIndex n,
                        Convention convention = Convention::J);

// |Tr J_m|; vanishes unless m = 0 mod N in both components
double abs_trace(const ClockShiftBasis& basis, ModeIndex m);

struct TraceLawResult {
  double max_offdiagonal_trace = 0.0;  // over the cell minus the origin
  double identity_trace_error = 0.0;   // |Tr J_0 - N|
};
TraceLawResult trace_law(const ClockShiftBasis& basis);

struct SpanResult {
  long count = 0;                    // N^2 - 1 candidates
  double max_abs_trace = 0.0;        // tracelessness of the candidates
  double min_gram_eigenvalue = 0.0;  // of the trace-form Gram matrix
  double gram_off_identity = 0.0;    // || Gram - N I ||_max
};
// The J_m for m in the fundamental cell minus the origin: traceless, and
// their Gram matrix under <A,B> = Tr(A^* B) is N times the identity, so
// they are linearly independent and span the traceless matrices.
SpanResult span_check(const ClockShiftBasis& basis);

// max over t in {-2,-1,1,2}, both axes, of
// || J_{m + t N e_axis} - unit scalar * J_m ||_op  (the scalar is measured
// from the matrices themselves, |scalar| = 1 enforced)
double periodicity_residual(const ClockShiftBasis& basis, ModeIndex m);

struct VerificationReport {
  long dim = 0;
  std::string family;
  double commutation_residual = 0.0;  // || h g - phase g h ||_op
  double power_residual = 0.0;        // || g^N -+ I ||, || h^N -+ I || (max)
  double max_product_residual = 0.0;
  double max_bracket_residual = 0.0;
  int samples = 0;
};
// Random mode pairs with components in [-2 dim, 2 dim].
VerificationReport verification_report(const ClockShiftBasis& basis, int samples,
                                       std::uint64_t seed);

struct ConventionRow {
  std::string name;        // "sine", "J", "K"
  Scalar coefficient;      // structure constant at a reference pair (cross = 1)
  Scalar factor_vs_sine;   // coefficient / sine-bracket coefficient
};
// The three bracket normalizations in play for the cyclotomic-odd family
// at a given N, evaluated on a cross = 1 pair: the sine-bracket
// coefficient, the J form (factor 2ik), and the K form (factor 2i).
std::vector<ConventionRow> bracket_conventions(long N);

}  // namespace nclat

#endif  // NCLAT_CLOCKSHIFT_HPP
