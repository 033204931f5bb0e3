#ifndef NCLAT_LINALG_HPP
#define NCLAT_LINALG_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

#include "nclat/rng.hpp"

namespace nclat {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Default tolerances: construction-level identities are expected to hold to
// near machine precision, derived properties get more slack.
inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kDerivedTol = 1e-9;

// Thrown when power iteration hits its iteration cap; carries the last
// estimate so callers can still report a value alongside the failure.
struct NormIterationError : std::runtime_error {
  NormIterationError(const std::string& what, double estimate)
      : std::runtime_error(what), last_estimate(estimate) {}
  double last_estimate;
};

// a*b - b*a.  Throws std::invalid_argument naming both shapes on mismatch.
Matrix commutator(const Eigen::Ref<const Matrix>& a,
                  const Eigen::Ref<const Matrix>& b);

// Block-diagonal direct sum, a in the upper-left corner.
template <typename DerivedA, typename DerivedB>
Matrix direct_sum(const Eigen::MatrixBase<DerivedA>& a,
                  const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// Matrices at or below this column count take the dense-eigensolve path in
// operator_norm; larger ones are handled by power iteration.
inline constexpr Eigen::Index kDenseNormCutoff = 48;

// Largest singular value.  Small matrices (cols <= kDenseNormCutoff) use a
// dense Hermitian eigensolve of a^* a; larger ones use power iteration with
// a deterministic start vector, relative tolerance on the squared estimate,
// and iteration cap 10*dim + 200.  Hitting the cap throws NormIterationError
// with the last estimate attached.  Works for rectangular inputs.
double operator_norm(const Eigen::Ref<const Matrix>& a,
                     double rel_tol = 1e-12);

// True iff ||a^* a - I||_op <= tol.  Throws on non-square input.
bool is_unitary(const Eigen::Ref<const Matrix>& a,
                double tol = kConstructionTol);

// True iff every entry is finite (no NaN/Inf crept into a computation).
bool all_finite(const Eigen::Ref<const Matrix>& a);

// Dense Gaussian test matrix with independent complex N(0,1) entries.
Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Haar-ish random unitary: QR of a complex Gaussian matrix with the usual
// phase fix on R's diagonal.
Matrix random_unitary(Eigen::Index dim, Rng& rng);

namespace detail {
std::string shape_string(Eigen::Index rows, Eigen::Index cols);
}

}  // namespace nclat

#endif  // NCLAT_LINALG_HPP
