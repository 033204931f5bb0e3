#include "nclat/clockshift.hpp"

#include "nclat/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nclat {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

long mod_reduce(long v, long period) {
  long r = v % period;
  return r < 0 ? r + period : r;
}

// diagonal entry arguments are reduced in exact integer arithmetic before
// any trig, so high powers stay as accurate as first powers
Matrix g_power(const ClockShiftBasis& b, long t) {
  Matrix out = Matrix::Zero(b.dim, b.dim);
  for (long j = 0; j < b.dim; ++j) {
    double arg = 0.0;
    switch (b.family) {
      case Family::CyclotomicOdd:
        arg = 2.0 * kPi * 2.0 * static_cast<double>(mod_reduce(j * t, b.dim)) / b.dim;
        break;
      case Family::CyclotomicEven:
        arg = kPi * static_cast<double>(mod_reduce(t * (2 * j + 1), 2 * b.dim)) / b.dim;
        break;
      case Family::Rotation:
        arg = 2.0 * kPi * static_cast<double>(mod_reduce(b.rot_p * j * t, b.rot_q)) /
              b.rot_q;
        break;
    }
    out(j, j) = std::polar(1.0, arg);
  }
  return out;
}

// h^t for t >= 0: each basis vector moves down t slots, picking up one
// wrap factor per crossing of the bottom edge
Matrix h_power_nonneg(const ClockShiftBasis& b, long t) {
  const long N = b.dim;
  const double wrap = (b.family == Family::CyclotomicEven) ? -1.0 : 1.0;
  Matrix out = Matrix::Zero(N, N);
  for (long j = 0; j < N; ++j) {
    const long target = mod_reduce(j - t, N);
    const long wraps = (t + (N - 1 - j)) / N;
    const double sign = (wrap < 0.0 && (wraps % 2 != 0)) ? -1.0 : 1.0;
    out(target, j) = sign;
  }
  return out;
}

Matrix h_power(const ClockShiftBasis& b, long t) {
  if (t >= 0) return h_power_nonneg(b, t);
  return h_power_nonneg(b, -t).adjoint();
}

long scalar_period(const ClockShiftBasis& b) {
  switch (b.family) {
    case Family::CyclotomicOdd:
      return b.dim;
    case Family::CyclotomicEven:
      return 2 * b.dim;
    case Family::Rotation:
      return 2 * b.rot_q;
  }
  return b.dim;
}

double half_phase_arg(const ClockShiftBasis& b) {
  switch (b.family) {
    case Family::CyclotomicOdd:
      return 2.0 * kPi / b.dim;
    case Family::CyclotomicEven:
      return kPi / b.dim;
    case Family::Rotation:
      return kPi * static_cast<double>(b.rot_p) / b.rot_q;
  }
  return 0.0;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::CyclotomicOdd:
      return "cyclotomic-odd";
    case Family::CyclotomicEven:
      return "cyclotomic-even";
    case Family::Rotation:
      return "rotation";
  }
  return "?";
}

ClockShiftBasis build_basis(long dim, Family family) {
  if (dim < 2) throw std::invalid_argument("clock/shift basis needs dim >= 2");
  ClockShiftBasis b;
  b.dim = dim;
  b.family = family;
  switch (family) {
    case Family::CyclotomicOdd: {
      if (dim % 2 == 0)
        throw std::invalid_argument("cyclotomic-odd family needs odd dim");
      b.phase = std::polar(1.0, 4.0 * kPi / dim);
      b.half_phase = std::polar(1.0, 2.0 * kPi / dim);
      break;
    }
    case Family::CyclotomicEven: {
      if (dim % 2 != 0)
        throw std::invalid_argument("cyclotomic-even family needs even dim");
      // phase must be a primitive N-th root here: with exp(4 pi i/N) the
      // clock would close at +identity instead of -identity.
      b.phase = std::polar(1.0, 2.0 * kPi / dim);
      b.half_phase = std::polar(1.0, kPi / dim);
      break;
    }
    case Family::Rotation:
      throw std::invalid_argument("rotation family is built from a fraction; use build_basis_rotation");
  }
  b.g = g_power(b, 1);
  b.h = h_power(b, 1);
  return b;
}

ClockShiftBasis build_basis_rotation(long p, long q) {
  if (q < 2) throw std::invalid_argument("rotation basis needs q >= 2");
  if (p < 1 || p >= q) throw std::invalid_argument("rotation basis needs 1 <= p < q");
  if (std::gcd(p, q) != 1)
    throw std::invalid_argument("rotation basis needs gcd(p, q) = 1");
  ClockShiftBasis b;
  b.dim = q;
  b.family = Family::Rotation;
  b.rot_p = p;
  b.rot_q = q;
  b.phase = std::polar(1.0, 2.0 * kPi * static_cast<double>(p) / q);
  b.half_phase = std::polar(1.0, kPi * static_cast<double>(p) / q);
  b.g = g_power(b, 1);
  b.h = h_power(b, 1);
  return b;
}

Scalar unit_power(Scalar unit, long e) {
  return std::polar(1.0, static_cast<double>(e) * std::arg(unit));
}

Matrix weyl_matrix(const ClockShiftBasis& basis, ModeIndex m) {
  const long per = scalar_period(basis);
  const long t = mod_reduce(m.m1 * m.m2, per);
  const Scalar front = std::polar(1.0, half_phase_arg(basis) * static_cast<double>(t));
  return front * (g_power(basis, m.m1) * h_power(basis, m.m2));
}

double product_residual(const ClockShiftBasis& basis, ModeIndex m, ModeIndex n) {
  const Matrix lhs = weyl_matrix(basis, m) * weyl_matrix(basis, n);
  const long c = cross(m, n);
  const Scalar fold = std::polar(1.0, -half_phase_arg(basis) *
                                          static_cast<double>(mod_reduce(c, scalar_period(basis))));
  const Matrix rhs = fold * weyl_matrix(basis, m + n);
  return operator_norm(lhs - rhs);
}

Scalar structure_constant(const ClockShiftBasis& basis, ModeIndex m, ModeIndex n,
                          Convention convention) {
  const long c = cross(m, n);
  const double s = std::sin(half_phase_arg(basis) * static_cast<double>(c));
  const Scalar plain(0.0, -2.0 * s);
  switch (convention) {
    case Convention::J:
      return plain;
    case Convention::K: {
      if (basis.family != Family::CyclotomicOdd)
        throw std::invalid_argument("K scaling is defined for the cyclotomic-odd family only");
      const double k = 2.0 * kPi / basis.dim;
      return plain / k;
    }
  }
  return plain;
}

double bracket_residual(const ClockShiftBasis& basis, ModeIndex m, ModeIndex n,
                        Convention convention) {
  double scale = 1.0;
  if (convention == Convention::K) {
    if (basis.family != Family::CyclotomicOdd)
      throw std::invalid_argument("K scaling is defined for the cyclotomic-odd family only");
    scale = 1.0 / (2.0 * kPi / basis.dim);
  }
  const Matrix jm = scale * weyl_matrix(basis, m);
  const Matrix jn = scale * weyl_matrix(basis, n);
  const Matrix jmn = scale * weyl_matrix(basis, m + n);
  const Matrix lhs = commutator(jm, jn);
  return operator_norm(lhs - structure_constant(basis, m, n, convention) * jmn);
}

double abs_trace(const ClockShiftBasis& basis, ModeIndex m) {
  return std::abs(weyl_matrix(basis, m).trace());
}

TraceLawResult trace_law(const ClockShiftBasis& basis) {
  TraceLawResult r;
  for (long a = 0; a < basis.dim; ++a) {
    for (long b = 0; b < basis.dim; ++b) {
      if (a == 0 && b == 0) continue;
      r.max_offdiagonal_trace = std::max(r.max_offdiagonal_trace, abs_trace(basis, {a, b}));
    }
  }
  r.identity_trace_error =
      std::abs(weyl_matrix(basis, {0, 0}).trace() - Scalar(static_cast<double>(basis.dim), 0.0));
  return r;
}

SpanResult span_check(const ClockShiftBasis& basis) {
  const long N = basis.dim;
  const long count = N * N - 1;
  SpanResult r;
  r.count = count;
  Matrix stacked(N * N, count);
  long col = 0;
  for (long a = 0; a < N; ++a) {
    for (long b = 0; b < N; ++b) {
      if (a == 0 && b == 0) continue;
      const Matrix jm = weyl_matrix(basis, {a, b});
      r.max_abs_trace = std::max(r.max_abs_trace, std::abs(jm.trace()));
      stacked.col(col++) = Eigen::Map<const Vector>(jm.data(), N * N);
    }
  }
  const Matrix gram = stacked.adjoint() * stacked;
  r.gram_off_identity =
      (gram - static_cast<double>(N) * Matrix::Identity(count, count)).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("span check: eigensolver failed on the Gram matrix");
  r.min_gram_eigenvalue = es.eigenvalues().minCoeff();
  return r;
}

double periodicity_residual(const ClockShiftBasis& basis, ModeIndex m) {
  const Matrix base = weyl_matrix(basis, m);
  const double N = static_cast<double>(basis.dim);
  double worst = 0.0;
  for (int axis = 0; axis < 2; ++axis) {
    for (long t : {-2L, -1L, 1L, 2L}) {
      ModeIndex shifted = m;
      (axis == 0 ? shifted.m1 : shifted.m2) += t * basis.dim;
      const Matrix a = weyl_matrix(basis, shifted);
      const Scalar s = (base.adjoint() * a).trace() / N;
      worst = std::max(worst, std::abs(std::abs(s) - 1.0));
      worst = std::max(worst, operator_norm(a - s * base));
    }
  }
  return worst;
}

VerificationReport verification_report(const ClockShiftBasis& basis, int samples,
                                       std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("verification needs samples >= 1");
  VerificationReport rep;
  rep.dim = basis.dim;
  rep.family = family_name(basis.family);
  rep.samples = samples;
  rep.commutation_residual =
      operator_norm(basis.h * basis.g - basis.phase * (basis.g * basis.h));
  const double closure = (basis.family == Family::CyclotomicEven) ? -1.0 : 1.0;
  const Matrix eye = Matrix::Identity(basis.dim, basis.dim);
  rep.power_residual = std::max(operator_norm(g_power(basis, basis.dim) - closure * eye),
                                operator_norm(h_power(basis, basis.dim) - closure * eye));
  Rng rng(seed);
  const long span = 2 * basis.dim;
  for (int i = 0; i < samples; ++i) {
    const ModeIndex m{rng.uniform_int(-span, span), rng.uniform_int(-span, span)};
    const ModeIndex n{rng.uniform_int(-span, span), rng.uniform_int(-span, span)};
    rep.max_product_residual = std::max(rep.max_product_residual, product_residual(basis, m, n));
    rep.max_bracket_residual =
        std::max(rep.max_bracket_residual, bracket_residual(basis, m, n, Convention::J));
  }
  return rep;
}

std::vector<ConventionRow> bracket_conventions(long N) {
  if (N < 3 || N % 2 == 0)
    throw std::invalid_argument("convention table is defined for odd N >= 3");
  const DeformationParam d = DeformationParam::cyclotomic(N);
  const ClockShiftBasis basis = build_basis(N, Family::CyclotomicOdd);
  const ModeIndex m{1, 0}, n{0, 1};  // cross = 1 reference pair
  const Scalar sine(sine_coefficient(cross(m, n), d.k), 0.0);
  std::vector<ConventionRow> rows;
  rows.push_back({"sine", sine, Scalar(1.0, 0.0)});
  const Scalar j = structure_constant(basis, m, n, Convention::J);
  rows.push_back({"J", j, j / sine});
  const Scalar kk = structure_constant(basis, m, n, Convention::K);
  rows.push_back({"K", kk, kk / sine});
  return rows;
}

}  // namespace nclat
