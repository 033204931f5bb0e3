#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nclat/clockshift.hpp"

using namespace nclat;

namespace {

Matrix matrix_power(const Matrix& a, long e) {
  Matrix acc = Matrix::Identity(a.rows(), a.cols());
  for (long i = 0; i < e; ++i) acc = acc * a;
  return acc;
}

}  // namespace

TEST_CASE("odd family satisfies the defining relations") {
  for (long n : {3L, 5L, 9L, 15L}) {
    ClockShiftBasis b = build_basis(n, Family::CyclotomicOdd);
    CHECK(is_unitary(b.g));
    CHECK(is_unitary(b.h));
    // h g = w g h
    CHECK(operator_norm(b.h * b.g - b.phase * b.g * b.h) <= 1e-12);
    CHECK(operator_norm(matrix_power(b.g, n) - Matrix::Identity(n, n)) <= 1e-12);
    CHECK(operator_norm(matrix_power(b.h, n) - Matrix::Identity(n, n)) <= 1e-12);
    CHECK(std::abs(b.phase - std::polar(1.0, 4.0 * M_PI / n)) <= 1e-15);
  }
}

TEST_CASE("even family closes on minus the identity") {
  for (long n : {2L, 4L, 6L, 10L}) {
    ClockShiftBasis b = build_basis(n, Family::CyclotomicEven);
    CHECK(is_unitary(b.g));
    CHECK(is_unitary(b.h));
    CHECK(operator_norm(b.h * b.g - b.phase * b.g * b.h) <= 1e-12);
    CHECK(operator_norm(matrix_power(b.g, n) + Matrix::Identity(n, n)) <= 1e-12);
    CHECK(operator_norm(matrix_power(b.h, n) + Matrix::Identity(n, n)) <= 1e-12);
    CHECK(std::abs(b.phase - std::polar(1.0, 2.0 * M_PI / n)) <= 1e-15);
  }
}

TEST_CASE("rotation family uses the p/q phase") {
  ClockShiftBasis b = build_basis_rotation(3, 5);
  CHECK(b.dim == 5);
  CHECK(std::abs(b.phase - std::polar(1.0, 2.0 * M_PI * 3.0 / 5.0)) <= 1e-15);
  CHECK(operator_norm(b.h * b.g - b.phase * b.g * b.h) <= 1e-12);
  CHECK(operator_norm(matrix_power(b.g, 5) - Matrix::Identity(5, 5)) <= 1e-12);
  CHECK(operator_norm(matrix_power(b.h, 5) - Matrix::Identity(5, 5)) <= 1e-12);
}

TEST_CASE("basis construction rejects bad parameters") {
  CHECK_THROWS_AS(build_basis(4, Family::CyclotomicOdd), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(5, Family::CyclotomicEven), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(1, Family::CyclotomicOdd), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(3, Family::Rotation), std::invalid_argument);
  CHECK_THROWS_AS(build_basis_rotation(2, 4), std::invalid_argument);  // gcd 2
  CHECK_THROWS_AS(build_basis_rotation(1, 1), std::invalid_argument);
}

TEST_CASE("product law carries the inverse half-phase twist") {
  ClockShiftBasis b = build_basis(3, Family::CyclotomicOdd);
  ModeIndex m{1, 0}, n{0, 1};
  CHECK(product_residual(b, m, n) <= 1e-13);
  // the opposite sign convention is visibly wrong, not a borderline call
  Matrix lhs = weyl_matrix(b, m) * weyl_matrix(b, n);
  Matrix wrong = unit_power(b.half_phase, cross(m, n)) * weyl_matrix(b, m + n);
  CHECK(operator_norm(lhs - wrong) > 1.0);
}

TEST_CASE("product law holds across families and mode ranges") {
  ClockShiftBasis bases[] = {build_basis(7, Family::CyclotomicOdd),
                             build_basis(6, Family::CyclotomicEven),
                             build_basis_rotation(2, 7)};
  for (const ClockShiftBasis& b : bases) {
    for (long i = -3; i <= 3; i += 2) {
      for (long j = -2; j <= 3; j += 2) {
        CHECK(product_residual(b, {i, j}, {j + 1, i - 2}) <= 1e-12);
      }
    }
  }
}

TEST_CASE("frozen commutator coefficient at dimension three") {
  ClockShiftBasis b = build_basis(3, Family::CyclotomicOdd);
  Scalar sc = structure_constant(b, {1, 0}, {0, 1});
  // -2i sin(2 pi / 3) = -i sqrt(3)
  CHECK(std::abs(sc - Scalar(0.0, -1.7320508075688772)) <= 1e-14);
  CHECK(bracket_residual(b, {1, 0}, {0, 1}) <= 1e-13);
}

TEST_CASE("frozen commutator coefficient for a rotation pair") {
  ClockShiftBasis b = build_basis_rotation(3, 5);
  Scalar sc = structure_constant(b, {1, 0}, {0, 1});
  // -2i sin(3 pi / 5)
  CHECK(std::abs(sc - Scalar(0.0, -1.9021130325903071)) <= 1e-14);
  CHECK(bracket_residual(b, {1, 0}, {0, 1}) <= 1e-13);
}

TEST_CASE("even family commutator matches the half-angle formula") {
  ClockShiftBasis b = build_basis(4, Family::CyclotomicEven);
  ModeIndex m{1, 0}, n{0, 1};
  Scalar sc = structure_constant(b, m, n);
  // -2i sin(pi / 4)
  CHECK(std::abs(sc - Scalar(0.0, -1.4142135623730951)) <= 1e-14);
  CHECK(bracket_residual(b, m, n) <= 1e-13);
}

TEST_CASE("rescaled convention divides by the deformation scale") {
  long n = 5;
  ClockShiftBasis b = build_basis(n, Family::CyclotomicOdd);
  double k = 2.0 * M_PI / n;
  Scalar scj = structure_constant(b, {1, 0}, {0, 1}, Convention::J);
  Scalar sck = structure_constant(b, {1, 0}, {0, 1}, Convention::K);
  CHECK(std::abs(sck - scj / k) <= 1e-14);
  CHECK(bracket_residual(b, {1, 0}, {0, 1}, Convention::K) <= 1e-12);
  // K is defined only where k = 2 pi / N is the odd cyclotomic scale
  ClockShiftBasis be = build_basis(4, Family::CyclotomicEven);
  CHECK_THROWS_AS(structure_constant(be, {1, 0}, {0, 1}, Convention::K),
                  std::invalid_argument);
}

TEST_CASE("bracket conventions table freezes the conversion factors") {
  std::vector<ConventionRow> rows = bracket_conventions(5);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].name == "sine");
  CHECK(rows[1].name == "J");
  CHECK(rows[2].name == "K");
  double k = 2.0 * M_PI / 5.0;
  CHECK(std::abs(rows[1].factor_vs_sine - Scalar(0.0, 2.0 * k)) <= 1e-13);
  CHECK(std::abs(rows[2].factor_vs_sine - Scalar(0.0, 2.0)) <= 1e-13);
}

TEST_CASE("traces vanish away from the lattice origin") {
  for (long n = 2; n <= 9; ++n) {
    Family fam = (n % 2 == 0) ? Family::CyclotomicEven : Family::CyclotomicOdd;
    ClockShiftBasis b = build_basis(n, fam);
    TraceLawResult r = trace_law(b);
    CHECK(r.max_offdiagonal_trace <= 1e-12);
    CHECK(r.identity_trace_error <= 1e-12);
    CHECK(abs_trace(b, {0, 0}) == doctest::Approx(double(n)).epsilon(1e-13));
    CHECK(abs_trace(b, {1, 2}) <= 1e-13);
  }
}

TEST_CASE("cell basis is orthogonal with squared length N") {
  for (long n : {3L, 4L, 5L}) {
    Family fam = (n % 2 == 0) ? Family::CyclotomicEven : Family::CyclotomicOdd;
    SpanResult s = span_check(build_basis(n, fam));
    CHECK(s.count == n * n - 1);
    CHECK(s.max_abs_trace <= 1e-12);
    CHECK(s.gram_off_identity <= 1e-9);
    CHECK(s.min_gram_eigenvalue >= double(n) * (1.0 - 1e-9));
  }
}

TEST_CASE("shifting a mode by the lattice period changes it by a phase") {
  ClockShiftBasis bases[] = {build_basis(5, Family::CyclotomicOdd),
                             build_basis(4, Family::CyclotomicEven),
                             build_basis_rotation(2, 5)};
  for (const ClockShiftBasis& b : bases) {
    CHECK(periodicity_residual(b, {1, 2}) <= 1e-12);
    CHECK(periodicity_residual(b, {0, 0}) <= 1e-12);
    CHECK(periodicity_residual(b, {-1, 3}) <= 1e-12);
  }
}

TEST_CASE("powers of the shift match explicit repeated multiplication") {
  for (long n : {4L, 5L}) {
    Family fam = (n % 2 == 0) ? Family::CyclotomicEven : Family::CyclotomicOdd;
    ClockShiftBasis b = build_basis(n, fam);
    for (long t = 0; t <= 2 * n + 1; ++t) {
      Matrix direct = weyl_matrix(b, {0, t});
      Matrix looped = matrix_power(b.h, t);
      CHECK(operator_norm(direct - looped) <= 1e-12);
      Matrix gdirect = weyl_matrix(b, {t, 0});
      Matrix glooped = matrix_power(b.g, t);
      CHECK(operator_norm(gdirect - glooped) <= 1e-12);
    }
  }
}

TEST_CASE("random product and bracket sweeps stay at machine precision") {
  ClockShiftBasis bases[] = {build_basis(9, Family::CyclotomicOdd),
                             build_basis(8, Family::CyclotomicEven),
                             build_basis_rotation(3, 8)};
  for (const ClockShiftBasis& b : bases) {
    VerificationReport rep = verification_report(b, 50, 2025);
    CHECK(rep.samples == 50);
    CHECK(rep.commutation_residual <= 1e-12);
    CHECK(rep.power_residual <= 1e-12);
    CHECK(rep.max_product_residual <= 1e-12);
    CHECK(rep.max_bracket_residual <= 1e-12);
  }
}

TEST_CASE("family names render for reports") {
  CHECK(family_name(Family::CyclotomicOdd) == "cyclotomic-odd");
  CHECK(family_name(Family::CyclotomicEven) == "cyclotomic-even");
  CHECK(family_name(Family::Rotation) == "rotation");
}
