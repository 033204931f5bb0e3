#include "nclat/contfrac.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace nclat {

namespace {

// Denominator ceiling past which double input can no longer certify the
// next quotient: |theta - p/q| ~ 1/q^2 reaches machine epsilon.
const double kCertifiableQ = std::sqrt(1.0 / std::numeric_limits<double>::epsilon());

}  // namespace

ContinuedFraction::ContinuedFraction(std::string tag, double theta,
                                     std::vector<long long> quotients)
    : tag_(std::move(tag)), theta_(theta), quotients_(std::move(quotients)) {
  if (quotients_.empty())
    throw std::invalid_argument("continued fraction needs at least one quotient");
  conv_.reserve(quotients_.size() + 1);
  conv_.push_back({BigInt(0), BigInt(1)});
  BigInt pm1 = 1, qm1 = 0;  // (p_{-1}, q_{-1}) seed the recursion
  for (long long a : quotients_) {
    if (a < 1) throw std::invalid_argument("partial quotients must be >= 1");
    const Convergent& prev = conv_.back();
    BigInt pn = a * prev.p + pm1;
    BigInt qn = a * prev.q + qm1;
    pm1 = prev.p;
    qm1 = prev.q;
    conv_.push_back({std::move(pn), std::move(qn)});
  }
}

BigFloat ContinuedFraction::theta_hp() const {
  if (tag_ == "golden") return (sqrt(BigFloat(5)) - 1) / 2;
  if (tag_ == "sqrt2m1") return sqrt(BigFloat(2)) - 1;
  return BigFloat(theta_);
}

long long ContinuedFraction::quotient(std::size_t n) const {
  if (n < 1 || n > quotients_.size())
    throw std::invalid_argument("quotient index out of range");
  return quotients_[n - 1];
}

const BigInt& ContinuedFraction::p(std::size_t n) const {
  if (n >= conv_.size()) throw std::invalid_argument("convergent index out of range");
  return conv_[n].p;
}

const BigInt& ContinuedFraction::q(std::size_t n) const {
  if (n >= conv_.size()) throw std::invalid_argument("convergent index out of range");
  return conv_[n].q;
}

ContinuedFraction expand(double theta, std::size_t max_terms) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("expand: theta must lie strictly in (0, 1)");
  if (max_terms == 0) throw std::invalid_argument("expand: max_terms must be >= 1");

  std::vector<long long> quotients;
  bool exact = false;
  double r = theta;
  // Track denominators alongside to know when to stop trusting the input.
  BigInt qm1 = 1, qn = 0;
  for (std::size_t i = 0; i < max_terms; ++i) {
    const double inv = 1.0 / r;
    const double fl = std::floor(inv);
    if (!(fl >= 1.0) || fl > 9.0e15)
      throw std::invalid_argument("expand: quotient out of range (theta too close to a rational?)");
    const long long a = static_cast<long long>(fl);
    quotients.push_back(a);
    BigInt next = a * qn + qm1;
    qm1 = qn;
    qn = next;
    r = inv - fl;
    if (r <= 0.0) {
      exact = true;  // rational input consumed exactly
      break;
    }
    if (BigFloat(qn) * BigFloat(qn) > BigFloat(kCertifiableQ * kCertifiableQ)) break;
  }
  ContinuedFraction cf("custom", theta, std::move(quotients));
  if (exact) cf.mark_exact();
  return cf;
}

ContinuedFraction golden(std::size_t n_terms) {
  if (n_terms == 0) throw std::invalid_argument("golden: n_terms must be >= 1");
  std::vector<long long> a(n_terms, 1);
  return ContinuedFraction("golden", (std::sqrt(5.0) - 1.0) / 2.0, std::move(a));
}

ContinuedFraction sqrt2m1(std::size_t n_terms) {
  if (n_terms == 0) throw std::invalid_argument("sqrt2m1: n_terms must be >= 1");
  std::vector<long long> a(n_terms, 2);
  return ContinuedFraction("sqrt2m1", std::sqrt(2.0) - 1.0, std::move(a));
}

BigInt determinant_level(const ContinuedFraction& cf, std::size_t n) {
  if (n < 1 || n > cf.levels())
    throw std::invalid_argument("determinant_level: level out of range");
  return cf.p(n - 1) * cf.q(n) - cf.p(n) * cf.q(n - 1);
}

ApproximationReport approximation_check(const ContinuedFraction& cf) {
  ApproximationReport rep;
  const BigFloat theta = cf.theta_hp();
  const std::size_t L = cf.levels();
  int prev_sign = 0;
  for (std::size_t n = 1; n <= L; ++n) {
    ApproximationRow row;
    row.n = n;
    row.a = cf.quotient(n);
    row.p = cf.p(n);
    row.q = cf.q(n);
    const BigFloat diff = theta - BigFloat(row.p) / BigFloat(row.q);
    row.theta_minus_convergent = diff.convert_to<double>();
    row.sign = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
    if (n + 1 <= L) {
      row.bound_evaluable = true;
      const BigFloat bound = BigFloat(1) / (BigFloat(cf.q(n)) * BigFloat(cf.q(n + 1)));
      row.bound_holds = abs(diff) < bound;
      if (!row.bound_holds) rep.bounds_hold = false;
    }
    if (row.sign == 0) {
      // Only an exactly-consumed rational may land on theta, and only at
      // the final level.
      if (!(cf.exact() && n == L)) rep.signs_alternate = false;
    } else if (prev_sign != 0 && row.sign == prev_sign) {
      rep.signs_alternate = false;
    }
    prev_sign = row.sign;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::string to_csv(const ContinuedFraction& cf) {
  std::ostringstream out;
  out << "n, a_n, p_n, q_n, theta_minus_convergent\n";
  const ApproximationReport rep = approximation_check(cf);
  out.precision(17);
  for (const ApproximationRow& row : rep.rows) {
    out << row.n << ", " << row.a << ", " << row.p << ", " << row.q << ", "
        << row.theta_minus_convergent << "\n";
  }
  return out.str();
}

}  // namespace nclat
