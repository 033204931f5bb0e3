#ifndef NCLAT_CONTFRAC_HPP
#define NCLAT_CONTFRAC_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace nclat {

// Denominators grow exponentially and downstream block dimensions must be
// exact, so convergents are kept in arbitrary-precision integers.
using BigInt = boost::multiprecision::cpp_int;
// High-precision value of theta, used where double resolution runs out
// (approximation gaps shrink below 1e-16 well inside the level ranges we
// care about).
using BigFloat = boost::multiprecision::cpp_bin_float_50;

struct Convergent {
  BigInt p;
  BigInt q;
};

// Partial quotients a_1, a_2, ... of theta in (0,1) together with the
// convergents p_n/q_n from the standard two-term recursion
//   p_n = a_n p_{n-1} + p_{n-2},  q_n = a_n q_{n-1} + q_{n-2}
// anchored at (p_0, q_0) = (0, 1) and p_1 = 1, q_1 = a_1.
class ContinuedFraction {
 public:
  ContinuedFraction(std::string tag, double theta,
                    std::vector<long long> quotients);

  const std::string& tag() const { return tag_; }
  double theta() const { return theta_; }
  // theta to 50 digits; exact surds for the symbolic tags.
  BigFloat theta_hp() const;

  std::size_t levels() const { return conv_.size() - 1; }
  long long quotient(std::size_t n) const;        // a_n, n in [1, levels]
  const BigInt& p(std::size_t n) const;           // n in [0, levels]
  const BigInt& q(std::size_t n) const;
  const std::vector<long long>& quotients() const { return quotients_; }

  // True when the expansion terminated because theta was consumed exactly
  // (rational input); the last convergent then equals theta.
  bool exact() const { return exact_; }
  void mark_exact() { exact_ = true; }

 private:
  std::string tag_;
  double theta_;
  std::vector<long long> quotients_;
  std::vector<Convergent> conv_;  // conv_[0] = (0, 1), conv_[n] = (p_n, q_n)
  bool exact_ = false;
};

// Gauss-map expansion of theta in (0,1).  Stops at max_terms, at exact
// consumption of a rational input, or once q_n^2 exceeds 1/machine-epsilon
// (past that point double input cannot certify further quotients).
ContinuedFraction expand(double theta, std::size_t max_terms);

// Symbolic families: all-ones quotients ((sqrt 5 - 1)/2, Fibonacci
// denominators) and all-twos quotients (sqrt 2 - 1, Pell denominators).
ContinuedFraction golden(std::size_t n_terms);
ContinuedFraction sqrt2m1(std::size_t n_terms);

// p_{n-1} q_n - p_n q_{n-1}; equals (-1)^n at every level.  (Writing the
// products in the opposite order flips the sign of the whole sequence.)
BigInt determinant_level(const ContinuedFraction& cf, std::size_t n);

struct ApproximationRow {
  std::size_t n = 0;
  long long a = 0;
  BigInt p;
  BigInt q;
  double theta_minus_convergent = 0.0;
  bool bound_evaluable = false;  // needs q_{n+1}
  bool bound_holds = true;
  int sign = 0;  // sign of theta - p_n/q_n; 0 only for an exact final row
};

struct ApproximationReport {
  std::vector<ApproximationRow> rows;
  bool bounds_hold = true;
  bool signs_alternate = true;
};

// Checks |theta - p_n/q_n| < 1/(q_n q_{n+1}) and the alternation of the
// error sign, in 50-digit arithmetic so the verdicts stay meaningful past
// the resolution of double.
ApproximationReport approximation_check(const ContinuedFraction& cf);

// Header: n, a_n, p_n, q_n, theta_minus_convergent
std::string to_csv(const ContinuedFraction& cf);

}  // namespace nclat

#endif  // NCLAT_CONTFRAC_HPP
