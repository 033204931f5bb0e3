#ifndef NCLAT_PVTOWER_HPP
#define NCLAT_PVTOWER_HPP

#include "nclat/bratteli.hpp"
#include "nclat/contfrac.hpp"
#include "nclat/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nclat {

// Clock/shift pair at tower level n: dimension q_n, phase
// zeta_n = exp(2 pi i p_n / q_n), shift u (+1 wrap) and clock v, with
// v u = zeta u v.
struct TowerLevel {
  std::size_t n = 0;
  long q = 0;
  long p_mod_q = 0;
  Scalar zeta;
  Matrix u;
  Matrix v;
};

// q_n is capped at 4000: beyond that the dense eigensolves downstream
// stop being interactive.
inline constexpr long kMaxTowerDim = 4000;

TowerLevel build_level(const ContinuedFraction& cf, std::size_t n);

// The identity intertwiner: embeds with no basis change.
Matrix naive_w(const ContinuedFraction& cf, std::size_t n);

// rho_n(x, y) for x of size q_{n-1} and y of size q_{n-2}:
// first block W (x + ... + x + y) W^* with a_n copies of x, second block x.
LeveledElement rho(const ContinuedFraction& cf, std::size_t n, const Matrix& x,
                   const Matrix& y, const Matrix& w);

struct OptimizeResult {
  Matrix w;
  double objective = 0.0;        // Frobenius mismatch of the two generators
  double naive_objective = 0.0;  // same objective at the identity W
  int iterations = 0;
  bool improved = false;         // objective < naive_objective
};

// 0 = pick an iteration budget from the dimension (small q gets more)
inline constexpr int kDefaultOptimizeIters = 0;
inline constexpr std::uint64_t kDefaultSeed = 12345;

// Minimizes ||W A_U W^* - U_n||_F^2 + ||W A_V W^* - V_n||_F^2 over unitary
// W by monotone majorize-minimize steps (each step is a polar projection;
// the objective never increases).  A_U, A_V are the block-diagonal stacks
// rho builds its first block from.  Always returns the better of the
// optimized candidate and the identity.
OptimizeResult optimize_w(const ContinuedFraction& cf, std::size_t n, int iters,
                          std::uint64_t seed);

enum class Strategy { Naive, Optimized };
Strategy strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);

struct DistanceRow {
  std::size_t n = 0;
  long q = 0;
  double du = 0.0;       // ||rho(U_{n-1}, U_{n-2}) - U_n (+) U_{n-1}||_op
  double bound_u = 0.0;  // 300 pi / q_{n-2}
  double dv = 0.0;       // same with V
  double bound_v = 0.0;  // 42 pi / q_{n-1} + 7 pi / q_{n-2}
  bool vacuous_u = false;  // bound >= 2 certifies nothing for unitaries
  bool vacuous_v = false;
  bool wform_valid = false;  // both bounds < 2 (informative regime)
  bool pass = false;         // du <= bound_u && dv <= bound_v
  double commutation = 0.0;  // || v u - zeta u v ||_op at this level
};

struct DistanceReport {
  Strategy strategy = Strategy::Naive;
  std::vector<DistanceRow> rows;
};

// Rows n = n_min .. n_max.  With Strategy::Optimized each row uses the
// optimizer's W only when it beats the identity on both distances;
// otherwise the identity row is reported (so "optimized" is never worse).
DistanceReport distance_report(const ContinuedFraction& cf, std::size_t n_min,
                               std::size_t n_max, Strategy strategy,
                               int iters = kDefaultOptimizeIters,
                               std::uint64_t seed = kDefaultSeed);

// Header: n,q_n,dU,boundU,vacuousU,dV,boundV,vacuousV,wform_valid,pass
std::string to_csv(const DistanceReport& rep);

}  // namespace nclat

#endif  // NCLAT_PVTOWER_HPP
