#ifndef NCLAT_BRATTELI_HPP
#define NCLAT_BRATTELI_HPP

#include "nclat/contfrac.hpp"
#include "nclat/linalg.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace nclat {

// Leveled multiplicity diagram: levels of vertices carrying block
// dimensions, with integer edge multiplicities between consecutive
// levels.  dims(l+1) = M(l) * dims(l) holds exactly in integers.
struct BratteliDiagram {
  std::vector<std::vector<long long>> dims;       // dims[l][v], level l = 0-based
  std::vector<Eigen::MatrixXi> multiplicities;    // step l -> l+1
  std::vector<std::vector<std::string>> labels;   // parallel to dims

  std::size_t n_levels() const { return dims.size(); }
};

bool operator==(const BratteliDiagram& a, const BratteliDiagram& b);

// Throws unless shapes are consistent, dims(l+1) = M(l) dims(l) exactly,
// every multiplicity is >= 0, and every upper vertex receives at least
// one edge.
void validate(const BratteliDiagram& d);

// Two vertices per level, M = [[1,1],[1,0]]: Fibonacci dimension growth.
BratteliDiagram penrose_diagram(std::size_t n_levels);

// Two vertices per level with dims (q_n, q_{n-1}) and step matrices
// [[a_{n+1}, 1], [1, 0]] read off the quotients of cf.
BratteliDiagram pv_diagram(const ContinuedFraction& cf, std::size_t n_levels);

// Two vertices per level with dims (n, 1), M = [[1,1],[0,1]].
BratteliDiagram poset_algebra_diagram(std::size_t n_levels);

// Element of the level-l algebra: one matrix block per vertex.
struct LeveledElement {
  std::size_t level = 0;  // 0-based
  std::vector<Matrix> blocks;
};

// For each upper vertex, the sequence of lower vertices whose blocks get
// stacked on its diagonal (lower vertex v repeated M[u][v] times, in
// increasing v).  This fixes the embedding convention everywhere.
std::vector<std::vector<int>> embedding_order(const BratteliDiagram& d, std::size_t step);

// Unital-free block-diagonal embedding of level l into level l+1 along the
// multiplicity matrix, in the embedding_order convention.
LeveledElement embed(const BratteliDiagram& d, const LeveledElement& x);

// Random element with unit-operator-norm blocks.
LeveledElement random_element(const BratteliDiagram& d, std::size_t level, Rng& rng);

LeveledElement element_product(const LeveledElement& x, const LeveledElement& y);
LeveledElement element_adjoint(const LeveledElement& x);

// max operator-norm block difference
double element_distance(const LeveledElement& x, const LeveledElement& y);

// max residual over seeded random pairs of
//   embed(x y) vs embed(x) embed(y)   and   embed(x^*) vs embed(x)^*
double check_homomorphism(const BratteliDiagram& d, std::size_t level, int samples,
                          std::uint64_t seed);

// GraphViz rendering, one edge drawn per unit of multiplicity.
std::string to_dot(const BratteliDiagram& d);

}  // namespace nclat

#endif  // NCLAT_BRATTELI_HPP
