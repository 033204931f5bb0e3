#ifndef NCLAT_POSET_HPP
#define NCLAT_POSET_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nclat {

// Finite open cover of a finite point set: named sets whose union is the
// whole point list.
struct OpenCover {
  std::vector<std::string> points;
  std::vector<std::pair<std::string, std::set<std::string>>> sets;
};

// Finite poset as an explicit <= relation matrix.
struct FinitePoset {
  std::vector<std::string> elements;
  std::vector<std::vector<bool>> leq;  // leq[u][v] means u <= v

  std::size_t size() const { return elements.size(); }
};

// Validates reflexivity, antisymmetry, transitivity; throws otherwise.
FinitePoset make_poset(std::vector<std::string> elements,
                       std::vector<std::vector<bool>> leq);

struct QuotientResult {
  FinitePoset poset;
  std::map<std::string, int> class_of;          // point -> class index
  std::vector<std::set<std::string>> patterns;  // class -> set names containing it
};

// Identify points lying in exactly the same cover sets; order the classes
// by specialization: u <= v iff every cover set containing u also
// contains v (u lies in the closure of v).
QuotientResult quotient_from_cover(const OpenCover& cover);

// Cover induced on the quotient classes (same set names); quotienting
// again reproduces the same poset.
OpenCover induced_cover(const OpenCover& cover);

// Two ideals ordered by inclusion: I1 <= I2.
FinitePoset two_point_ideal_poset();

// Distinct points have distinct minimal open up-sets.
bool is_t0(const FinitePoset& p);

// Distinct points have disjoint open neighborhoods; for these order
// topologies that happens exactly when no two distinct points are
// comparable.
bool is_hausdorff(const FinitePoset& p);

bool is_discrete(const FinitePoset& p);

// Covering pairs (u, v): u < v with nothing strictly between.
std::vector<std::pair<int, int>> cover_relations(const FinitePoset& p);

// GraphViz rendering of the covering relation, drawn upward.
std::string hasse_dot(const FinitePoset& p);

// Order isomorphism test by backtracking with degree-signature pruning.
bool is_isomorphic(const FinitePoset& a, const FinitePoset& b);

}  // namespace nclat

#endif  // NCLAT_POSET_HPP
