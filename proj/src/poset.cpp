#include "nclat/poset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nclat {

FinitePoset make_poset(std::vector<std::string> elements,
                       std::vector<std::vector<bool>> leq) {
  const std::size_t n = elements.size();
  if (n == 0) throw std::invalid_argument("poset needs at least one element");
  if (leq.size() != n) throw std::invalid_argument("poset relation has the wrong shape");
  for (const auto& row : leq)
    if (row.size() != n) throw std::invalid_argument("poset relation has the wrong shape");
  for (std::size_t u = 0; u < n; ++u)
    if (!leq[u][u]) throw std::invalid_argument("poset relation is not reflexive");
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && leq[u][v] && leq[v][u])
        throw std::invalid_argument("poset relation is not antisymmetric");
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (leq[u][v])
        for (std::size_t w = 0; w < n; ++w)
          if (leq[v][w] && !leq[u][w])
            throw std::invalid_argument("poset relation is not transitive");
  FinitePoset p;
  p.elements = std::move(elements);
  p.leq = std::move(leq);
  return p;
}

QuotientResult quotient_from_cover(const OpenCover& cover) {
  if (cover.points.empty()) throw std::invalid_argument("cover needs at least one point");
  if (cover.sets.empty()) throw std::invalid_argument("cover needs at least one set");
  {
    std::set<std::string> seen(cover.points.begin(), cover.points.end());
    if (seen.size() != cover.points.size())
      throw std::invalid_argument("cover points must be distinct");
    std::set<std::string> names;
    std::set<std::string> covered;
    for (const auto& [name, members] : cover.sets) {
      if (!names.insert(name).second)
        throw std::invalid_argument("cover set names must be distinct");
      for (const std::string& m : members) {
        if (!seen.count(m))
          throw std::invalid_argument("cover set member '" + m + "' is not a listed point");
        covered.insert(m);
      }
    }
    if (covered.size() != cover.points.size())
      throw std::invalid_argument("cover sets must cover every point");
  }

  // pattern of a point: which cover sets contain it
  const auto pattern_of = [&cover](const std::string& pt) {
    std::set<std::string> pat;
    for (const auto& [name, members] : cover.sets)
      if (members.count(pt)) pat.insert(name);
    return pat;
  };

  QuotientResult res;
  std::vector<std::set<std::string>> patterns;
  for (const std::string& pt : cover.points) {
    const std::set<std::string> pat = pattern_of(pt);
    auto it = std::find(patterns.begin(), patterns.end(), pat);
    int idx;
    if (it == patterns.end()) {
      idx = static_cast<int>(patterns.size());
      patterns.push_back(pat);
    } else {
      idx = static_cast<int>(it - patterns.begin());
    }
    res.class_of[pt] = idx;
  }

  const std::size_t n = patterns.size();
  std::vector<std::string> names;
  names.reserve(n);
  for (const auto& pat : patterns) {
    std::string label;
    for (const std::string& s : pat) label += (label.empty() ? "" : "&") + s;
    names.push_back(label);
  }
  // u <= v iff every cover set containing u also contains v: u lies in
  // the closure of v, so minimal open neighborhoods are up-sets
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      leq[u][v] = std::includes(patterns[v].begin(), patterns[v].end(),
                                patterns[u].begin(), patterns[u].end());
  res.poset = make_poset(std::move(names), std::move(leq));
  res.patterns = std::move(patterns);
  return res;
}

OpenCover induced_cover(const OpenCover& cover) {
  const QuotientResult q = quotient_from_cover(cover);
  OpenCover out;
  out.points = q.poset.elements;
  for (const auto& [name, members] : cover.sets) {
    std::set<std::string> classes;
    for (std::size_t c = 0; c < q.patterns.size(); ++c)
      if (q.patterns[c].count(name)) classes.insert(q.poset.elements[c]);
    out.sets.emplace_back(name, std::move(classes));
  }
  return out;
}

FinitePoset two_point_ideal_poset() {
  return make_poset({"I1", "I2"}, {{true, true}, {false, true}});
}

namespace {

std::vector<std::set<std::size_t>> up_sets(const FinitePoset& p) {
  const std::size_t n = p.size();
  std::vector<std::set<std::size_t>> ups(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (p.leq[u][v]) ups[u].insert(v);
  return ups;
}

}  // namespace

bool is_t0(const FinitePoset& p) {
  const auto ups = up_sets(p);
  for (std::size_t u = 0; u < p.size(); ++u)
    for (std::size_t v = u + 1; v < p.size(); ++v)
      if (ups[u] == ups[v]) return false;
  return true;
}

bool is_hausdorff(const FinitePoset& p) {
  // minimal open neighborhoods are the up-sets; two points can be
  // separated iff their up-sets are disjoint
  const auto ups = up_sets(p);
  for (std::size_t u = 0; u < p.size(); ++u) {
    for (std::size_t v = u + 1; v < p.size(); ++v) {
      for (std::size_t w : ups[u])
        if (ups[v].count(w)) return false;
    }
  }
  return true;
}

bool is_discrete(const FinitePoset& p) {
  for (std::size_t u = 0; u < p.size(); ++u)
    for (std::size_t v = 0; v < p.size(); ++v)
      if (u != v && p.leq[u][v]) return false;
  return true;
}

std::vector<std::pair<int, int>> cover_relations(const FinitePoset& p) {
  std::vector<std::pair<int, int>> covers;
  const std::size_t n = p.size();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v || !p.leq[u][v]) continue;
      bool direct = true;
      for (std::size_t w = 0; w < n && direct; ++w)
        if (w != u && w != v && p.leq[u][w] && p.leq[w][v]) direct = false;
      if (direct) covers.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
  }
  return covers;
}

std::string hasse_dot(const FinitePoset& p) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n  node [shape=ellipse];\n";
  for (std::size_t u = 0; u < p.size(); ++u)
    out << "  n" << u << " [label=\"" << p.elements[u] << "\"];\n";
  for (const auto& [u, v] : cover_relations(p))
    out << "  n" << u << " -> n" << v << ";\n";
  out << "}\n";
  return out.str();
}

namespace {

// (|down-set|, |up-set|) per element; isomorphisms must preserve these
std::vector<std::pair<int, int>> signatures(const FinitePoset& p) {
  const std::size_t n = p.size();
  std::vector<std::pair<int, int>> sig(n, {0, 0});
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (p.leq[v][u]) ++sig[u].first;
      if (p.leq[u][v]) ++sig[u].second;
    }
  }
  return sig;
}

bool extend(const FinitePoset& a, const FinitePoset& b,
            const std::vector<std::pair<int, int>>& sa,
            const std::vector<std::pair<int, int>>& sb, std::vector<int>& map,
            std::vector<bool>& used, std::size_t u) {
  const std::size_t n = a.size();
  if (u == n) return true;
  for (std::size_t t = 0; t < n; ++t) {
    if (used[t] || sa[u] != sb[t]) continue;
    bool ok = true;
    for (std::size_t prev = 0; prev < u && ok; ++prev) {
      const std::size_t tp = static_cast<std::size_t>(map[prev]);
      if (a.leq[u][prev] != b.leq[t][tp] || a.leq[prev][u] != b.leq[tp][t]) ok = false;
    }
    if (!ok) continue;
    map[u] = static_cast<int>(t);
    used[t] = true;
    if (extend(a, b, sa, sb, map, used, u + 1)) return true;
    used[t] = false;
  }
  return false;
}

}  // namespace

bool is_isomorphic(const FinitePoset& a, const FinitePoset& b) {
  if (a.size() != b.size()) return false;
  const auto sa = signatures(a);
  const auto sb = signatures(b);
  auto sorted_a = sa;
  auto sorted_b = sb;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  if (sorted_a != sorted_b) return false;
  std::vector<int> map(a.size(), -1);
  std::vector<bool> used(a.size(), false);
  return extend(a, b, sa, sb, map, used, 0);
}

}  // namespace nclat
