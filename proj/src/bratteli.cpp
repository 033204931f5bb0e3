#include "nclat/bratteli.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nclat {

namespace {

std::vector<std::string> labels_from_dims(const std::vector<long long>& dims) {
  std::vector<std::string> out;
  out.reserve(dims.size());
  for (long long d : dims) out.push_back("M" + std::to_string(d));
  return out;
}

void check_level_index(const BratteliDiagram& d, std::size_t level) {
  if (level >= d.n_levels())
    throw std::invalid_argument("level index out of range for this diagram");
}

}  // namespace

bool operator==(const BratteliDiagram& a, const BratteliDiagram& b) {
  if (a.dims != b.dims || a.labels != b.labels) return false;
  if (a.multiplicities.size() != b.multiplicities.size()) return false;
  for (std::size_t s = 0; s < a.multiplicities.size(); ++s) {
    const Eigen::MatrixXi& ma = a.multiplicities[s];
    const Eigen::MatrixXi& mb = b.multiplicities[s];
    if (ma.rows() != mb.rows() || ma.cols() != mb.cols() || ma != mb) return false;
  }
  return true;
}

void validate(const BratteliDiagram& d) {
  if (d.dims.empty()) throw std::invalid_argument("diagram has no levels");
  if (d.labels.size() != d.dims.size())
    throw std::invalid_argument("diagram labels do not match levels");
  if (d.multiplicities.size() + 1 != d.dims.size())
    throw std::invalid_argument("diagram needs one multiplicity matrix per level step");
  for (std::size_t l = 0; l < d.dims.size(); ++l) {
    if (d.dims[l].empty()) throw std::invalid_argument("diagram level has no vertices");
    if (d.labels[l].size() != d.dims[l].size())
      throw std::invalid_argument("diagram labels do not match vertices");
    for (long long v : d.dims[l])
      if (v < 1) throw std::invalid_argument("vertex dimensions must be >= 1");
  }
  for (std::size_t s = 0; s < d.multiplicities.size(); ++s) {
    const Eigen::MatrixXi& m = d.multiplicities[s];
    const auto& lower = d.dims[s];
    const auto& upper = d.dims[s + 1];
    if (m.rows() != static_cast<Eigen::Index>(upper.size()) ||
        m.cols() != static_cast<Eigen::Index>(lower.size()))
      throw std::invalid_argument("multiplicity matrix shape does not match level sizes");
    for (Eigen::Index u = 0; u < m.rows(); ++u) {
      long long acc = 0;
      bool any = false;
      for (Eigen::Index v = 0; v < m.cols(); ++v) {
        if (m(u, v) < 0) throw std::invalid_argument("multiplicities must be >= 0");
        if (m(u, v) > 0) any = true;
        acc += static_cast<long long>(m(u, v)) * lower[v];
      }
      if (!any)
        throw std::invalid_argument("every upper vertex must receive at least one edge");
      if (acc != upper[u])
        throw std::invalid_argument("dimension rule dims(l+1) = M dims(l) violated");
    }
  }
}

BratteliDiagram penrose_diagram(std::size_t n_levels) {
  if (n_levels < 1) throw std::invalid_argument("diagram needs at least one level");
  BratteliDiagram d;
  Eigen::MatrixXi m(2, 2);
  m << 1, 1, 1, 0;
  long long a = 1, b = 1;  // consecutive Fibonacci numbers
  for (std::size_t l = 0; l < n_levels; ++l) {
    d.dims.push_back({a, b});
    d.labels.push_back(labels_from_dims(d.dims.back()));
    if (l + 1 < n_levels) d.multiplicities.push_back(m);
    const long long next = a + b;
    b = a;
    a = next;
  }
  validate(d);
  return d;
}

BratteliDiagram pv_diagram(const ContinuedFraction& cf, std::size_t n_levels) {
  if (n_levels < 1) throw std::invalid_argument("diagram needs at least one level");
  if (cf.levels() < n_levels)
    throw std::invalid_argument("continued fraction has too few levels for this diagram");
  BratteliDiagram d;
  for (std::size_t n = 1; n <= n_levels; ++n) {
    d.dims.push_back({cf.q(n).convert_to<long long>(), cf.q(n - 1).convert_to<long long>()});
    d.labels.push_back(labels_from_dims(d.dims.back()));
    if (n < n_levels) {
      Eigen::MatrixXi m(2, 2);
      const long long a = cf.quotient(n + 1);
      if (a > 1000000)
        throw std::invalid_argument("partial quotient too large for a multiplicity entry");
      m << static_cast<int>(a), 1, 1, 0;
      d.multiplicities.push_back(m);
    }
  }
  validate(d);
  return d;
}

BratteliDiagram poset_algebra_diagram(std::size_t n_levels) {
  if (n_levels < 1) throw std::invalid_argument("diagram needs at least one level");
  BratteliDiagram d;
  Eigen::MatrixXi m(2, 2);
  m << 1, 1, 0, 1;
  for (std::size_t l = 0; l < n_levels; ++l) {
    d.dims.push_back({static_cast<long long>(l) + 1, 1});
    d.labels.push_back(labels_from_dims(d.dims.back()));
    if (l + 1 < n_levels) d.multiplicities.push_back(m);
  }
  validate(d);
  return d;
}

std::vector<std::vector<int>> embedding_order(const BratteliDiagram& d, std::size_t step) {
  if (step + 1 >= d.n_levels())
    throw std::invalid_argument("step index out of range for this diagram");
  const Eigen::MatrixXi& m = d.multiplicities[step];
  std::vector<std::vector<int>> order(m.rows());
  for (Eigen::Index u = 0; u < m.rows(); ++u)
    for (Eigen::Index v = 0; v < m.cols(); ++v)
      for (int r = 0; r < m(u, v); ++r) order[u].push_back(static_cast<int>(v));
  return order;
}

LeveledElement embed(const BratteliDiagram& d, const LeveledElement& x) {
  check_level_index(d, x.level);
  if (x.level + 1 >= d.n_levels())
    throw std::invalid_argument("cannot embed past the last level");
  const auto& lower = d.dims[x.level];
  if (x.blocks.size() != lower.size())
    throw std::invalid_argument("element block count does not match level vertices");
  for (std::size_t v = 0; v < lower.size(); ++v) {
    if (x.blocks[v].rows() != lower[v] || x.blocks[v].cols() != lower[v])
      throw std::invalid_argument("element block shape does not match vertex dimension");
  }
  const auto order = embedding_order(d, x.level);
  LeveledElement out;
  out.level = x.level + 1;
  for (std::size_t u = 0; u < order.size(); ++u) {
    const long long dim = d.dims[x.level + 1][u];
    Matrix block = Matrix::Zero(dim, dim);
    Eigen::Index at = 0;
    for (int v : order[u]) {
      const Eigen::Index b = x.blocks[v].rows();
      block.block(at, at, b, b) = x.blocks[v];
      at += b;
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

LeveledElement random_element(const BratteliDiagram& d, std::size_t level, Rng& rng) {
  check_level_index(d, level);
  LeveledElement x;
  x.level = level;
  for (long long dim : d.dims[level]) {
    Matrix b = random_matrix(dim, dim, rng);
    const double norm = operator_norm(b);
    if (norm > 0.0) b /= norm;
    x.blocks.push_back(std::move(b));
  }
  return x;
}

LeveledElement element_product(const LeveledElement& x, const LeveledElement& y) {
  if (x.level != y.level || x.blocks.size() != y.blocks.size())
    throw std::invalid_argument("element product needs matching levels");
  LeveledElement out;
  out.level = x.level;
  for (std::size_t v = 0; v < x.blocks.size(); ++v)
    out.blocks.push_back(x.blocks[v] * y.blocks[v]);
  return out;
}

LeveledElement element_adjoint(const LeveledElement& x) {
  LeveledElement out;
  out.level = x.level;
  for (const Matrix& b : x.blocks) out.blocks.push_back(b.adjoint());
  return out;
}

double element_distance(const LeveledElement& x, const LeveledElement& y) {
  if (x.level != y.level || x.blocks.size() != y.blocks.size())
    throw std::invalid_argument("element distance needs matching levels");
  double worst = 0.0;
  for (std::size_t v = 0; v < x.blocks.size(); ++v)
    worst = std::max(worst, operator_norm(x.blocks[v] - y.blocks[v]));
  return worst;
}

double check_homomorphism(const BratteliDiagram& d, std::size_t level, int samples,
                          std::uint64_t seed) {
  check_level_index(d, level);
  if (level + 1 >= d.n_levels())
    throw std::invalid_argument("cannot embed past the last level");
  if (samples < 1) throw std::invalid_argument("homomorphism check needs samples >= 1");
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const LeveledElement x = random_element(d, level, rng);
    const LeveledElement y = random_element(d, level, rng);
    worst = std::max(worst, element_distance(embed(d, element_product(x, y)),
                                             element_product(embed(d, x), embed(d, y))));
    worst = std::max(worst, element_distance(embed(d, element_adjoint(x)),
                                             element_adjoint(embed(d, x))));
  }
  return worst;
}

std::string to_dot(const BratteliDiagram& d) {
  std::ostringstream out;
  out << "digraph bratteli {\n  rankdir=TB;\n  node [shape=box];\n";
  for (std::size_t l = 0; l < d.n_levels(); ++l) {
    out << "  { rank=same;";
    for (std::size_t v = 0; v < d.dims[l].size(); ++v)
      out << " L" << l + 1 << "_" << v << " [label=\"" << d.labels[l][v] << "\"];";
    out << " }\n";
  }
  for (std::size_t s = 0; s < d.multiplicities.size(); ++s) {
    const Eigen::MatrixXi& m = d.multiplicities[s];
    for (Eigen::Index u = 0; u < m.rows(); ++u)
      for (Eigen::Index v = 0; v < m.cols(); ++v)
        for (int r = 0; r < m(u, v); ++r)
          out << "  L" << s + 1 << "_" << v << " -> L" << s + 2 << "_" << u << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace nclat
