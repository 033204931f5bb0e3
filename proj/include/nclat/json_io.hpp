#ifndef NCLAT_JSON_IO_HPP
#define NCLAT_JSON_IO_HPP

#include "nclat/bratteli.hpp"
#include "nclat/linalg.hpp"
#include "nclat/poset.hpp"

#include <json.hpp>

namespace nclat {

// Keys keep their insertion order so serialized reports are reproducible
// byte for byte.
using Json = nlohmann::ordered_json;

// {"rows": r, "cols": c, "data": [[re, im], ...]} with data row-major.
inline Json matrix_json(const Matrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      data.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  j["data"] = std::move(data);
  return j;
}

inline Json diagram_json(const BratteliDiagram& d) {
  Json j;
  j["levels"] = d.dims;
  Json mats = Json::array();
  for (const Eigen::MatrixXi& m : d.multiplicities) {
    Json rows = Json::array();
    for (Eigen::Index u = 0; u < m.rows(); ++u) {
      Json row = Json::array();
      for (Eigen::Index v = 0; v < m.cols(); ++v) row.push_back(m(u, v));
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  j["multiplicities"] = std::move(mats);
  j["labels"] = d.labels;
  return j;
}

inline Json poset_json(const FinitePoset& p) {
  Json j;
  j["elements"] = p.elements;
  Json rel = Json::array();
  for (const auto& [u, v] : cover_relations(p)) rel.push_back(Json::array({u, v}));
  j["cover_relations"] = std::move(rel);
  return j;
}

}  // namespace nclat

#endif  // NCLAT_JSON_IO_HPP
