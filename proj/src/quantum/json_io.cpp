#include "nkaq/quantum/json_io.hpp"

#include <fstream>

namespace nkaq::quantum {

Json matrix_to_json(const Matrix& m) {
  Json j;
  if (m.rows() == m.cols()) {
    j["dim"] = m.rows();
  } else {
    j["rows"] = m.rows();
    j["cols"] = m.cols();
  }
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  }
  j["entries"] = std::move(entries);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  try {
    Eigen::Index rows = 0, cols = 0;
    if (j.contains("dim")) {
      rows = cols = j.at("dim").get<Eigen::Index>();
    } else {
      rows = j.at("rows").get<Eigen::Index>();
      cols = j.at("cols").get<Eigen::Index>();
    }
    const Json& e = j.at("entries");
    if (rows <= 0 || cols <= 0) throw FormatError("matrix dimension must be positive");
    if (static_cast<Eigen::Index>(e.size()) != rows * cols) {
      throw FormatError("matrix has " + std::to_string(e.size()) + " entries, expected " +
                        std::to_string(rows * cols));
    }
    Matrix m(rows, cols);
    for (Eigen::Index k = 0; k < rows * cols; ++k) {
      const Json& x = e[k];
      if (x.is_number()) {
        m(k / cols, k % cols) = Complex(x.get<double>(), 0.0);
      } else {
        if (!x.is_array() || x.size() != 2) throw FormatError("matrix entry must be a number or [re, im]");
        m(k / cols, k % cols) = Complex(x[0].get<double>(), x[1].get<double>());
      }
    }
    return m;
  } catch (const Json::exception& ex) {
    throw FormatError(std::string("malformed matrix: ") + ex.what());
  }
}

Json superop_to_json(const Superoperator& e) {
  Json ks = Json::array();
  for (const auto& k : e.kraus()) ks.push_back(matrix_to_json(k));
  return Json{{"kraus", ks}};
}

Superoperator superop_from_json(const Json& j) {
  if (!j.contains("kraus") || !j.at("kraus").is_array() || j.at("kraus").empty()) {
    throw FormatError("superoperator needs a nonempty \"kraus\" list");
  }
  std::vector<Matrix> ks;
  for (const auto& k : j.at("kraus")) ks.push_back(matrix_from_json(k));
  return Superoperator(std::move(ks));
}

Json measurement_to_json(const Measurement& m) {
  Json ops = Json::object();
  for (const auto& [i, op] : m.ops()) ops[std::to_string(i)] = matrix_to_json(op);
  return Json{{"ops", ops}, {"projective", m.projective()}};
}

Measurement measurement_from_json(const Json& j) {
  if (!j.contains("ops") || !j.at("ops").is_object()) throw FormatError("measurement needs an \"ops\" object");
  std::map<int, Matrix> ops;
  for (const auto& [key, val] : j.at("ops").items()) {
    std::size_t used = 0;
    int idx = 0;
    try {
      idx = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || idx < 0) throw FormatError("measurement outcome '" + key + "' is not an index");
    ops[idx] = matrix_from_json(val);
  }
  return Measurement(std::move(ops), j.value("projective", false));
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& ex) {
    throw FormatError(path + ": " + ex.what());
  }
}

}  // namespace nkaq::quantum
