#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nkaq/quantum/superop.hpp"

namespace nkaq::quantum {

using Json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// {"dim": n, "entries": [[re, im], ...]} row-major; bare numbers are read
// as real entries. Non-square shapes use "rows"/"cols" instead of "dim".
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {"kraus": [matrix, ...]}
Json superop_to_json(const Superoperator& e);
Superoperator superop_from_json(const Json& j);

// {"ops": {"0": matrix, ...}, "projective": bool}
Json measurement_to_json(const Measurement& m);
Measurement measurement_from_json(const Json& j);

Json load_json_file(const std::string& path);

}  // namespace nkaq::quantum
