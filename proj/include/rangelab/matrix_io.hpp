#pragma once

#include <string>

#include <json.hpp>

#include "rangelab/complex_matrix.hpp"

namespace rangelab {

// Matrix JSON format used repo-wide:
//   {"rows": n, "cols": m, "re": [[...]], "im": [[...]]}
// row-major, IEEE-754 doubles.

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

void save_matrix_json(const std::string& path, const CMatrix& m);
CMatrix load_matrix_json(const std::string& path);

}  // namespace rangelab
