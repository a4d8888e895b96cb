#include "rangelab/matrix_io.hpp"

#include <fstream>

namespace rangelab {

using nlohmann::json;

json matrix_to_json(const CMatrix& m) {
    json re = json::array(), im = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json re_row = json::array(), im_row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json& j) {
    require(j.contains("rows") && j.contains("cols") && j.contains("re") && j.contains("im"),
            "matrix json: required keys are rows, cols, re, im");
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    require(rows >= 1 && cols >= 1, "matrix json: dimensions must be positive");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    require(re.size() == rows && im.size() == rows, "matrix json: row count mismatch");
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        require(re[i].size() == cols && im[i].size() == cols, "matrix json: column count mismatch");
        for (std::size_t jj = 0; jj < cols; ++jj)
            m(i, jj) = Complex(re[i][jj].get<double>(), im[i][jj].get<double>());
    }
    require(m.all_finite(), "matrix json: entries must be finite");
    return m;
}

void save_matrix_json(const std::string& path, const CMatrix& m) {
    std::ofstream out(path);
    require(out.good(), "save_matrix_json: cannot open " + path);
    out << matrix_to_json(m).dump(2) << "\n";
}

CMatrix load_matrix_json(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "load_matrix_json: cannot open " + path);
    json j;
    in >> j;
    return matrix_from_json(j);
}

}  // namespace rangelab
