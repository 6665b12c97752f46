// Copyright 2026 The entlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "entlab/qmath/serialize.hpp"

#include <json.hpp>

#include "entlab/common.hpp"

namespace entlab::qmath {

std::string matrix_to_json(const Matrix& m) {
    nlohmann::json data = nlohmann::json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
    nlohmann::json j = {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
    return j.dump();
}

Matrix matrix_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("matrix JSON: ") + e.what());
    }
    try {
        const auto rows = j.at("rows").get<Index>();
        const auto cols = j.at("cols").get<Index>();
        const auto& data = j.at("data");
        if (rows < 0 || cols < 0 || !data.is_array() || static_cast<Index>(data.size()) != rows * cols)
            throw ValidationError("matrix JSON: data length does not match rows * cols");
        Matrix m(rows, cols);
        for (Index k = 0; k < rows * cols; ++k) {
            const auto& e = data[static_cast<std::size_t>(k)];
            if (!e.is_array() || e.size() != 2) throw ValidationError("matrix JSON: entries must be [re, im]");
            m(k / cols, k % cols) = Complex(e[0].get<double>(), e[1].get<double>());
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("matrix JSON: ") + e.what());
    }
}

}  // namespace entlab::qmath
