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

#pragma once

#include <string>
#include <string_view>

#include "entlab/qmath/states.hpp"

namespace entlab::qmath {

// Matrix fixture format:
//   {"rows": R, "cols": C, "data": [[re, im], ...]}   (row-major, R*C pairs)

std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json(std::string_view text);

}  // namespace entlab::qmath
