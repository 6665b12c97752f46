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


#include "entlab/lab/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "entlab/common.hpp"

namespace entlab::lab {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view s) {
    s = trim(s);
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ValidationError("malformed number '" + std::string(s) + "'");
    return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view text) {
    std::vector<T> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        out.push_back(parse_number<T>(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

template <typename T>
std::string join(const std::vector<T>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        if constexpr (std::is_floating_point_v<T>)
            s += format_double(xs[i]);
        else
            s += std::to_string(xs[i]);
    }
    return s;
}

template <typename T>
bool ascending(const std::vector<T>& xs) {
    return std::adjacent_find(xs.begin(), xs.end(), std::greater_equal<>()) == xs.end();
}

}  // namespace

std::vector<double> parse_double_list(std::string_view text) { return parse_list<double>(text); }
std::vector<int> parse_int_list(std::string_view text) { return parse_list<int>(text); }

void ExperimentConfig::validate() const {
    if (base_probs.empty()) throw ValidationError("p must be nonempty");
    if (n_grid.empty() || !ascending(n_grid) || n_grid.front() < 1)
        throw ValidationError("n_grid must be nonempty, positive and ascending");
    if (deltas.empty() || !ascending(deltas)) throw ValidationError("delta must be nonempty and ascending");
    for (double d : deltas)
        if (!(d > 0 && d < 1)) throw ValidationError("delta values must lie in (0, 1)");
    if (epsilons.empty() || !ascending(epsilons)) throw ValidationError("epsilon must be nonempty and ascending");
    for (double e : epsilons)
        if (!(e > 0 && e < 2)) throw ValidationError("epsilon targets must lie in (0, 2)");
    if (!(eps0 > 0 && eps0 < 2)) throw ValidationError("eps0 must lie in (0, 2)");
    if (!ascending(budgets) || (!budgets.empty() && budgets.front() < 0))
        throw ValidationError("budgets must be nonnegative and ascending");
    if (ab_grid < 2) throw ValidationError("ab_grid must be at least 2");
    if (!(ab_span > 0)) throw ValidationError("ab_span must be positive");
    if (threads < 1) throw ValidationError("threads must be at least 1");
    if (out_dir.empty()) throw ValidationError("out must be nonempty");
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key == "p") base.base_probs = parse_double_list(value);
        else if (key == "n_grid") base.n_grid = parse_int_list(value);
        else if (key == "delta") base.deltas = parse_double_list(value);
        else if (key == "epsilon") base.epsilons = parse_double_list(value);
        else if (key == "eps0") base.eps0 = parse_number<double>(value);
        else if (key == "budgets") base.budgets = parse_int_list(value);
        else if (key == "ab_grid") base.ab_grid = parse_number<int>(value);
        else if (key == "ab_span") base.ab_span = parse_number<double>(value);
        else if (key == "seed") base.seed = parse_number<std::uint64_t>(value);
        else if (key == "out") base.out_dir = std::string(value);
        else if (key == "threads") base.threads = parse_number<int>(value);
        else throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

std::string format_config(const ExperimentConfig& c) {
    std::string s;
    s += "p = " + join(c.base_probs) + "\n";
    s += "n_grid = " + join(c.n_grid) + "\n";
    s += "delta = " + join(c.deltas) + "\n";
    s += "epsilon = " + join(c.epsilons) + "\n";
    s += "eps0 = " + format_double(c.eps0) + "\n";
    if (!c.budgets.empty()) s += "budgets = " + join(c.budgets) + "\n";
    s += "ab_grid = " + std::to_string(c.ab_grid) + "\n";
    s += "ab_span = " + format_double(c.ab_span) + "\n";
    s += "seed = " + std::to_string(c.seed) + "\n";
    s += "out = " + c.out_dir + "\n";
    s += "threads = " + std::to_string(c.threads) + "\n";
    return s;
}

}  // namespace entlab::lab
