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


#include "entlab/lab/commands.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "entlab/common.hpp"
#include "entlab/locc/certificate.hpp"
#include "entlab/locc/concentration.hpp"
#include "entlab/locc/dilution.hpp"
#include "entlab/locc/run.hpp"
#include "entlab/sigsub/sigsub.hpp"
#include "entlab/spectrum/class_spectrum.hpp"
#include "entlab/spectrum/gaussian.hpp"

namespace entlab::lab {
namespace fs = std::filesystem;
using spectrum::BaseSpectrum;

namespace {

constexpr const char* kBerryEsseenHeader = "n,a,b,residual,bound,pass";
constexpr const char* kInefficiencyHeader = "n,nE,lower_bits,upper_bits,excess_over_nE,alpha_sqrt_n";
constexpr const char* kCommunicationHeader = "n,c_star,alpha_sqrt_n,ratio,epsilon,target_error,certificate_consistent";
constexpr const char* kConcentrationHeader = "n,nE,expected_yield,deficit,deficit_over_sqrt_n";
constexpr const char* kBudgetHeader = "n,epsilon,budget,c,target_error";

std::string fmt(double x) { return format_double(x); }

std::string csv_line(const BerryEsseenRow& r) {
    return std::to_string(r.n) + "," + fmt(r.a) + "," + fmt(r.b) + "," + fmt(r.residual) + "," + fmt(r.bound) + "," +
           (r.pass ? "true" : "false");
}
std::string csv_line(const InefficiencyRow& r) {
    return std::to_string(r.n) + "," + fmt(r.nE) + "," + fmt(r.lower_bits) + "," + fmt(r.upper_bits) + "," +
           fmt(r.excess_over_nE) + "," + fmt(r.alpha_sqrt_n);
}
std::string csv_line(const CommunicationRow& r) {
    return std::to_string(r.n) + "," + std::to_string(r.c_star) + "," + fmt(r.alpha_sqrt_n) + "," + fmt(r.ratio) + "," +
           fmt(r.epsilon) + "," + fmt(r.target_error) + "," + (r.certificate_consistent ? "true" : "false");
}
std::string csv_line(const ConcentrationRow& r) {
    return std::to_string(r.n) + "," + fmt(r.nE) + "," + fmt(r.expected_yield) + "," + fmt(r.deficit) + "," +
           fmt(r.deficit_over_sqrt_n);
}

std::string budget_line(int n, double eps, int budget, const locc::BlockShiftProtocol& b) {
    return std::to_string(n) + "," + fmt(eps) + "," + std::to_string(budget) + "," + std::to_string(b.c) + "," +
           fmt(b.target_error);
}

std::string growth_file(double delta) { return "growth_fit_delta" + fmt(delta) + ".csv"; }
std::string spectrum_file(int n) { return "spectrum_n" + std::to_string(n) + ".json"; }
std::string certificate_file(int n, double eps) {
    return "certificate_n" + std::to_string(n) + "_eps" + fmt(eps) + ".json";
}

void write_text(const ExperimentConfig& config, const std::string& name, const std::string& text) {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + config.out_dir + ": " + ec.message());
    const fs::path path = fs::path(config.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    out.close();
    if (!out) throw IoError("write failed for " + path.string());
}

template <typename Row>
std::string csv(const char* header, const std::vector<Row>& rows) {
    std::string s = std::string(header) + "\n";
    for (const auto& r : rows) s += csv_line(r) + "\n";
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

double to_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ValidationError("malformed CSV cell '" + s + "'");
    return v;
}

// Reads a CSV with the expected header; an absent file yields no rows.
std::optional<std::vector<std::vector<std::string>>> read_csv(const ExperimentConfig& config, const std::string& name,
                                                              const char* header, std::vector<std::string>& lines) {
    std::ifstream in(fs::path(config.out_dir) / name);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || line != header) throw ValidationError(name + ": unexpected header");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        lines.push_back(line);
        rows.push_back(split(line));
    }
    return rows;
}

}  // namespace

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<BerryEsseenRow> berry_esseen_rows(const BaseSpectrum& p, int n, int grid, double span) {
    const auto stats = spectrum::spectrum_stats(p);
    spectrum::require_nondegenerate(stats);
    const auto spec = spectrum::tensor_power_spectrum(p, n);
    const double centre = -n * stats.E;
    const double scale = std::sqrt(static_cast<double>(n)) * stats.alpha;
    std::vector<double> pts(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) pts[static_cast<std::size_t>(i)] = centre + (-span + 2.0 * span * i / (grid - 1)) * scale;
    std::vector<BerryEsseenRow> rows;
    rows.reserve(pts.size() * pts.size());
    for (double x : pts)
        for (double y : pts) {
            const double a = std::min(x, y), b = std::max(x, y);
            const auto r = spectrum::berry_esseen_residual(p, spec, a, b);
            rows.push_back({n, a, b, r.residual, r.bound, r.pass});
        }
    return rows;
}

InefficiencyRow inefficiency_row(const BaseSpectrum& p, int n, double eps0) {
    const auto stats = spectrum::spectrum_stats(p);
    const auto dim = sigsub::min_dilution_dimension(p, n, eps0);
    InefficiencyRow r;
    r.n = n;
    r.nE = n * stats.E;
    r.lower_bits = dim.lower_bits();
    r.upper_bits = dim.upper_bits();
    r.excess_over_nE = r.lower_bits - r.nE;
    r.alpha_sqrt_n = stats.alpha * std::sqrt(static_cast<double>(n));
    return r;
}

CommunicationRow communication_row(const BaseSpectrum& p, int n, double epsilon) {
    const auto stats = spectrum::spectrum_stats(p);
    spectrum::require_nondegenerate(stats);
    const auto spec = spectrum::tensor_power_spectrum(p, n);
    auto error_at = [&](int c) { return locc::build_block_dilution(spec, c, epsilon).target_error; };

    int hi = locc::build_block_dilution(spec, std::numeric_limits<int>::max() / 2, epsilon).c;
    int lo = 0;
    if (error_at(lo) > epsilon) {
        // error_at(hi) is zero: every Schmidt position is its own block.
        while (hi - lo > 1) {
            const int mid = lo + (hi - lo) / 2;
            (error_at(mid) <= epsilon ? hi : lo) = mid;
        }
    } else {
        hi = 0;
    }

    CommunicationRow row;
    row.n = n;
    row.epsilon = epsilon;
    row.c_star = hi;
    row.alpha_sqrt_n = stats.alpha * std::sqrt(static_cast<double>(n));
    row.ratio = row.c_star / row.alpha_sqrt_n;
    const auto proto = locc::build_block_dilution(spec, hi, epsilon);
    row.target_error = proto.target_error;
    const auto report = locc::run_protocol(proto, {epsilon, n});
    if (const auto* best = report.best_good_outcome()) {
        const auto cert = locc::verify_communication_bound(*best, p, n, report);
        row.certificate_consistent = cert.internally_consistent();
        row.certificate_json = cert.to_json();
    }
    return row;
}

ConcentrationRow concentration_row(const BaseSpectrum& p, int n) {
    const auto res = locc::concentrate(p, n);
    ConcentrationRow r;
    r.n = n;
    r.nE = res.nE;
    r.expected_yield = res.expected_yield;
    r.deficit = res.deficit;
    r.deficit_over_sqrt_n = res.deficit / std::sqrt(static_cast<double>(n));
    return r;
}

CommandResult cmd_spectrum(const ExperimentConfig& config) {
    config.validate();
    const auto p = BaseSpectrum::from_probs(config.base_probs);
    spectrum::require_nondegenerate(spectrum::spectrum_stats(p));
    const auto& grid = config.n_grid;
    std::vector<std::string> spectra(grid.size());
    std::vector<std::vector<BerryEsseenRow>> tables(grid.size());
    parallel_for(grid.size(), config.threads, [&](std::size_t i) {
        spectra[i] = spectrum::tensor_power_spectrum(p, grid[i]).to_json();
        tables[i] = berry_esseen_rows(p, grid[i], config.ab_grid, config.ab_span);
    });

    CommandResult res;
    std::vector<BerryEsseenRow> all;
    std::size_t passed = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        write_text(config, spectrum_file(grid[i]), spectra[i]);
        res.files.push_back(spectrum_file(grid[i]));
        for (const auto& r : tables[i]) passed += r.pass;
        all.insert(all.end(), tables[i].begin(), tables[i].end());
    }
    write_text(config, "berry_esseen.csv", csv(kBerryEsseenHeader, all));
    res.files.push_back("berry_esseen.csv");
    res.summary = "berry-esseen cells passing: " + std::to_string(passed) + "/" + std::to_string(all.size());
    return res;
}

CommandResult cmd_inefficiency(const ExperimentConfig& config) {
    config.validate();
    const auto p = BaseSpectrum::from_probs(config.base_probs);
    const auto& grid = config.n_grid;
    std::vector<InefficiencyRow> rows(grid.size());
    parallel_for(grid.size(), config.threads, [&](std::size_t i) { rows[i] = inefficiency_row(p, grid[i], config.eps0); });

    CommandResult res;
    write_text(config, "inefficiency.csv", csv(kInefficiencyHeader, rows));
    res.files.push_back("inefficiency.csv");
    if (grid.size() >= 2) {
        for (double delta : config.deltas) {
            const auto fit = sigsub::growth_fit(p, delta, grid);
            write_text(config, growth_file(delta), fit.to_csv());
            res.files.push_back(growth_file(delta));
            res.summary += "delta " + fmt(delta) + ": sqrt(n) coefficient " + fmt(fit.fitted_coeff) + " bits\n";
        }
    }
    return res;
}

CommandResult cmd_communication(const ExperimentConfig& config) {
    config.validate();
    const auto p = BaseSpectrum::from_probs(config.base_probs);
    struct Task {
        int n;
        double eps;
    };
    std::vector<Task> tasks;
    for (double eps : config.epsilons)
        for (int n : config.n_grid) tasks.push_back({n, eps});
    std::vector<CommunicationRow> rows(tasks.size());
    std::vector<std::vector<std::string>> sweeps(tasks.size());
    parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
        rows[i] = communication_row(p, tasks[i].n, tasks[i].eps);
        if (config.budgets.empty()) return;
        const auto spec = spectrum::tensor_power_spectrum(p, tasks[i].n);
        for (int b : config.budgets)
            sweeps[i].push_back(budget_line(tasks[i].n, tasks[i].eps, b, locc::build_block_dilution(spec, b, tasks[i].eps)));
    });
    std::stable_sort(rows.begin(), rows.end(), [](const CommunicationRow& a, const CommunicationRow& b) {
        return a.n != b.n ? a.n < b.n : a.epsilon < b.epsilon;
    });

    CommandResult res;
    std::size_t consistent = 0;
    for (const auto& r : rows) {
        if (r.certificate_json.empty()) continue;
        write_text(config, certificate_file(r.n, r.epsilon), r.certificate_json);
        res.files.push_back(certificate_file(r.n, r.epsilon));
        consistent += r.certificate_consistent;
    }
    write_text(config, "communication.csv", csv(kCommunicationHeader, rows));
    res.files.push_back("communication.csv");
    if (!config.budgets.empty()) {
        std::string s = std::string(kBudgetHeader) + "\n";
        for (const auto& sw : sweeps)
            for (const auto& line : sw) s += line + "\n";
        write_text(config, "budget_sweep.csv", s);
        res.files.push_back("budget_sweep.csv");
    }
    res.summary = "certificates internally consistent: " + std::to_string(consistent) + "/" + std::to_string(rows.size());
    return res;
}

CommandResult cmd_concentration(const ExperimentConfig& config) {
    config.validate();
    const auto p = BaseSpectrum::from_probs(config.base_probs);
    const auto& grid = config.n_grid;
    std::vector<ConcentrationRow> rows(grid.size());
    parallel_for(grid.size(), config.threads, [&](std::size_t i) { rows[i] = concentration_row(p, grid[i]); });
    CommandResult res;
    write_text(config, "concentration.csv", csv(kConcentrationHeader, rows));
    res.files.push_back("concentration.csv");
    return res;
}

std::vector<SpotCheck> spot_check(const ExperimentConfig& config) {
    const auto p = BaseSpectrum::from_probs(config.base_probs);
    std::vector<SpotCheck> out;
    auto check = [&](const std::string& name, const char* header, auto&& rederive) {
        std::vector<std::string> lines;
        const auto rows = read_csv(config, name, header, lines);
        if (!rows) return;
        SpotCheck sc{name, rows->size(), 0};
        for (std::size_t i = 0; i < rows->size(); ++i)
            if (rederive((*rows)[i]) != lines[i]) ++sc.mismatches;
        out.push_back(sc);
    };

    std::map<int, spectrum::ClassSpectrum> spectra;
    check("berry_esseen.csv", kBerryEsseenHeader, [&](const std::vector<std::string>& c) {
        const int n = std::stoi(c.at(0));
        auto it = spectra.find(n);
        if (it == spectra.end()) it = spectra.emplace(n, spectrum::tensor_power_spectrum(p, n)).first;
        const double a = to_double(c.at(1)), b = to_double(c.at(2));
        const auto r = spectrum::berry_esseen_residual(p, it->second, a, b);
        return csv_line(BerryEsseenRow{n, a, b, r.residual, r.bound, r.pass});
    });
    check("inefficiency.csv", kInefficiencyHeader,
          [&](const std::vector<std::string>& c) { return csv_line(inefficiency_row(p, std::stoi(c.at(0)), config.eps0)); });
    check("communication.csv", kCommunicationHeader, [&](const std::vector<std::string>& c) {
        return csv_line(communication_row(p, std::stoi(c.at(0)), to_double(c.at(4))));
    });
    check("concentration.csv", kConcentrationHeader,
          [&](const std::vector<std::string>& c) { return csv_line(concentration_row(p, std::stoi(c.at(0)))); });
    check("budget_sweep.csv", kBudgetHeader, [&](const std::vector<std::string>& c) {
        const int n = std::stoi(c.at(0));
        const double eps = to_double(c.at(1));
        const int budget = std::stoi(c.at(2));
        return budget_line(n, eps, budget, locc::build_block_dilution(spectrum::tensor_power_spectrum(p, n), budget, eps));
    });
    return out;
}

}  // namespace entlab::lab
