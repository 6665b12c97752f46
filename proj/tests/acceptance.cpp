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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entlab/common.hpp"
#include "entlab/lab/commands.hpp"
#include "entlab/locc/concentration.hpp"
#include "entlab/locc/dilution.hpp"
#include "entlab/locc/protocol_ir.hpp"
#include "entlab/locc/run.hpp"
#include "entlab/locc/simulate.hpp"
#include "entlab/locc/standardize.hpp"
#include "entlab/qmath/ops.hpp"
#include "entlab/qmath/random.hpp"
#include "entlab/sigsub/sigsub.hpp"
#include "entlab/spectrum/class_spectrum.hpp"
#include "entlab/spectrum/gaussian.hpp"

namespace {

using namespace entlab;
using spectrum::BaseSpectrum;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit_s;  // <= 0: no limit
    std::function<Outcome()> run;
};

const BaseSpectrum& quarter() {
    static const BaseSpectrum p = BaseSpectrum::from_probs({0.75, 0.25});
    return p;
}

std::string fmt(double x) { return format_double(x); }

Outcome spectrum_oracle() {
    const std::vector<double> p{0.75, 0.25};
    double worst = 0.0;
    bool shape_ok = true;
    std::vector<double> products{1.0};
    for (int n = 1; n <= 14; ++n) {
        std::vector<double> next;
        next.reserve(products.size() * 2);
        for (double x : products)
            for (double y : p) next.push_back(x * y);
        products = std::move(next);
        const auto fast = spectrum::tensor_power_spectrum(quarter(), n);
        const auto slow = spectrum::class_spectrum_from_eigenvalues(products);
        if (fast.classes.size() != slow.classes.size()) {
            shape_ok = false;
            continue;
        }
        for (std::size_t i = 0; i < fast.classes.size(); ++i)
            worst = std::max(worst, std::abs(fast.classes[i].log2_mass - slow.classes[i].log2_mass));
    }
    return {shape_ok && worst <= 1e-12, "max |log2 mass difference| = " + fmt(worst) + " over n <= 14"};
}

Outcome berry_esseen() {
    int cells = 0, failures = 0;
    double worst_ratio = 0.0;
    std::string worst_at;
    for (double p1 : {0.6, 0.75, 0.9}) {
        const auto p = BaseSpectrum::from_probs({p1, 1.0 - p1});
        for (int n : {100, 400, 1600, 6400}) {
            for (const auto& r : lab::berry_esseen_rows(p, n, 50, 3.0)) {
                ++cells;
                failures += !r.pass;
                if (r.residual / r.bound > worst_ratio) {
                    worst_ratio = r.residual / r.bound;
                    worst_at = "p1=" + fmt(p1) + " n=" + std::to_string(n);
                }
            }
        }
    }
    return {failures == 0, std::to_string(failures) + "/" + std::to_string(cells) +
                               " cells with residual >= 25 beta/sqrt(n); worst residual/bound = " + fmt(worst_ratio) + " at " +
                               worst_at};
}

Outcome subspace_bounds() {
    qmath::Rng rng(20260101);
    int v1 = 0, v2 = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto inst = sigsub::random_support_rank_instance(rng, 12);
        const auto c = sigsub::check_support_rank_bound(inst.rho, inst.sigma, inst.delta);
        v1 += !(c.hypothesis_ok && c.holds);
    }
    for (int i = 0; i < 1000; ++i) {
        const auto inst = sigsub::random_tensor_dimension_instance(rng, 8);
        v2 += !sigsub::check_tensor_dimension_bound(inst.a, inst.b, inst.delta_a, inst.delta_b).holds;
    }
    return {v1 == 0 && v2 == 0, "rank bound violations " + std::to_string(v1) + "/1000, tensor bound violations " +
                                    std::to_string(v2) + "/1000"};
}

Outcome growth_scaling() {
    const std::vector<int> grid{100, 200, 400, 800, 1600, 3200, 6400, 10000};
    const auto fit = sigsub::growth_fit(quarter(), 0.95, grid);
    const auto stats = spectrum::spectrum_stats(quarter());
    const double expected = spectrum::normal_quantile(0.95) * stats.alpha;
    const double rel = std::abs(fit.fitted_coeff - expected) / expected;
    return {rel <= 0.10, "fitted coefficient " + fmt(fit.fitted_coeff) + " bits/sqrt(n) vs " + fmt(expected) +
                             " (relative gap " + fmt(rel) + "); measured C at n=10000: " + fmt(fit.measured_C.back())};
}

Outcome standard_form_reduction() {
    qmath::Rng rng(2026);
    double worst = 0.0;
    int mismatched = 0, bits_changed = 0;
    for (int i = 0; i < 200; ++i) {
        const auto toy = locc::random_toy_ir(rng);
        const auto sf = locc::standardize(toy.ir, toy.input);
        const auto cmp = locc::compare_ensembles(locc::simulate_dense(toy.ir, toy.input).by_transcript(),
                                                 locc::standard_form_outputs(sf.protocol, toy.input));
        worst = std::max({worst, cmp.total_variation, cmp.max_trace_distance});
        mismatched += !cmp.transcripts_match;
        bits_changed += sf.protocol.message_bits != toy.ir.message_bits();
    }
    return {worst <= 1e-9 && mismatched == 0 && bits_changed == 0,
            "max disagreement " + fmt(worst) + ", transcript mismatches " + std::to_string(mismatched) +
                ", message-bit changes " + std::to_string(bits_changed) + " over 200 programs"};
}

Outcome shift_dilution() {
    qmath::Rng rng(64);
    double worst_eps = 0.0, worst_complete = 0.0;
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        const auto d = static_cast<qmath::Index>(1 + rng() % 64);
        const auto q = qmath::SchmidtProfile::from_probs(qmath::random_spectrum(rng, d));
        const auto proto = locc::build_shift_dilution(q);
        const auto rep = locc::run_protocol(proto, q);
        const double complete = proto.to_dense().completeness_error();
        worst_eps = std::max(worst_eps, rep.epsilon);
        worst_complete = std::max(worst_complete, complete);
        bad += !(rep.s == 0.0 && rep.c == locc::ceil_log2(static_cast<std::uint64_t>(d)));
    }
    return {worst_eps <= 1e-12 && worst_complete <= 1e-10 && bad == 0,
            "max error " + fmt(worst_eps) + ", max completeness error " + fmt(worst_complete) + ", s/c mismatches " +
                std::to_string(bad) + " over 200 profiles"};
}

Outcome communication_scaling() {
    const std::vector<int> grid{64, 256, 1024, 4096};
    std::vector<lab::CommunicationRow> rows(grid.size());
    lab::parallel_for(grid.size(), 4, [&](std::size_t i) { rows[i] = lab::communication_row(quarter(), grid[i], 0.1); });
    bool ok = true;
    std::string detail = "c* =";
    for (const auto& r : rows) {
        detail += " " + std::to_string(r.c_star);
        ok = ok && r.certificate_consistent;
    }
    detail += "; ratios";
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double ratio = static_cast<double>(rows[i].c_star) / rows[i - 1].c_star;
        detail += " " + fmt(ratio);
        ok = ok && ratio >= 1.6 && ratio <= 2.4;
    }
    int consistent = 0;
    for (const auto& r : rows) consistent += r.certificate_consistent;
    detail += "; consistent certificates " + std::to_string(consistent) + "/" + std::to_string(rows.size());
    return {ok, detail};
}

Outcome inefficiency_scaling() {
    const std::vector<int> grid{256, 512, 1024, 2048, 4096};
    bool ok = true;
    double prev = 0.0;
    std::string detail = "(lower - nE)/sqrt(n) =";
    for (int n : grid) {
        const auto r = lab::inefficiency_row(quarter(), n, 0.01);
        const double v = r.excess_over_nE / std::sqrt(static_cast<double>(n));
        detail += " " + fmt(v);
        ok = ok && v > 0 && r.upper_bits >= r.lower_bits && (prev == 0.0 || v >= 0.95 * prev);
        prev = v;
    }
    return {ok, detail};
}

Outcome concentration_deficit() {
    const double alpha = spectrum::spectrum_stats(quarter()).alpha;
    const double lo = 0.2 * alpha, hi = 0.6 * alpha;
    bool ok = true;
    std::string detail = "deficit/sqrt(n) =";
    for (int n : {256, 512, 1024, 2048, 4096}) {
        const auto r = locc::concentrate(quarter(), n);
        const double v = r.deficit / std::sqrt(static_cast<double>(n));
        detail += " " + fmt(v);
        ok = ok && v >= lo && v <= hi;
    }
    detail += " vs band [" + fmt(lo) + ", " + fmt(hi) + "]";
    return {ok, detail};
}

qmath::PureBipartiteState near_product(qmath::Rng& rng) {
    const auto da = static_cast<qmath::Index>(2 + rng() % 3);
    const auto db = static_cast<qmath::Index>(2 + rng() % 3);
    const qmath::Vector a = qmath::random_unit_vector(rng, da);
    const qmath::Vector b = qmath::random_unit_vector(rng, db);
    qmath::Vector v(da * db);
    for (qmath::Index i = 0; i < da; ++i) v.segment(i * db, db) = a(i) * b;
    std::uniform_real_distribution<double> expo(-4.0, 0.0);
    v += std::pow(10.0, expo(rng)) * qmath::random_unit_vector(rng, da * db);
    v.normalize();
    return qmath::PureBipartiteState::from_amplitudes(da, db, v);
}

Outcome extension_and_fidelity() {
    qmath::Rng rng(404);
    int strict = 0, fid_form = 0;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto psi = near_product(rng);
        const auto sd = qmath::schmidt_decompose(psi);
        const auto ext = qmath::nearest_product_extension(psi, sd.basis_a.col(0));
        strict += !ext.within_twice_input;
        fid_form += !ext.within_fidelity_bound;
        if (ext.input_distance > 0) worst = std::max(worst, ext.distance / ext.input_distance);
    }
    int fvdg = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto d = static_cast<qmath::Index>(2 + rng() % 5);
        const auto a = qmath::random_density(rng, d, 1 + static_cast<qmath::Index>(rng() % static_cast<std::uint64_t>(d)));
        const auto b = qmath::random_density(rng, d, 1 + static_cast<qmath::Index>(rng() % static_cast<std::uint64_t>(d)));
        fvdg += 1.0 - qmath::fidelity(a, b) > qmath::trace_distance(a, b) / 2.0 + tol::kEquality;
    }
    return {strict == 0 && fvdg == 0,
            "D(psi, phi x gamma) >= 2 eps in " + std::to_string(strict) + "/1000 (max D/eps " + fmt(worst) +
                "; violations of D <= 2 sqrt(eps - eps^2/4): " + std::to_string(fid_form) + "), 1 - F > D/2 in " +
                std::to_string(fvdg) + "/1000"};
}

std::vector<Criterion> criteria() {
    return {
        {1, "class spectrum matches brute force", 10, spectrum_oracle},
        {2, "Gaussian approximation residual within 25 beta/sqrt(n)", 60, berry_esseen},
        {3, "randomized significant-subspace bounds", 60, subspace_bounds},
        {4, "significant-subspace growth coefficient", 300, growth_scaling},
        {5, "standard-form reduction", 120, standard_form_reduction},
        {6, "exact shift dilution", 0, shift_dilution},
        {7, "communication scaling", 600, communication_scaling},
        {8, "dilution inefficiency scaling", 0, inefficiency_scaling},
        {9, "concentration deficit band", 0, concentration_deficit},
        {10, "product extension and fidelity inequalities", 0, extension_and_fidelity},
    };
}

bool run_one(const Criterion& c) {
    const auto start = Clock::now();
    Outcome out;
    try {
        out = c.run();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = c.time_limit_s <= 0 || secs < c.time_limit_s;
    const bool pass = out.pass && in_time;
    std::string limit = c.time_limit_s > 0 ? " (limit " + fmt(c.time_limit_s) + " s)" : "";
    std::printf("%s criterion %d: %s | %s | %.2f s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(), secs,
                limit.c_str());
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entlab acceptance suite"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    int failed = 0;
    for (const auto& c : criteria())
        if (only == 0 || c.id == only) failed += !run_one(c);
    return failed == 0 ? 0 : 1;
}
