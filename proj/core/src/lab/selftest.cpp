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


#include "entlab/lab/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "entlab/common.hpp"
#include "entlab/lab/commands.hpp"
#include "entlab/lab/config.hpp"
#include "entlab/locc/certificate.hpp"
#include "entlab/locc/concentration.hpp"
#include "entlab/locc/dilution.hpp"
#include "entlab/locc/run.hpp"
#include "entlab/locc/simulate.hpp"
#include "entlab/locc/standardize.hpp"
#include "entlab/qmath/ops.hpp"
#include "entlab/qmath/random.hpp"
#include "entlab/sigsub/sigsub.hpp"
#include "entlab/spectrum/class_spectrum.hpp"

namespace entlab::lab {
namespace {

using qmath::Rng;

std::vector<double> brute_force_products(const std::vector<double>& p, int n) {
    std::vector<double> out{1.0};
    for (int i = 0; i < n; ++i) {
        std::vector<double> next;
        next.reserve(out.size() * p.size());
        for (double x : out)
            for (double y : p) next.push_back(x * y);
        out = std::move(next);
    }
    return out;
}

SelfTestCheck spectrum_check() {
    const std::vector<double> p{0.75, 0.25};
    double worst = 0.0;
    for (int n = 1; n <= 10; ++n) {
        const auto fast = spectrum::tensor_power_spectrum(spectrum::BaseSpectrum::from_probs(p), n);
        const auto slow = spectrum::class_spectrum_from_eigenvalues(brute_force_products(p, n));
        if (fast.classes.size() != slow.classes.size()) return {"class spectrum vs brute force", false, "class count"};
        for (std::size_t i = 0; i < fast.classes.size(); ++i)
            worst = std::max(worst, std::abs(fast.classes[i].log2_mass - slow.classes[i].log2_mass));
    }
    return {"class spectrum vs brute force (n <= 10)", worst <= tol::kOracle, "max log2 mass gap " + format_double(worst)};
}

SelfTestCheck prop_checks(Rng& rng) {
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        const auto a = sigsub::random_support_rank_instance(rng, 12);
        if (!sigsub::check_support_rank_bound(a.rho, a.sigma, a.delta).holds) ++bad;
        const auto b = sigsub::random_tensor_dimension_instance(rng, 8);
        if (!sigsub::check_tensor_dimension_bound(b.a, b.b, b.delta_a, b.delta_b).holds) ++bad;
    }
    return {"support-rank and product-subspace bounds (200 each)", bad == 0, std::to_string(bad) + " violations"};
}

SelfTestCheck standardize_check(Rng& rng) {
    double worst = 0.0;
    int bits_changed = 0;
    for (int i = 0; i < 20; ++i) {
        const auto toy = locc::random_toy_ir(rng);
        const auto sf = locc::standardize(toy.ir, toy.input);
        const auto cmp = locc::compare_ensembles(locc::simulate_dense(toy.ir, toy.input).by_transcript(),
                                                 locc::standard_form_outputs(sf.protocol, toy.input));
        worst = std::max({worst, cmp.total_variation, cmp.max_trace_distance, cmp.transcripts_match ? 0.0 : 1.0});
        bits_changed += sf.protocol.message_bits != toy.ir.message_bits();
    }
    return {"standard form reproduces dense simulation (20 programs)", worst <= tol::kEquality && bits_changed == 0,
            "max disagreement " + format_double(worst)};
}

SelfTestCheck shift_check(Rng& rng) {
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto d = static_cast<qmath::Index>(1 + rng() % 16);
        const auto q = qmath::SchmidtProfile::from_probs(qmath::random_spectrum(rng, d));
        const auto proto = locc::build_shift_dilution(q);
        const auto rep = locc::run_protocol(proto, q);
        worst = std::max(worst, rep.epsilon);
        ok = ok && rep.s == 0.0 && rep.c == locc::ceil_log2(static_cast<std::uint64_t>(d)) &&
             proto.to_dense().completeness_error() <= tol::kValidity;
        for (const auto& o : rep.outcomes) ok = ok && std::exp2(o.log2_x_rank) <= static_cast<double>(d) + 0.5;
    }
    return {"exact shift dilution", ok && worst <= tol::kOracle, "max error " + format_double(worst)};
}

SelfTestCheck fast_path_check() {
    const auto p = spectrum::BaseSpectrum::from_probs({0.75, 0.25});
    double worst_prob = 0.0, worst_dist = 0.0;
    for (int n = 1; n <= 4; ++n) {
        const auto spec = spectrum::tensor_power_spectrum(p, n);
        std::vector<double> q;
        for (const auto& c : spec.classes)
            q.insert(q.end(), static_cast<std::size_t>(std::llround(std::exp2(c.log2_multiplicity))), std::exp2(c.log2_eigenvalue));
        const auto target = qmath::SchmidtProfile::from_probs(q);
        for (int c = 0; c <= n; ++c) {
            const auto kraus = locc::build_block_dilution(spec, c).materialize();
            const auto fast = locc::run_protocol(kraus, target);
            const auto dense = locc::run_protocol(kraus.to_dense(), target);
            for (std::size_t k = 0; k < fast.outcomes.size(); ++k) {
                worst_prob = std::max(worst_prob, std::abs(fast.outcomes[k].prob - dense.outcomes[k].prob));
                worst_dist = std::max(worst_dist, std::abs(fast.outcomes[k].epsilon - dense.outcomes[k].epsilon));
            }
        }
    }
    return {"Schmidt-diagonal path matches dense path", worst_prob <= tol::kValidity && worst_dist <= tol::kEquality,
            "prob gap " + format_double(worst_prob) + ", error gap " + format_double(worst_dist)};
}

SelfTestCheck concentration_check() {
    const auto r = locc::concentrate(spectrum::BaseSpectrum::from_probs({0.75, 0.25}), 2);
    return {"concentration yield at n = 2", std::abs(r.expected_yield - 6.0 / 16.0) <= tol::kOracle,
            "yield " + format_double(r.expected_yield)};
}

SelfTestCheck lift_check() {
    locc::ProtocolRunReport r;
    r.c = 2;
    r.s = 3.0;
    const auto lifted = locc::lift_success_probability(r, 0.01);
    const bool ok = lifted.repetitions == 37.0 && lifted.c == 8 && lifted.failure_prob <= 0.01;
    return {"success amplification arithmetic", ok, "R = " + format_double(lifted.repetitions)};
}

SelfTestCheck certificate_check() {
    const auto p = spectrum::BaseSpectrum::from_probs({0.75, 0.25});
    const int n = 8;
    const auto spec = spectrum::tensor_power_spectrum(p, n);
    std::vector<double> q;
    for (const auto& c : spec.classes)
        q.insert(q.end(), static_cast<std::size_t>(std::llround(std::exp2(c.log2_multiplicity))), std::exp2(c.log2_eigenvalue));
    const auto target = qmath::SchmidtProfile::from_probs(q);
    const auto rep = locc::run_protocol(locc::build_shift_dilution(target), target, {0.01, n});
    bool ok = true;
    for (const auto& o : rep.outcomes) ok = ok && locc::verify_communication_bound(o, p, n, rep).internally_consistent();
    return {"certificate chain on exact shift dilution (n = 8)", ok, ""};
}

SelfTestCheck fidelity_check(Rng& rng) {
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        const auto d = static_cast<qmath::Index>(2 + rng() % 5);
        const auto rank = static_cast<qmath::Index>(1 + rng() % static_cast<std::uint64_t>(d));
        const auto a = qmath::random_density(rng, d, rank);
        const auto b = qmath::random_density(rng, d, 1 + static_cast<qmath::Index>(rng() % static_cast<std::uint64_t>(d)));
        if (1.0 - qmath::fidelity(a, b) > qmath::trace_distance(a, b) / 2.0 + tol::kEquality) ++bad;
    }
    return {"1 - F <= D/2 (200 pairs)", bad == 0, std::to_string(bad) + " violations"};
}

SelfTestCheck spot_check_outputs(const std::string& dir, int threads) {
    ExperimentConfig cfg;
    cfg.n_grid = {16, 64, 144};
    cfg.ab_grid = 6;
    cfg.budgets = {0, 2, 4};
    cfg.out_dir = dir;
    cfg.threads = threads;
    cmd_spectrum(cfg);
    cmd_inefficiency(cfg);
    cmd_communication(cfg);
    cmd_concentration(cfg);
    std::size_t rows = 0, bad = 0;
    for (const auto& sc : spot_check(cfg)) {
        rows += sc.rows;
        bad += sc.mismatches;
    }
    return {"CSV rows re-derived from module calls", rows > 0 && bad == 0,
            std::to_string(bad) + " mismatches in " + std::to_string(rows) + " rows"};
}

}  // namespace

bool SelfTestReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const SelfTestCheck& c) { return c.pass; });
}

std::string SelfTestReport::to_text() const {
    std::string s;
    for (const auto& c : checks) {
        s += (c.pass ? "PASS  " : "FAIL  ") + c.name;
        if (!c.detail.empty()) s += "  (" + c.detail + ")";
        s += "\n";
    }
    return s;
}

SelfTestReport run_selftest(std::uint64_t seed, const std::string& scratch_dir, int threads) {
    Rng rng(seed);
    SelfTestReport r;
    auto guarded = [&](const std::string& name, const std::function<SelfTestCheck()>& fn) {
        try {
            r.checks.push_back(fn());
        } catch (const std::exception& e) {
            r.checks.push_back({name, false, std::string("threw: ") + e.what()});
        }
    };
    guarded("class spectrum", spectrum_check);
    guarded("subspace bounds", [&] { return prop_checks(rng); });
    guarded("standard form", [&] { return standardize_check(rng); });
    guarded("shift dilution", [&] { return shift_check(rng); });
    guarded("fast path", fast_path_check);
    guarded("concentration", concentration_check);
    guarded("amplification", lift_check);
    guarded("certificate", certificate_check);
    guarded("fidelity", [&] { return fidelity_check(rng); });
    guarded("spot check", [&] { return spot_check_outputs(scratch_dir, threads); });
    return r;
}

}  // namespace entlab::lab
