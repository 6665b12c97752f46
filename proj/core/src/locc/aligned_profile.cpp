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


#include "entlab/locc/aligned_profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "entlab/common.hpp"

namespace entlab::locc {
namespace {

constexpr double kLn2 = std::numbers::ln2;

double safe_log2(double x) { return x > 0 ? std::log2(x) : kNegInf; }

// log2 |2^a - 2^b| for finite or -inf arguments.
double log2_abs_diff(double a, double b) {
    if (a == b) return kNegInf;
    return a > b ? log2_sub(a, b) : log2_sub(b, a);
}

}  // namespace

AlignedProfile AlignedProfile::from_vectors(std::span<const double> target, std::span<const double> output) {
    const std::size_t len = std::max(target.size(), output.size());
    std::vector<AlignedSegment> segs;
    std::vector<double> counts;
    for (std::size_t i = 0; i < len; ++i) {
        const double t = i < target.size() ? safe_log2(target[i]) : kNegInf;
        const double o = i < output.size() ? safe_log2(output[i]) : kNegInf;
        if (t == kNegInf && o == kNegInf) continue;
        if (!segs.empty() && segs.back().log2_target == t && segs.back().log2_output == o) {
            counts.back() += 1.0;
        } else {
            segs.push_back({0.0, t, o});
            counts.push_back(1.0);
        }
    }
    for (std::size_t i = 0; i < segs.size(); ++i) segs[i].log2_count = std::log2(counts[i]);
    return AlignedProfile(std::move(segs));
}

double AlignedProfile::log2_hellinger_sq() const {
    std::vector<double> terms;
    for (const auto& s : segments_) {
        const double t = s.log2_target;
        const double o = s.log2_output;
        if (t == kNegInf) {
            terms.push_back(s.log2_count + o);
        } else if (o == kNegInf) {
            terms.push_back(s.log2_count + t);
        } else if (t != o) {
            // (sqrt t - sqrt o)^2 = t (1 - 2^{(o-t)/2})^2
            const double g = std::abs(std::expm1(0.5 * (o - t) * kLn2));
            terms.push_back(s.log2_count + t + 2.0 * std::log2(g));
        }
    }
    return log2_sum(terms);
}

double AlignedProfile::fidelity() const {
    std::vector<double> terms;
    for (const auto& s : segments_)
        if (s.log2_target != kNegInf && s.log2_output != kNegInf)
            terms.push_back(s.log2_count + 0.5 * (s.log2_target + s.log2_output));
    return std::min(1.0, std::exp2(log2_sum(terms)));
}

double AlignedProfile::pure_distance() const {
    // With both columns normalized, 1 - F = H^2 / 2.
    const double h = 0.5 * std::exp2(log2_hellinger_sq());
    return 2.0 * std::sqrt(std::clamp(h * (2.0 - h), 0.0, 1.0));
}

double AlignedProfile::classical_distance() const {
    std::vector<double> terms;
    for (const auto& s : segments_) terms.push_back(s.log2_count + log2_abs_diff(s.log2_target, s.log2_output));
    return std::exp2(log2_sum(terms));
}

double AlignedProfile::log2_max_output() const {
    double m = kNegInf;
    for (const auto& s : segments_) m = std::max(m, s.log2_output);
    return m;
}

double AlignedProfile::max_output() const { return std::exp2(log2_max_output()); }

double AlignedProfile::log2_output_rank(double rel_tol) const {
    const double m = log2_max_output();
    if (m == kNegInf) return kNegInf;
    const double cut = m + std::log2(rel_tol);
    std::vector<double> counts;
    for (const auto& s : segments_)
        if (s.log2_output > cut) counts.push_back(s.log2_count);
    return log2_sum(counts);
}

double AlignedProfile::log2_target_count_at_least(double log2_threshold) const {
    std::vector<double> counts;
    for (const auto& s : segments_)
        if (s.log2_target != kNegInf && s.log2_target >= log2_threshold - tol::kMergeBits) counts.push_back(s.log2_count);
    return log2_sum(counts);
}

double AlignedProfile::target_mass_at_least(double log2_threshold) const {
    std::vector<double> terms;
    for (const auto& s : segments_)
        if (s.log2_target != kNegInf && s.log2_target >= log2_threshold - tol::kMergeBits)
            terms.push_back(s.log2_count + s.log2_target);
    return std::exp2(log2_sum(terms));
}

double AlignedProfile::output_mass_where_target_at_least(double log2_threshold) const {
    std::vector<double> terms;
    for (const auto& s : segments_)
        if (s.log2_target != kNegInf && s.log2_target >= log2_threshold - tol::kMergeBits)
            terms.push_back(s.log2_count + s.log2_output);
    return std::exp2(log2_sum(terms));
}

double AlignedProfile::log2_total_output() const {
    std::vector<double> terms;
    for (const auto& s : segments_) terms.push_back(s.log2_count + s.log2_output);
    return log2_sum(terms);
}

spectrum::ClassSpectrum AlignedProfile::target_spectrum() const {
    std::vector<AlignedSegment> sorted;
    for (const auto& s : segments_)
        if (s.log2_target != kNegInf) sorted.push_back(s);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const AlignedSegment& a, const AlignedSegment& b) { return a.log2_target > b.log2_target; });
    spectrum::ClassSpectrum spec;
    spec.n = 1;
    for (const auto& s : sorted) {
        if (!spec.classes.empty() && spec.classes.back().log2_eigenvalue - s.log2_target <= tol::kMergeBits) {
            auto& c = spec.classes.back();
            c.log2_multiplicity = log2_add(c.log2_multiplicity, s.log2_count);
            c.log2_mass = c.log2_multiplicity + c.log2_eigenvalue;
        } else {
            spec.classes.push_back({s.log2_target, s.log2_count, s.log2_count + s.log2_target});
        }
    }
    return spec;
}

}  // namespace entlab::locc
