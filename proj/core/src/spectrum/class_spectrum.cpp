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


#include "entlab/spectrum/class_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "entlab/common.hpp"

namespace entlab::spectrum {
namespace {

constexpr long double kLn2 = std::numbers::ln2_v<long double>;

struct Enumerator {
    const std::vector<long double>& log2p;
    int n;
    long double log2_nfact;
    std::vector<SpectralClass>& out;

    void run(std::size_t i, int remaining, long double eig, long double lgsum) {
        if (i + 1 == log2p.size()) {
            eig += remaining * log2p[i];
            lgsum += std::lgamma(static_cast<long double>(remaining) + 1.0L);
            const long double mult = log2_nfact - lgsum / kLn2;
            out.push_back({static_cast<double>(eig), static_cast<double>(mult), static_cast<double>(mult + eig)});
            return;
        }
        for (int k = remaining; k >= 0; --k)
            run(i + 1, remaining - k, eig + k * log2p[i], lgsum + std::lgamma(static_cast<long double>(k) + 1.0L));
    }
};

// Sorts by descending eigenvalue and merges runs within tol::kMergeBits of
// the run's first member.
std::vector<SpectralClass> sort_and_merge(std::vector<SpectralClass> raw) {
    std::stable_sort(raw.begin(), raw.end(),
                     [](const SpectralClass& a, const SpectralClass& b) { return a.log2_eigenvalue > b.log2_eigenvalue; });
    std::vector<SpectralClass> merged;
    for (const auto& c : raw) {
        if (!merged.empty() && merged.back().log2_eigenvalue - c.log2_eigenvalue <= tol::kMergeBits) {
            auto& head = merged.back();
            head.log2_multiplicity = log2_add(head.log2_multiplicity, c.log2_multiplicity);
            head.log2_mass = head.log2_multiplicity + head.log2_eigenvalue;
        } else {
            merged.push_back(c);
        }
    }
    return merged;
}

}  // namespace

double ClassSpectrum::log2_total_mass() const {
    std::vector<double> xs;
    xs.reserve(classes.size());
    for (const auto& c : classes) xs.push_back(c.log2_mass);
    return log2_sum(xs);
}

double ClassSpectrum::log2_total_multiplicity() const {
    std::vector<double> xs;
    xs.reserve(classes.size());
    for (const auto& c : classes) xs.push_back(c.log2_multiplicity);
    return log2_sum(xs);
}

std::string ClassSpectrum::to_json() const {
    nlohmann::json cls = nlohmann::json::array();
    for (const auto& c : classes)
        cls.push_back({{"log2_eig", c.log2_eigenvalue}, {"log2_mult", c.log2_multiplicity}, {"log2_mass", c.log2_mass}});
    nlohmann::json j = {{"n", n}, {"base_probs", base_probs}, {"classes", std::move(cls)}};
    return j.dump();
}

ClassSpectrum ClassSpectrum::from_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        ClassSpectrum s;
        s.n = j.at("n").get<int>();
        s.base_probs = j.at("base_probs").get<std::vector<double>>();
        for (const auto& c : j.at("classes"))
            s.classes.push_back({c.at("log2_eig").get<double>(), c.at("log2_mult").get<double>(), c.at("log2_mass").get<double>()});
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("class spectrum JSON: ") + e.what());
    }
}

double composition_count(int n, std::size_t d) {
    if (n < 0 || d == 0) return 0.0;
    const double k = static_cast<double>(d) - 1.0;
    return std::round(std::exp(std::lgamma(n + k + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n + 1.0)));
}

ClassSpectrum tensor_power_spectrum(const BaseSpectrum& p, int n, const TensorPowerOptions& options) {
    if (n < 1) throw ValidationError("copy count n must be >= 1");
    const double count = composition_count(n, p.size());
    if (count > options.class_cap)
        throw CapExceededError("tensor power needs " + format_double(count) + " classes, cap is " + format_double(options.class_cap));

    std::vector<long double> log2p;
    for (double x : p.probs()) log2p.push_back(std::log2(static_cast<long double>(x)));

    std::vector<SpectralClass> raw;
    raw.reserve(static_cast<std::size_t>(count));
    const long double log2_nfact = std::lgamma(static_cast<long double>(n) + 1.0L) / kLn2;
    Enumerator{log2p, n, log2_nfact, raw}.run(0, n, 0.0L, 0.0L);

    ClassSpectrum s;
    s.n = n;
    s.base_probs = p.probs();
    s.classes = sort_and_merge(std::move(raw));
    return s;
}

ClassSpectrum class_spectrum_from_eigenvalues(const std::vector<double>& eigenvalues) {
    std::vector<SpectralClass> raw;
    for (double x : eigenvalues) {
        if (x > 0) raw.push_back({std::log2(x), 0.0, std::log2(x)});
    }
    ClassSpectrum s;
    s.n = 1;
    s.base_probs = eigenvalues;
    s.classes = sort_and_merge(std::move(raw));
    return s;
}

double log2_mu(const ClassSpectrum& spec, double a, double b) {
    if (std::isnan(a) || std::isnan(b) || a > b) throw ValidationError("mu needs a <= b");
    std::vector<double> xs;
    for (const auto& c : spec.classes) {
        if (c.log2_eigenvalue >= a - tol::kMergeBits && c.log2_eigenvalue <= b + tol::kMergeBits) xs.push_back(c.log2_mass);
    }
    return log2_sum(xs);
}

double mu(const ClassSpectrum& spec, double a, double b) { return std::min(1.0, std::exp2(log2_mu(spec, a, b))); }

}  // namespace entlab::spectrum
