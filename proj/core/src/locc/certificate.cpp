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


#include "entlab/locc/certificate.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "entlab/common.hpp"
#include "entlab/qmath/ops.hpp"
#include "entlab/sigsub/sigsub.hpp"
#include "entlab/spectrum/class_spectrum.hpp"

namespace entlab::locc {
namespace {

constexpr double kSlack = 1e-9;
constexpr double kMaxDenseRank = 1 << 20;

double safe_log2(double x) { return x > 0 ? std::log2(x) : kNegInf; }

std::vector<double> expand(const spectrum::ClassSpectrum& spec) {
    if (spec.log2_total_multiplicity() > std::log2(kMaxDenseRank)) throw CapExceededError("spectrum too large to expand");
    std::vector<double> q;
    for (const auto& c : spec.classes) {
        const auto mult = static_cast<std::size_t>(std::llround(std::exp2(c.log2_multiplicity)));
        q.insert(q.end(), mult, std::exp2(c.log2_eigenvalue));
    }
    return q;
}

}  // namespace

bool CommunicationCertificate::all_hold(ChainInequality::Kind kind) const {
    return std::all_of(inequalities.begin(), inequalities.end(),
                       [kind](const ChainInequality& q) { return q.kind != kind || q.holds; });
}

bool CommunicationCertificate::internally_consistent() const {
    for (const auto& q : inequalities)
        if (std::isnan(q.lhs) || std::isnan(q.rhs)) return false;
    if (!all_hold(ChainInequality::Kind::Identity)) return false;
    return !all_hold(ChainInequality::Kind::Hypothesis) || all_hold(ChainInequality::Kind::Conclusion);
}

std::string CommunicationCertificate::to_json() const {
    auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
    nlohmann::json j;
    j["n"] = n;
    j["E"] = E;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["c"] = c;
    j["s"] = num(s);
    j["epsilon"] = epsilon;
    j["log2_d"] = log2_d;
    j["delta_rho"] = params.delta_rho;
    j["delta_gamma"] = params.delta_gamma;
    j["eps0"] = params.eps0;
    j["large_n"] = large_n;
    j["small_epsilon"] = small_epsilon;
    j["log2_tr_p1"] = log2_tr_p1;
    j["p1_mass"] = p1_mass;
    j["tr_p2"] = tr_p2;
    j["p2_mass"] = p2_mass;
    j["log2_x_norm"] = num(log2_x_norm);
    j["trace_px"] = trace_px;
    j["overlap"] = overlap;
    j["distance_x"] = distance_x;
    j["extension_distance"] = extension_distance;
    j["log2_C"] = log2_C;
    j["chain_lower"] = num(chain_lower);
    j["cs_lower"] = num(cs_lower);
    j["cs_lower_eps0"] = num(cs_lower_eps0);
    j["internally_consistent"] = internally_consistent();
    auto& list = j["inequalities"] = nlohmann::json::array();
    for (const auto& q : inequalities) {
        const char* kind = q.kind == ChainInequality::Kind::Identity     ? "identity"
                           : q.kind == ChainInequality::Kind::Hypothesis ? "hypothesis"
                                                                         : "conclusion";
        list.push_back({{"name", q.name}, {"kind", kind}, {"lhs", num(q.lhs)}, {"rhs", num(q.rhs)}, {"holds", q.holds}});
    }
    return j.dump(2);
}

CommunicationCertificate verify_communication_bound(const OutcomeState& outcome, const spectrum::BaseSpectrum& p, int n,
                                        const ProtocolRunReport& report, const CertificateParams& params) {
    if (!outcome.good) throw ValidationError("certificate needs a good outcome");
    if (!outcome.dense && !outcome.aligned) throw ValidationError("outcome carries no state data");
    if (n < 1) throw ValidationError("n must be positive");
    const auto stats = spectrum::spectrum_stats(p);
    spectrum::require_nondegenerate(stats);

    CommunicationCertificate cert;
    cert.n = n;
    cert.E = stats.E;
    cert.alpha = stats.alpha;
    cert.beta = stats.beta;
    cert.c = report.c;
    cert.s = report.s;
    cert.epsilon = outcome.epsilon;
    cert.log2_d = report.log2_d;
    cert.params = params;
    cert.large_n = n > 2500.0 * stats.beta * stats.beta;
    cert.small_epsilon = outcome.epsilon <= params.eps0;

    const double nE = n * stats.E;
    const double root_n = std::sqrt(static_cast<double>(n));
    const auto spec = spectrum::tensor_power_spectrum(p, n);
    std::vector<double> p1_counts, p1_masses;
    for (const auto& cls : spec.classes)
        if (cls.log2_eigenvalue >= -nE - tol::kMergeBits) {
            p1_counts.push_back(cls.log2_multiplicity);
            p1_masses.push_back(cls.log2_mass);
        }
    cert.log2_tr_p1 = log2_sum(p1_counts);
    cert.p1_mass = std::exp2(log2_sum(p1_masses));
    cert.log2_x_norm = outcome.log2_x_norm;

    if (outcome.dense) {
        const auto& dn = *outcome.dense;
        const Index da = dn.dim_a, daa = dn.dim_a_anc;
        std::vector<double> q = expand(spec);
        if (static_cast<Index>(q.size()) > da) throw ValidationError("target rank exceeds the output register");
        q.resize(static_cast<std::size_t>(da), 0.0);
        const auto t1 = static_cast<Index>(std::llround(std::exp2(cert.log2_tr_p1)));

        Eigen::SelfAdjointEigenSolver<Matrix> es((dn.gamma + dn.gamma.adjoint()) * 0.5);
        const Index g = es.eigenvalues().size();
        std::vector<double> gev(es.eigenvalues().data(), es.eigenvalues().data() + g);
        const auto k2 = static_cast<Index>(*sigsub::sig_dim(gev, params.delta_gamma).dimension.exact);
        Matrix p2 = Matrix::Zero(daa, daa);
        for (Index i = 0; i < k2; ++i) {
            const Vector v = es.eigenvectors().col(g - 1 - i);  // ascending order
            p2 += v * v.adjoint();
            cert.p2_mass += es.eigenvalues()(g - 1 - i);
        }
        cert.tr_p2 = static_cast<double>(k2);

        double tpx = 0.0;
        for (Index i = 0; i < std::min(t1, da); ++i) tpx += (p2 * dn.x_a.block(i * daa, i * daa, daa, daa)).trace().real();
        cert.trace_px = std::max(0.0, tpx);

        Matrix prod = Matrix::Zero(da * daa, da * daa);
        for (Index i = 0; i < da; ++i) prod.block(i * daa, i * daa, daa, daa) = q[static_cast<std::size_t>(i)] * dn.gamma;
        cert.distance_x = qmath::trace_norm_hermitian(dn.x_a - prod);
        cert.extension_distance = dn.extension.distance;
    } else {
        const auto& al = *outcome.aligned;
        cert.tr_p2 = 1.0;
        cert.p2_mass = 1.0;
        cert.trace_px = al.output_mass_where_target_at_least(-nE);
        cert.distance_x = al.classical_distance();
        cert.extension_distance = outcome.epsilon;
    }
    cert.overlap = cert.p1_mass * cert.p2_mass;

    const double cs = report.c + report.s;
    cert.log2_C = report.log2_d - std::log2(cert.tr_p2) - nE - stats.alpha * root_n;
    const double quarter = params.delta_gamma / 4.0;
    cert.chain_lower = quarter - std::exp2(cs - stats.alpha * root_n - cert.log2_C);
    cert.cs_lower = stats.alpha * root_n + safe_log2(quarter - outcome.epsilon) + cert.log2_C;
    cert.cs_lower_eps0 = stats.alpha * root_n + safe_log2(quarter - params.eps0) + cert.log2_C;

    using K = ChainInequality::Kind;
    auto add = [&](std::string name, K kind, double lhs, double rhs, double slack = kSlack) {
        const bool holds = lhs == kNegInf || rhs == kInf || lhs <= rhs + slack;
        cert.inequalities.push_back({std::move(name), kind, lhs, rhs, holds});
    };
    add("log2_tr_p1_le_nE", K::Identity, cert.log2_tr_p1, nE);
    add("p2_mass_ge_delta_gamma", K::Identity, params.delta_gamma, cert.p2_mass, tol::kMass);
    add("log2_trace_px_le_log2_product", K::Identity, safe_log2(cert.trace_px),
        cert.log2_tr_p1 + std::log2(cert.tr_p2) + cert.log2_x_norm);
    add("twice_overlap_gap_le_distance_x", K::Identity, 2.0 * (cert.overlap - cert.trace_px), cert.distance_x);
    add("distance_x_le_extension_distance", K::Identity, cert.distance_x, cert.extension_distance);
    add("quarter_lt_p1_mass", K::Hypothesis, 0.25, cert.p1_mass, 0.0);
    cert.inequalities.back().holds = 0.25 < cert.p1_mass;
    add("log2_x_norm_le_cs_minus_log2_d", K::Hypothesis, cert.log2_x_norm, cs - report.log2_d);
    add("quarter_delta_gamma_le_overlap", K::Hypothesis, quarter, cert.overlap);
    add("extension_distance_le_twice_epsilon", K::Hypothesis, cert.extension_distance, 2.0 * outcome.epsilon);
    add("twice_chain_lower_le_twice_epsilon", K::Conclusion, 2.0 * cert.chain_lower, 2.0 * outcome.epsilon);
    add("cs_lower_le_c_plus_s", K::Conclusion, cert.cs_lower, cs);
    return cert;
}

}  // namespace entlab::locc
