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


#include "entlab/locc/run.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <json.hpp>

#include "entlab/common.hpp"

namespace entlab::locc {
namespace {

constexpr double kRankTol = 1e-9;
constexpr double kZeroProb = 1e-300;

void finish(ProtocolRunReport& r, const RunOptions& options) {
    r.n = options.n;
    r.threshold = options.good_threshold;
    double success = 0.0;
    double eps_good = -1.0;
    double eps_any = kInf;
    for (const auto& o : r.outcomes) {
        eps_any = std::min(eps_any, o.epsilon);
        if (!o.good) continue;
        success += std::exp2(o.log2_count) * o.prob;
        eps_good = std::max(eps_good, o.epsilon);
    }
    // Summation error alone must not register as a failure probability.
    r.success_prob = success >= 1.0 - tol::kOracle ? 1.0 : success;
    r.s = success > 0 ? -std::log2(r.success_prob) : kInf;
    r.epsilon = eps_good >= 0 ? eps_good : eps_any;
    r.ebits_consumed = r.log2_d;
}

Vector target_vector(const qmath::SchmidtProfile& q, Index dim_a, Index dim_b) {
    const auto& p = q.probs();
    if (static_cast<Index>(p.size()) > std::min(dim_a, dim_b))
        throw ValidationError("target Schmidt rank exceeds the output registers");
    Vector v = Vector::Zero(dim_a * dim_b);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto ii = static_cast<Index>(i);
        v(ii * dim_b + ii) = std::sqrt(p[i]);
    }
    return v;
}

// Embeds each output register into a larger one; rows are indexed (out, anc).
Matrix pad_rows(const Matrix& op, Index out, Index anc, Index new_out) {
    Matrix padded = Matrix::Zero(new_out * anc, op.cols());
    for (Index o = 0; o < out; ++o) padded.middleRows(o * anc, anc) = op.middleRows(o * anc, anc);
    return padded;
}

StandardFormProtocol pad_outputs(const StandardFormProtocol& proto, Index rank) {
    StandardFormProtocol out = proto;
    out.dim_a_out = std::max(proto.dim_a_out, rank);
    out.dim_b_out = std::max(proto.dim_b_out, rank);
    for (auto& m : out.alice_ops) m = pad_rows(m, proto.dim_a_out, proto.dim_a_anc, out.dim_a_out);
    for (auto& u : out.bob_ops) u = pad_rows(u, proto.dim_b_out, proto.dim_b_anc, out.dim_b_out);
    return out;
}

void diagonal_stats(OutcomeState& o, const std::vector<double>& out, double threshold,
                    const qmath::SchmidtProfile& target) {
    o.aligned = AlignedProfile::from_vectors(target.probs(), out);
    o.epsilon = o.aligned->pure_distance();
    const double top = *std::max_element(out.begin(), out.end());
    o.x_norm = top;
    o.log2_x_norm = std::log2(top);
    const auto rank = std::count_if(out.begin(), out.end(), [&](double v) { return v > kRankTol * top; });
    o.log2_x_rank = std::log2(static_cast<double>(rank));
    o.good = o.epsilon <= threshold && o.aligned->fidelity() > tol::kOracle;
}

}  // namespace

double ProtocolRunReport::total_prob() const {
    double t = 0.0;
    for (const auto& o : outcomes) t += std::exp2(o.log2_count) * o.prob;
    return t;
}

const OutcomeState* ProtocolRunReport::best_good_outcome() const {
    const OutcomeState* best = nullptr;
    for (const auto& o : outcomes)
        if (o.good && (!best || o.prob > best->prob)) best = &o;
    return best;
}

std::string ProtocolRunReport::to_json() const {
    auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
    nlohmann::json j;
    j["n"] = n;
    j["d"] = log2_d < 53 ? num(std::round(std::exp2(log2_d))) : nlohmann::json(nullptr);
    j["log2_d"] = log2_d;
    j["c"] = c;
    j["s"] = num(s);
    j["epsilon"] = epsilon;
    j["success_prob"] = success_prob;
    j["threshold"] = threshold;
    j["repetitions"] = repetitions;
    j["failure_prob"] = failure_prob;
    j["ebits_consumed"] = ebits_consumed;
    auto& per = j["per_outcome"] = nlohmann::json::array();
    for (const auto& o : outcomes)
        per.push_back({{"k", o.k},
                       {"log2_count", o.log2_count},
                       {"prob", o.prob},
                       {"epsilon", o.epsilon},
                       {"good", o.good},
                       {"log2_x_norm", o.log2_x_norm},
                       {"log2_x_rank", o.log2_x_rank}});
    return j.dump(2);
}

ProtocolRunReport run_protocol(const StandardFormProtocol& input_proto, const qmath::SchmidtProfile& target,
                               const RunOptions& options) {
    input_proto.validate();
    // A target wider than the output registers is compared in a zero-padded register.
    const auto rank = static_cast<Index>(target.probs().size());
    const StandardFormProtocol proto = rank > std::min(input_proto.dim_a_out, input_proto.dim_b_out)
                                           ? pad_outputs(input_proto, rank)
                                           : input_proto;
    if (proto.dim_a_in != proto.dim_b_in) throw ValidationError("protocol inputs must both have dimension d");
    const Index d = proto.dim_a_in;
    const Index da = proto.dim_a_out, daa = proto.dim_a_anc, db = proto.dim_b_out, dbb = proto.dim_b_anc;
    const Vector tv = target_vector(target, da, db);
    const auto target_rho = qmath::DensityMatrix::from_pure(tv);

    ProtocolRunReport r;
    r.log2_d = std::log2(static_cast<double>(d));
    r.c = proto.message_bits;
    const auto xs = apply_standard_form(proto, qmath::PureBipartiteState::maximally_entangled(d));
    const std::array<Index, 4> dims{da, daa, db, dbb};
    const std::array<std::size_t, 4> to_ab_first{0, 2, 1, 3};

    for (std::size_t k = 0; k < xs.size(); ++k) {
        OutcomeState o;
        o.k = k;
        o.prob = xs[k].squaredNorm();
        if (o.prob < kZeroProb) {
            o.epsilon = 2.0;
            o.log2_x_rank = kNegInf;
            r.outcomes.push_back(std::move(o));
            continue;
        }
        DenseOutcome dense;
        dense.dim_a = da;
        dense.dim_a_anc = daa;
        dense.dim_b = db;
        dense.dim_b_anc = dbb;
        dense.x = xs[k] / std::sqrt(o.prob);

        const auto split = qmath::PureBipartiteState::from_amplitudes(
            da * db, daa * dbb, qmath::permute_subsystems(dense.x, dims, to_ab_first));
        const auto y = qmath::partial_trace(split, qmath::Subsystem::B);
        dense.y = y.matrix();
        o.epsilon = qmath::trace_distance(y, target_rho);

        const auto side = qmath::PureBipartiteState::from_amplitudes(da * daa, db * dbb, dense.x);
        dense.x_a = qmath::partial_trace(side, qmath::Subsystem::B).matrix();
        o.x_norm = qmath::operator_norm(dense.x_a);
        o.log2_x_norm = std::log2(o.x_norm);
        o.log2_x_rank = std::log2(static_cast<double>(qmath::epsilon_rank(dense.x_a, kRankTol)));

        try {
            dense.extension = qmath::nearest_product_extension(split, tv);
            dense.extension_ok = dense.extension.status == qmath::ProductExtension::Status::Ok;
        } catch (const ValidationError&) {
            dense.extension_ok = false;
        }
        if (dense.extension_ok) {
            const auto gamma = qmath::PureBipartiteState::from_amplitudes(daa, dbb, dense.extension.gamma);
            dense.gamma = qmath::partial_trace(gamma, qmath::Subsystem::B).matrix();
        }
        o.good = o.epsilon <= options.good_threshold && dense.extension_ok;
        o.dense = std::move(dense);
        r.outcomes.push_back(std::move(o));
    }
    finish(r, options);
    return r;
}

ProtocolRunReport run_protocol(const DiagonalKraus& proto, const qmath::SchmidtProfile& target,
                               const RunOptions& options) {
    proto.validate();
    ProtocolRunReport r;
    const auto d = static_cast<std::size_t>(proto.dim);
    r.log2_d = std::log2(static_cast<double>(d));
    r.c = proto.message_bits;
    for (std::size_t k = 0; k < proto.outcome_count(); ++k) {
        OutcomeState o;
        o.k = k;
        std::vector<double> out(d, 0.0);
        long double total = 0.0L;
        for (std::size_t j = 0; j < d; ++j) {
            const double w = proto.weights[k][j] / static_cast<double>(d);
            out[static_cast<std::size_t>(proto.perms[k][j])] = w;
            total += w;
        }
        o.prob = static_cast<double>(total);
        if (o.prob < kZeroProb) {
            o.epsilon = 2.0;
            o.log2_x_rank = kNegInf;
            r.outcomes.push_back(std::move(o));
            continue;
        }
        for (double& v : out) v = static_cast<double>(v / total);
        diagonal_stats(o, out, options.good_threshold, target);
        r.outcomes.push_back(std::move(o));
    }
    finish(r, options);
    return r;
}

ProtocolRunReport run_protocol(const BlockShiftProtocol& proto, const RunOptions& options) {
    ProtocolRunReport r;
    r.log2_d = proto.log2_dprime;
    r.c = proto.c;
    OutcomeState o;
    o.log2_count = proto.c;
    o.prob = proto.outcome_prob();
    o.epsilon = proto.target_error;
    o.aligned = proto.profile;
    o.log2_x_norm = proto.profile.log2_max_output();
    o.x_norm = std::exp2(o.log2_x_norm);
    o.log2_x_rank = proto.profile.log2_output_rank(kRankTol);
    o.good = o.epsilon <= options.good_threshold && proto.fidelity > tol::kOracle;
    r.outcomes.push_back(std::move(o));
    finish(r, options);
    return r;
}

ProtocolRunReport lift_success_probability(const ProtocolRunReport& report, double eps_fail) {
    if (!(eps_fail > 0.0 && eps_fail < 1.0)) throw ValidationError("eps_fail must lie in (0, 1)");
    if (!std::isfinite(report.s) || report.s < 0) throw ValidationError("success exponent must be finite and nonnegative");
    ProtocolRunReport out = report;
    if (report.s == 0.0) {
        out.repetitions = 1.0;
        out.failure_prob = 0.0;
        out.ebits_consumed = report.log2_d;
        return out;
    }
    const double reps = std::max(1.0, std::ceil(std::exp2(report.s) * std::log(1.0 / eps_fail)));
    out.repetitions = reps;
    out.c = report.c + static_cast<int>(std::ceil(std::log2(reps) - 1e-12));
    out.failure_prob = std::pow(1.0 - std::exp2(-report.s), reps);
    out.s = -std::log2(1.0 - eps_fail);
    out.success_prob = 1.0 - out.failure_prob;
    out.ebits_consumed = report.log2_d * reps;
    return out;
}

}  // namespace entlab::locc
