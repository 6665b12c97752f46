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


#include "entlab/locc/dilution.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "entlab/common.hpp"
#include "entlab/sigsub/sigsub.hpp"

namespace entlab::locc {
namespace {

constexpr long double kSnap = 1e-9L;  // block units
constexpr std::size_t kMaxSteps = 50'000'000;

ExtendedCount total_rank(const spectrum::ClassSpectrum& spec) {
    ExtendedCount r = ExtendedCount::zero();
    for (const auto& c : spec.classes) r = r + ExtendedCount::from_log2(c.log2_multiplicity);
    return r;
}

int rank_bits(const ExtendedCount& rank) {
    if (rank.exact) return ceil_log2(*rank.exact);
    return static_cast<int>(std::ceil(rank.log2 - 1e-9));
}

// Walks the target classes in block units, emitting one segment per full run
// of blocks inside a class and one per piece of a straddled block. Outputs
// are left unnormalized.
struct BlockWalk {
    double log2_m;
    long double blocks;  // K

    std::vector<AlignedSegment> segs;
    double log2_kept = kNegInf;
    long double done = 0.0L;  // closed blocks
    long double fill = 0.0L;  // occupied fraction of the open block
    double open_log2_mass = kNegInf;
    std::vector<std::pair<long double, double>> open;  // (length, log2 eigenvalue)

    void close_block() {
        if (open.empty()) return;
        const double log2_avg = open_log2_mass - log2_m;
        for (const auto& [len, eig] : open)
            segs.push_back({static_cast<double>(std::log2(len)) + log2_m, eig, log2_avg});
        if (fill < 1.0L - kSnap)
            segs.push_back({static_cast<double>(std::log2(1.0L - fill)) + log2_m, kNegInf, log2_avg});
        log2_kept = log2_add(log2_kept, open_log2_mass);
        open.clear();
        open_log2_mass = kNegInf;
        fill = 0.0L;
        done += 1.0L;
    }

    void add_class(double log2_eig, double log2_mult) {
        long double rem = std::exp2(static_cast<long double>(log2_mult - log2_m));
        std::size_t steps = 0;
        while (rem > 0 && done < blocks) {
            if (++steps > kMaxSteps) throw Error("block walk did not terminate");
            if (open.empty() && rem >= 1.0L - kSnap) {
                const long double full = std::floor(std::min(rem, blocks - done) + kSnap);
                const double log2_count = static_cast<double>(std::log2(full)) + log2_m;
                segs.push_back({log2_count, log2_eig, log2_eig});
                log2_kept = log2_add(log2_kept, log2_count + log2_eig);
                done += full;
                rem -= full;
            } else {
                const long double take = std::min(rem, 1.0L - fill);
                open.emplace_back(take, log2_eig);
                open_log2_mass = log2_add(open_log2_mass, static_cast<double>(std::log2(take)) + log2_m + log2_eig);
                fill += take;
                rem -= take;
                if (fill >= 1.0L - kSnap) close_block();
            }
            if (rem < kSnap) rem = 0;
        }
        if (rem > 0) segs.push_back({static_cast<double>(std::log2(rem)) + log2_m, log2_eig, kNegInf});
    }
};

}  // namespace

DiagonalKraus build_shift_dilution(const qmath::SchmidtProfile& q) {
    const auto& p = q.probs();
    if (p.empty()) throw ValidationError("empty Schmidt profile");
    const auto d = static_cast<Index>(p.size());
    DiagonalKraus out;
    out.dim = d;
    out.message_bits = ceil_log2(static_cast<std::uint64_t>(d));
    out.weights.assign(p.size(), std::vector<double>(p.size()));
    out.perms.assign(p.size(), std::vector<Index>(p.size()));
    for (Index k = 0; k < d; ++k)
        for (Index j = 0; j < d; ++j) {
            const Index to = (j + k) % d;
            out.weights[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(to)];
            out.perms[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = to;
        }
    return out;
}

double block_delta(double epsilon_target) {
    if (!(epsilon_target > 0.0 && epsilon_target < 2.0)) throw ValidationError("epsilon target must lie in (0, 2)");
    return 1.0 - epsilon_target * epsilon_target / 8.0;
}

double BlockShiftProtocol::outcome_prob() const { return std::exp2(-static_cast<double>(c)); }

BlockShiftProtocol build_block_dilution(const spectrum::ClassSpectrum& target, int budget_c, double epsilon_target) {
    if (budget_c < 0) throw ValidationError("budget must be nonnegative");
    if (target.classes.empty()) throw ValidationError("empty target spectrum");
    if (std::abs(target.log2_total_mass()) > 1e-9) throw ValidationError("target spectrum is not normalized");

    BlockShiftProtocol out;
    out.target = target;
    out.requested_c = budget_c;
    out.epsilon_target = epsilon_target;
    out.delta = block_delta(epsilon_target);
    out.c = std::min(budget_c, rank_bits(total_rank(target)));
    out.n_delta = sigsub::sig_dim(target, out.delta).dimension;

    if (out.n_delta.exact) {
        const std::uint64_t n = *out.n_delta.exact;
        const std::uint64_t m = out.c >= 63 ? 1 : std::max<std::uint64_t>(1, (n + (std::uint64_t{1} << out.c) - 1) >> out.c);
        out.m = m;
        out.log2_m = std::log2(static_cast<double>(m));
    } else {
        const double x = out.n_delta.log2 - out.c;
        if (x < 52.0) {
            const auto m = static_cast<std::uint64_t>(std::max(1.0, std::ceil(std::exp2(x) - 1e-9)));
            out.m = m;
            out.log2_m = std::log2(static_cast<double>(m));
        } else {
            out.log2_m = x;
        }
    }
    out.log2_dprime = out.c + out.log2_m;

    BlockWalk walk{out.log2_m, std::ldexp(1.0L, out.c), {}, kNegInf, 0.0L, 0.0L, kNegInf, {}};
    for (const auto& cls : target.classes) walk.add_class(cls.log2_eigenvalue, cls.log2_multiplicity);
    walk.close_block();

    out.log2_kept_mass = walk.log2_kept;
    for (auto& s : walk.segs) s.log2_output -= walk.log2_kept;
    out.profile = AlignedProfile(std::move(walk.segs));
    out.target_error = out.profile.pure_distance();
    out.fidelity = out.profile.fidelity();
    return out;
}

DiagonalKraus BlockShiftProtocol::materialize(std::uint64_t dim_cap) const {
    if (!m || c >= 62) throw CapExceededError("block protocol dimension is not representable");
    const std::uint64_t blocks = std::uint64_t{1} << c;
    const std::uint64_t bm = *m;
    if (bm > dim_cap / blocks) throw CapExceededError("block protocol dimension exceeds the cap");
    const std::uint64_t dim = blocks * bm;

    std::vector<double> q;
    q.reserve(dim);
    for (const auto& cls : target.classes) {
        const double mult = std::round(std::exp2(cls.log2_multiplicity));
        const double eig = std::exp2(cls.log2_eigenvalue);
        for (double i = 0; i < mult && q.size() < dim; i += 1.0) q.push_back(eig);
        if (q.size() == dim) break;
    }
    q.resize(dim, 0.0);

    std::vector<double> flat(dim);
    double kept = 0.0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        double mass = 0.0;
        for (std::uint64_t o = 0; o < bm; ++o) mass += q[b * bm + o];
        for (std::uint64_t o = 0; o < bm; ++o) flat[b * bm + o] = mass / static_cast<double>(bm);
        kept += mass;
    }
    for (double& x : flat) x /= kept;

    DiagonalKraus out;
    out.dim = static_cast<Index>(dim);
    out.message_bits = c;
    out.weights.assign(blocks, std::vector<double>(dim));
    out.perms.assign(blocks, std::vector<Index>(dim));
    for (std::uint64_t k = 0; k < blocks; ++k)
        for (std::uint64_t j = 0; j < dim; ++j) {
            const std::uint64_t to = ((j / bm + k) % blocks) * bm + j % bm;
            out.weights[k][j] = static_cast<double>(bm) * flat[to];
            out.perms[k][j] = static_cast<Index>(to);
        }
    return out;
}

}  // namespace entlab::locc
