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


#include "entlab/sigsub/sigsub.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "entlab/qmath/ops.hpp"

namespace entlab::sigsub {
namespace {

void require_delta(double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw ValidationError("delta must lie in [0, 1]");
}

// Spectral decomposition rho = V diag(q) V^dag with q nonincreasing.
std::pair<std::vector<double>, qmath::Matrix> eigen_sorted(const qmath::DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<qmath::Matrix> es(rho.matrix());
    const auto d = rho.dim();
    std::vector<double> q(static_cast<std::size_t>(d));
    qmath::Matrix v(d, d);
    // Eigen returns ascending order.
    for (qmath::Index i = 0; i < d; ++i) {
        q[static_cast<std::size_t>(i)] = std::max(0.0, es.eigenvalues()(d - 1 - i));
        v.col(i) = es.eigenvectors().col(d - 1 - i);
    }
    return {q, v};
}

std::uint64_t exact_dim(const SigQueryResult& r) { return r.dimension.exact.value_or(0); }

}  // namespace

SigQueryResult sig_dim(const spectrum::ClassSpectrum& spec, double delta) {
    require_delta(delta);
    SigQueryResult r;
    r.delta = delta;
    if (delta == 0.0) return r;

    long double cum = 0.0L;
    ExtendedCount prefix = ExtendedCount::zero();
    for (const auto& c : spec.classes) {
        const long double mass = std::exp2(static_cast<long double>(c.log2_mass));
        if (cum + mass >= delta - tol::kMass) {
            // The slack only decides which class finishes the sum; inside that
            // class one eigenvector can carry far less than kMass.
            const long double remaining = delta - cum;
            double log2_k = 0.0;
            if (remaining > 0) {
                const double x = static_cast<double>(std::log2(remaining)) - c.log2_eigenvalue;
                log2_k = x < 52.0 ? std::log2(std::max(1.0, std::ceil(std::exp2(x)))) : x;
            }
            log2_k = std::min(log2_k, c.log2_multiplicity);
            const ExtendedCount k = ExtendedCount::from_log2(log2_k);
            r.dimension = prefix + k;
            r.achieved_mass = static_cast<double>(cum + std::exp2(static_cast<long double>(k.log2 + c.log2_eigenvalue)));
            return r;
        }
        cum += mass;
        prefix = prefix + ExtendedCount::from_log2(c.log2_multiplicity);
    }
    throw ValidationError("delta " + format_double(delta) + " exceeds the total mass");
}

SigQueryResult sig_dim(std::span<const double> eigenvalues, double delta) {
    require_delta(delta);
    SigQueryResult r;
    r.delta = delta;
    if (delta == 0.0) return r;
    std::vector<double> q(eigenvalues.begin(), eigenvalues.end());
    for (double& x : q) x = std::max(0.0, x);
    std::sort(q.begin(), q.end(), std::greater<>());
    long double cum = 0.0L;
    for (std::size_t i = 0; i < q.size(); ++i) {
        cum += q[i];
        if (cum >= delta - tol::kMass) {
            r.dimension = ExtendedCount::from_exact(i + 1);
            r.achieved_mass = static_cast<double>(cum);
            return r;
        }
    }
    throw ValidationError("delta " + format_double(delta) + " exceeds the total mass");
}

SigQueryResult sig_dim(const qmath::DensityMatrix& rho, double delta) {
    const auto ev = rho.eigenvalues();
    return sig_dim(std::span<const double>(ev), delta);
}

SupportRankCheck check_support_rank_bound(const qmath::DensityMatrix& rho, const qmath::DensityMatrix& sigma, double delta) {
    require_delta(delta);
    SupportRankCheck c;
    c.distance = qmath::trace_distance(rho, sigma);
    c.hypothesis_ok = c.distance <= 2.0 * (1.0 - delta) + tol::kEquality;
    c.lhs = qmath::epsilon_rank(sigma, kSupportRankTol);
    c.rhs = exact_dim(sig_dim(rho, delta));
    c.holds = static_cast<std::uint64_t>(c.lhs) >= c.rhs;
    return c;
}

SupportRankInstance random_support_rank_instance(qmath::Rng& rng, int max_dim) {
    if (max_dim < 1) throw ValidationError("max_dim must be positive");
    std::uniform_int_distribution<int> pick_dim(1, max_dim);
    const int d = pick_dim(rng);
    std::uniform_int_distribution<int> pick_rank(1, d);
    auto rho = qmath::random_density(rng, d, pick_rank(rng));
    const int k = pick_rank(rng);

    qmath::Matrix s;
    if (std::bernoulli_distribution(0.5)(rng)) {
        auto [q, v] = eigen_sorted(rho);
        double top = 0.0;
        for (int i = 0; i < k; ++i) top += q[static_cast<std::size_t>(i)];
        Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
        for (int i = 0; i < k; ++i) w(i) = q[static_cast<std::size_t>(i)] / top;
        s = v * w.asDiagonal() * v.adjoint();
    } else {
        s = qmath::random_density(rng, d, k).matrix();
    }
    auto sigma = qmath::DensityMatrix::from_matrix(s);
    const double delta = std::clamp(1.0 - qmath::trace_distance(rho, sigma) / 2.0, 0.0, 1.0);
    return {std::move(rho), std::move(sigma), delta};
}

TensorDimensionCheck check_tensor_dimension_bound(const qmath::DensityMatrix& a, const qmath::DensityMatrix& b, double delta_a, double delta_b) {
    if (!(delta_a >= 0.0 && delta_b >= 0.0 && delta_a + delta_b <= 1.0 + tol::kOracle))
        throw ValidationError("need delta_a, delta_b >= 0 and delta_a + delta_b <= 1");
    const auto qa = a.eigenvalues();
    const auto qb = b.eigenvalues();
    std::vector<double> qab;
    qab.reserve(qa.size() * qb.size());
    for (double x : qa)
        for (double y : qb) qab.push_back(std::max(0.0, x) * std::max(0.0, y));

    const double sum = std::min(1.0, delta_a + delta_b);
    TensorDimensionCheck c;
    c.lhs = exact_dim(sig_dim(std::span<const double>(qab), sum));
    c.mid = exact_dim(sig_dim(std::span<const double>(qab), std::min(1.0, delta_a + delta_b - delta_a * delta_b)));
    const auto sa = static_cast<std::int64_t>(exact_dim(sig_dim(std::span<const double>(qa), delta_a)));
    const auto sb = static_cast<std::int64_t>(exact_dim(sig_dim(std::span<const double>(qb), delta_b)));
    c.rhs = (sa - 1) * (sb - 1);
    c.holds = c.lhs >= c.mid && static_cast<std::int64_t>(c.mid) > c.rhs;
    return c;
}

TensorDimensionInstance random_tensor_dimension_instance(qmath::Rng& rng, int max_dim) {
    if (max_dim < 1) throw ValidationError("max_dim must be positive");
    std::uniform_int_distribution<int> pick_dim(1, max_dim);
    const int da = pick_dim(rng);
    const int db = pick_dim(rng);
    auto a = qmath::random_density(rng, da, std::uniform_int_distribution<int>(1, da)(rng));
    auto b = qmath::random_density(rng, db, std::uniform_int_distribution<int>(1, db)(rng));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double x = u(rng);
    const double y = u(rng) * (1.0 - x);
    return {std::move(a), std::move(b), x, y};
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("least squares needs two or more points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw ValidationError("least squares needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    return f;
}

std::string GrowthFit::to_csv() const {
    std::ostringstream out;
    out << "n,excess_bits,bound_bits,measured_C\n";
    for (std::size_t i = 0; i < n_grid.size(); ++i)
        out << n_grid[i] << ',' << format_double(excess[i]) << ',' << format_double(bound_bits[i]) << ','
            << format_double(measured_C[i]) << '\n';
    return out.str();
}

GrowthFit growth_fit(const spectrum::BaseSpectrum& p, double delta, std::span<const int> n_grid,
                     const ReferenceConstants& constants) {
    const auto stats = spectrum::spectrum_stats(p);
    spectrum::require_nondegenerate(stats);
    require_delta(delta);
    if (n_grid.size() < 2) throw ValidationError("growth fit needs at least two grid points");
    if (!std::is_sorted(n_grid.begin(), n_grid.end()) || n_grid.front() < 1)
        throw ValidationError("n grid must be ascending and positive");

    GrowthFit g;
    g.delta = delta;
    g.n_grid.assign(n_grid.begin(), n_grid.end());
    std::vector<double> root;
    for (int n : n_grid) {
        const auto spec = spectrum::tensor_power_spectrum(p, n);
        const double excess = sig_dim(spec, delta).dimension.log2 - n * stats.E;
        const double r = std::sqrt(static_cast<double>(n));
        root.push_back(r);
        g.excess.push_back(excess);
        g.bound_bits.push_back(std::log2(constants.C) + stats.alpha * r);
        g.measured_C.push_back(std::exp2(excess - stats.alpha * r));
    }
    const auto fit = least_squares(root, g.excess);
    g.fitted_coeff = fit.slope;
    g.fitted_const = fit.intercept;
    g.all_above_bound = true;
    for (std::size_t i = 0; i < g.excess.size(); ++i) {
        g.residuals.push_back(g.excess[i] - (fit.slope * root[i] + fit.intercept));
        if (g.excess[i] < g.bound_bits[i]) g.all_above_bound = false;
        if (i > 0 && g.excess[i] < g.excess[i - 1]) g.monotonicity_violations.push_back(i);
    }
    return g;
}

DilutionDimension min_dilution_dimension(const spectrum::ClassSpectrum& spec, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 2.0)) throw ValidationError("epsilon must lie in (0, 2)");
    DilutionDimension d;
    d.lower = sig_dim(spec, 1.0 - epsilon / 2.0).dimension;
    d.upper = sig_dim(spec, 1.0 - epsilon * epsilon / 4.0).dimension;
    return d;
}

DilutionDimension min_dilution_dimension(const spectrum::BaseSpectrum& p, int n, double epsilon) {
    return min_dilution_dimension(spectrum::tensor_power_spectrum(p, n), epsilon);
}

}  // namespace entlab::sigsub
