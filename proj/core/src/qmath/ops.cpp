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

#include "entlab/qmath/ops.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "entlab/common.hpp"

namespace entlab::qmath {
namespace {

Eigen::SelfAdjointEigenSolver<Matrix> eigensolve(const Matrix& h, bool vectors) {
    const Matrix sym = (h + h.adjoint()) * 0.5;
    return Eigen::SelfAdjointEigenSolver<Matrix>(sym, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("dimension mismatch between density matrices");
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Matrix& h) {
    if (h.rows() == 0) return {};
    auto es = eigensolve(h, false);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

double trace_norm_hermitian(const Matrix& h) {
    if (h.rows() != h.cols()) throw ValidationError("trace norm needs a square matrix");
    if (h.rows() == 0) return 0.0;
    auto es = eigensolve(h, false);
    return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho, sigma);
    return trace_norm_hermitian(rho.matrix() - sigma.matrix());
}

double pure_trace_distance(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw ValidationError("dimension mismatch between state vectors");
    const Complex inner = b.dot(a);  // <b|a>
    const double mag = std::abs(inner);
    const Complex phase = mag > 0 ? inner / mag : Complex(1.0, 0.0);
    // 1 - |<a|b>| = |a - e^{i theta} b|^2 / 2 for unit vectors, which stays
    // accurate when the states are nearly equal.
    const double half_gap = 0.5 * (a - phase * b).squaredNorm();
    const double one_minus_sq = std::max(0.0, half_gap * (2.0 - half_gap));
    return 2.0 * std::sqrt(one_minus_sq);
}

TraceDistanceWitness trace_distance_witness(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho, sigma);
    auto es = eigensolve(rho.matrix() - sigma.matrix(), true);
    TraceDistanceWitness w;
    w.projector = Matrix::Zero(rho.dim(), rho.dim());
    double positive = 0.0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lambda = es.eigenvalues()(i);
        if (lambda > 1e-14) {
            const Vector v = es.eigenvectors().col(i);
            w.projector += v * v.adjoint();
            positive += lambda;
        }
    }
    w.value = 2.0 * positive;
    return w;
}

double operator_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    if (!a.allFinite()) throw ValidationError("operator_norm: non-finite entries");
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

Vector SchmidtDecomposition::reconstruct() const {
    Vector v = Vector::Zero(dim_a * dim_b);
    const auto& p = profile.probs();
    for (std::size_t k = 0; k < p.size(); ++k) {
        const auto kk = static_cast<Index>(k);
        const double c = std::sqrt(p[k]);
        for (Index i = 0; i < dim_a; ++i) v.segment(i * dim_b, dim_b) += c * basis_a(i, kk) * basis_b.col(kk);
    }
    return v;
}

SchmidtDecomposition schmidt_decompose(const PureBipartiteState& psi) {
    const Matrix c = psi.coefficient_matrix();
    Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    std::vector<double> probs;
    std::vector<Index> kept;
    for (Index k = 0; k < s.size(); ++k) {
        const double p = s(k) * s(k);
        if (p > 1e-20) {
            probs.push_back(p);
            kept.push_back(k);
        }
    }
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (double& p : probs) p /= total;

    SchmidtDecomposition out{SchmidtProfile::from_probs(probs), Matrix(c.rows(), static_cast<Index>(kept.size())),
                             Matrix(c.cols(), static_cast<Index>(kept.size())), psi.dim_a(), psi.dim_b()};
    // JacobiSVD returns singular values sorted nonincreasing, so column order
    // already matches the sorted profile.
    for (std::size_t k = 0; k < kept.size(); ++k) {
        out.basis_a.col(static_cast<Index>(k)) = svd.matrixU().col(kept[k]);
        out.basis_b.col(static_cast<Index>(k)) = svd.matrixV().col(kept[k]).conjugate();
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem traced, Index dim_a, Index dim_b) {
    if (dim_a <= 0 || dim_b <= 0 || dim_a * dim_b != rho.dim()) throw ValidationError("dims do not factorize the total dimension");
    const Matrix& m = rho.matrix();
    if (traced == Subsystem::B) {
        Matrix out = Matrix::Zero(dim_a, dim_a);
        for (Index i = 0; i < dim_a; ++i)
            for (Index k = 0; k < dim_a; ++k)
                for (Index j = 0; j < dim_b; ++j) out(i, k) += m(i * dim_b + j, k * dim_b + j);
        return DensityMatrix::from_matrix(out);
    }
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (Index j = 0; j < dim_b; ++j)
        for (Index l = 0; l < dim_b; ++l)
            for (Index i = 0; i < dim_a; ++i) out(j, l) += m(i * dim_b + j, i * dim_b + l);
    return DensityMatrix::from_matrix(out);
}

DensityMatrix partial_trace(const PureBipartiteState& psi, Subsystem traced) {
    const Matrix c = psi.coefficient_matrix();
    if (traced == Subsystem::B) return DensityMatrix::from_matrix(c * c.adjoint());
    return DensityMatrix::from_matrix(c.transpose() * c.conjugate());
}

Vector permute_subsystems(const Vector& v, std::span<const Index> dims, std::span<const std::size_t> perm) {
    const std::size_t n = dims.size();
    if (perm.size() != n) throw ValidationError("permutation size mismatch");
    Index total = 1;
    for (Index d : dims) total *= d;
    if (total != v.size()) throw ValidationError("register dims do not match vector size");

    std::vector<Index> in_stride(n, 1);
    for (std::size_t i = n; i-- > 1;) in_stride[i - 1] = in_stride[i] * dims[i];
    std::vector<Index> out_dims(n);
    for (std::size_t i = 0; i < n; ++i) out_dims[i] = dims[perm[i]];

    Vector out(v.size());
    std::vector<Index> digit(n, 0);
    for (Index o = 0; o < total; ++o) {
        Index src = 0;
        for (std::size_t i = 0; i < n; ++i) src += digit[i] * in_stride[perm[i]];
        out(o) = v(src);
        for (std::size_t i = n; i-- > 0;) {
            if (++digit[i] < out_dims[i]) break;
            digit[i] = 0;
        }
    }
    return out;
}

Matrix reduce_pure(const Vector& v, std::span<const Index> dims, std::span<const bool> keep) {
    if (keep.size() != dims.size()) throw ValidationError("keep mask size mismatch");
    std::vector<std::size_t> perm;
    Index dim_keep = 1;
    Index dim_drop = 1;
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (keep[i]) {
            perm.push_back(i);
            dim_keep *= dims[i];
        }
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (!keep[i]) {
            perm.push_back(i);
            dim_drop *= dims[i];
        }
    const Vector w = permute_subsystems(v, dims, perm);
    // Row-major reshape: row = kept index, column = traced index.
    const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> c(w.data(), dim_keep,
                                                                                                     dim_drop);
    return c * c.adjoint();
}

double fidelity(const DensityMatrix& rho0, const DensityMatrix& rho1) {
    require_same_dim(rho0, rho1);
    auto es = eigensolve(rho0.matrix(), true);
    Eigen::VectorXd sq = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix root = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().adjoint();
    const Matrix inner = root * rho1.matrix() * root;
    auto es2 = eigensolve(inner, false);
    return std::min(1.0, es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum());
}

int epsilon_rank(const Matrix& hermitian, double tol) {
    if (tol < 0) throw ValidationError("epsilon_rank tolerance must be nonnegative");
    const auto ev = hermitian_eigenvalues(hermitian);
    if (ev.empty() || ev.front() <= 0) return 0;
    const double cut = tol * ev.front();
    return static_cast<int>(std::count_if(ev.begin(), ev.end(), [cut](double x) { return x > cut; }));
}

int epsilon_rank(const DensityMatrix& rho, double tol) { return epsilon_rank(rho.matrix(), tol); }

int machine_rank(const Matrix& hermitian) {
    const auto ev = hermitian_eigenvalues(hermitian);
    double max_abs = 0.0;
    for (double x : ev) max_abs = std::max(max_abs, std::abs(x));
    const double cut = static_cast<double>(ev.size()) * std::numeric_limits<double>::epsilon() * max_abs;
    return static_cast<int>(std::count_if(ev.begin(), ev.end(), [cut](double x) { return std::abs(x) > cut; }));
}

ProductExtension nearest_product_extension(const PureBipartiteState& psi, const Vector& phi) {
    if (phi.size() != psi.dim_a()) throw ValidationError("phi must live on subsystem A");
    if (std::abs(phi.norm() - 1.0) > tol::kValidity) throw ValidationError("phi is not normalized");

    ProductExtension out;
    out.input_distance = trace_distance(partial_trace(psi, Subsystem::B), DensityMatrix::from_pure(phi));
    if (out.input_distance >= 2.0 - tol::kOracle) throw ValidationError("input distance >= 2: hypothesis is vacuous");

    const Matrix c = psi.coefficient_matrix();
    const Vector g = c.transpose() * phi.conjugate();  // g_j = sum_i conj(phi_i) C_ij
    out.overlap = g.norm();
    if (out.overlap < tol::kOracle) {
        out.status = ProductExtension::Status::ZeroOverlap;
        out.distance = 2.0;
        return out;
    }
    out.gamma = g / out.overlap;
    Vector prod(psi.dim_a() * psi.dim_b());
    for (Index i = 0; i < psi.dim_a(); ++i) prod.segment(i * psi.dim_b(), psi.dim_b()) = phi(i) * out.gamma;
    out.distance = pure_trace_distance(psi.amplitudes(), prod);

    const double eps = out.input_distance;
    out.within_twice_input = out.distance < 2.0 * eps;
    out.within_fidelity_bound = out.distance <= 2.0 * std::sqrt(std::max(0.0, eps - eps * eps / 4.0)) + tol::kEquality;
    return out;
}

}  // namespace entlab::qmath
