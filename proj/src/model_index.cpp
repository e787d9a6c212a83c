/*
 Copyright 2026 The secidx Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "secidx/model_index.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>

#include "secidx/numerics.hpp"
#include "secidx/subset_search.hpp"

namespace secidx {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using std::complex;

// Relative threshold for rank decisions on transfer-matrix evaluations.
// Rational rank deficiency shows up at round-off level; generic nonzero
// singular values sit orders of magnitude above this.
constexpr double kRankRelTol = 1e-9;

MatrixXcd transfer_columns(const LtiSystem& sys, const ComponentLayout& layout,
                           const std::vector<int>& gamma, complex<double> z) {
    MatrixXcd zIA = -sys.A.cast<complex<double>>();
    zIA.diagonal().array() += z;
    const Eigen::PartialPivLU<MatrixXcd> lu(zIA);

    MatrixXcd g(sys.p, gamma.size());
    for (std::size_t c = 0; c < gamma.size(); ++c) {
        const int j = gamma[c];
        if (layout.is_actuator(j)) {
            g.col(c) = sys.C.cast<complex<double>>() *
                       lu.solve(sys.B.col(j).cast<complex<double>>());
        } else {
            g.col(c) = VectorXcd::Zero(sys.p);
            g(layout.sensor_of(j), c) = 1.0;
        }
    }
    return g;
}

int complex_rank(const MatrixXcd& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    const Eigen::JacobiSVD<MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0) return 0;
    const double tol = static_cast<double>(std::max(m.rows(), m.cols())) * kRankRelTol * sv(0);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++r;
    return r;
}

std::vector<complex<double>> evaluation_points(const LtiSystem& sys, int count,
                                               double radius, std::uint64_t seed) {
    const VectorXcd eigs = sys.A.eigenvalues();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::vector<complex<double>> pts;
    pts.reserve(count);
    int guard = 0;
    while (static_cast<int>(pts.size()) < count) {
        if (++guard > 100 * count)
            throw std::runtime_error("normal_rank: could not draw evaluation points");
        const complex<double> z = std::polar(radius, angle(rng));
        bool clash = false;
        for (Eigen::Index i = 0; i < eigs.size(); ++i)
            if (std::abs(z - eigs(i)) < 1e-6) clash = true;
        if (!clash) pts.push_back(z);
    }
    return pts;
}

std::vector<int> without(const std::vector<int>& gamma, int i) {
    std::vector<int> out;
    out.reserve(gamma.size());
    for (int j : gamma)
        if (j != i) out.push_back(j);
    return out;
}

}  // namespace

int normal_rank(const LtiSystem& sys, const ComponentLayout& layout,
                const std::vector<int>& gamma, std::uint64_t seed) {
    if (gamma.empty()) return 0;
    for (int j : gamma)
        if (j < 0 || j >= layout.component_count())
            throw std::out_of_range("normal_rank: component outside I");
    const auto pts = evaluation_points(sys, 7, 1.05, seed);
    int best = 0;
    for (const auto& z : pts)
        best = std::max(best, complex_rank(transfer_columns(sys, layout, gamma, z)));
    return best;
}

bool model_feasible(const LtiSystem& sys, const ComponentLayout& layout,
                    const std::vector<int>& gamma, int i) {
    if (std::find(gamma.begin(), gamma.end(), i) == gamma.end())
        throw std::invalid_argument("model_feasible: i must be a member of gamma");
    // A rational kernel vector with nonzero i-th entry exists exactly when
    // removing column i does not drop the normal rank.
    return normal_rank(sys, layout, gamma) == normal_rank(sys, layout, without(gamma, i));
}

IndexResult delta(const LtiSystem& sys, const ComponentLayout& layout, int i,
                  int max_card, int threads) {
    const auto start = std::chrono::steady_clock::now();
    const int n_comp = layout.component_count();
    if (i < 0 || i >= n_comp) throw std::out_of_range("delta: component outside I");
    const int cap = max_card < 0 ? n_comp : std::min(max_card, n_comp);

    IndexResult res;
    res.component = i;
    for (int q = 1; q <= cap; ++q) {
        auto hit = first_feasible_subset(
            n_comp, i, q, threads,
            [&](const std::vector<int>& gamma) { return model_feasible(sys, layout, gamma, i); });
        if (hit) {
            res.value = IndexValue::finite(q);
            res.witness_set = *hit;
            res.witness_attack =
                synthesize_model_attack(sys, layout, *hit, i, 2 * sys.n + 10);
            break;
        }
    }
    if (!res.value.is_finite() && cap < n_comp) res.value = IndexValue::capped(cap);
    res.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

AttackSignal synthesize_model_attack(const LtiSystem& sys, const ComponentLayout& layout,
                                     const std::vector<int>& gamma, int i, int horizon) {
    const auto it = std::find(gamma.begin(), gamma.end(), i);
    if (it == gamma.end())
        throw std::invalid_argument("synthesize_model_attack: i must be a member of gamma");
    const int g = static_cast<int>(gamma.size());
    const int i_pos = static_cast<int>(it - gamma.begin());

    const AttackStructure at = build_attack_structure(sys, layout);
    MatrixXd bg(sys.n, g), dg(sys.p, g);
    for (int c = 0; c < g; ++c) {
        bg.col(c) = at.Ba.col(layout.attack_column(gamma[c]));
        dg.col(c) = at.Da.col(layout.attack_column(gamma[c]));
    }

    // Finite-support formulation: find a(0..K-1) on the gamma channels with
    // x(0) = 0, y(k) = 0 for k < K, and x(K) = 0. The terminal-rest row block
    // makes the zero output self-sustaining once the support ends, so the
    // padded signal is perfectly undetectable on the infinite horizon. A
    // minimal polynomial kernel vector of the transfer matrix has degree at
    // most n, so a support of 2n + g + 6 steps leaves ample slack.
    const int support = std::min(horizon, 2 * sys.n + g + 6);
    if (support < 2)
        throw std::invalid_argument("synthesize_model_attack: horizon too short");

    // States are eliminated by forward substitution: the block in row k,
    // column j (j < k) is C A^{k-1-j} B_gamma, the diagonal block D_gamma,
    // and the last n rows pin x(K) = sum_j A^{K-1-j} B_gamma a(j) to zero.
    std::vector<MatrixXd> reach(support);  // reach[e] = A^e * B_gamma
    reach[0] = bg;
    for (int e = 1; e < support; ++e) reach[e] = sys.A * reach[e - 1];

    MatrixXd toeplitz = MatrixXd::Zero(sys.p * support + sys.n, g * support);
    for (int k = 0; k < support; ++k) {
        toeplitz.block(k * sys.p, k * g, sys.p, g) = dg;
        for (int j = 0; j < k; ++j)
            toeplitz.block(k * sys.p, j * g, sys.p, g) = sys.C * reach[k - 1 - j];
    }
    for (int j = 0; j < support; ++j)
        toeplitz.block(sys.p * support, j * g, sys.n, g) = reach[support - 1 - j];

    const MatrixXd null_basis = null_space_basis(toeplitz);
    if (null_basis.cols() == 0)
        throw std::invalid_argument(
            "synthesize_model_attack: gamma admits no undetectable attack");

    // Pick the kernel combination with the strongest component-i content.
    MatrixXd phi(support, null_basis.cols());
    for (int k = 0; k < support; ++k) phi.row(k) = null_basis.row(k * g + i_pos);
    const SvdResult phi_svd = svd(phi, false, true);
    if (phi_svd.singular_values.size() == 0 || phi_svd.singular_values(0) < 1e-8)
        throw std::invalid_argument(
            "synthesize_model_attack: component i is inactive in every kernel vector");
    const VectorXd coeffs = null_basis * phi_svd.v.col(0);

    AttackSignal atk;
    atk.a = MatrixXd::Zero(sys.m + sys.p, horizon);
    for (int k = 0; k < support; ++k)
        for (int c = 0; c < g; ++c)
            atk.a(layout.attack_column(gamma[c]), k) = coeffs(k * g + c);
    atk.a /= atk.a.cwiseAbs().maxCoeff();

    const MatrixXd y = simulate_attacked(sys, layout, VectorXd::Zero(sys.n),
                                         MatrixXd::Zero(sys.m, 0), atk);
    if (y.cwiseAbs().maxCoeff() > 1e-7)
        throw std::runtime_error("synthesize_model_attack: replay residual " +
                                 std::to_string(y.cwiseAbs().maxCoeff()) +
                                 " exceeds tolerance");
    return atk;
}

}  // namespace secidx
