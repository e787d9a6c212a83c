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
#include "secidx/linsys.hpp"

#include <Eigen/Eigenvalues>

#include <random>
#include <stdexcept>

#include "secidx/hankel.hpp"
#include "secidx/numerics.hpp"

namespace secidx {

namespace {

MatrixXd stack_powers(const MatrixXd& A, const MatrixXd& M, bool observability) {
    // Controllability [B, AB, ..., A^{n-1}B] or observability [C; CA; ...].
    const int n = static_cast<int>(A.rows());
    if (observability) {
        MatrixXd out(M.rows() * n, A.cols());
        MatrixXd block = M;
        for (int k = 0; k < n; ++k) {
            out.middleRows(k * M.rows(), M.rows()) = block;
            block = block * A;
        }
        return out;
    }
    MatrixXd out(A.rows(), M.cols() * n);
    MatrixXd block = M;
    for (int k = 0; k < n; ++k) {
        out.middleCols(k * M.cols(), M.cols()) = block;
        block = A * block;
    }
    return out;
}

}  // namespace

LtiSystem LtiSystem::create(MatrixXd A, MatrixXd B, MatrixXd C) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("LtiSystem: A must be square, got " +
                                    std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
    if (B.rows() != A.rows())
        throw std::invalid_argument("LtiSystem: B has " + std::to_string(B.rows()) +
                                    " rows, expected n=" + std::to_string(A.rows()));
    if (C.cols() != A.rows())
        throw std::invalid_argument("LtiSystem: C has " + std::to_string(C.cols()) +
                                    " cols, expected n=" + std::to_string(A.rows()));

    LtiSystem sys;
    sys.n = static_cast<int>(A.rows());
    sys.m = static_cast<int>(B.cols());
    sys.p = static_cast<int>(C.rows());
    if (numerical_rank(B) != sys.m)
        throw std::invalid_argument("LtiSystem: B must have full column rank");

    sys.controllable = numerical_rank(stack_powers(A, B, false)) == sys.n;
    sys.observable = numerical_rank(stack_powers(A, C, true)) == sys.n;
    sys.A = std::move(A);
    sys.B = std::move(B);
    sys.C = std::move(C);
    return sys;
}

ComponentLayout::ComponentLayout(int m_, int p_, int nu_) : m(m_), p(p_), nu(nu_) {
    if (m < 0 || p < 0 || nu < 0 || nu > p)
        throw std::invalid_argument("ComponentLayout: require 0 <= nu <= p");
}

int ComponentLayout::attack_column(int j) const {
    if (j < 0 || j >= component_count())
        throw std::out_of_range("ComponentLayout: component index out of range");
    return is_actuator(j) ? j : m + nu + (j - m);
}

std::string ComponentLayout::label(int j) const {
    return is_actuator(j) ? "u" + std::to_string(j + 1)
                          : "y" + std::to_string(j - m + 1);
}

AttackStructure build_attack_structure(const LtiSystem& sys, const ComponentLayout& layout) {
    if (layout.m != sys.m || layout.p != sys.p)
        throw std::invalid_argument("build_attack_structure: layout does not match system");
    AttackStructure s;
    s.Ba = MatrixXd::Zero(sys.n, sys.m + sys.p);
    s.Ba.leftCols(sys.m) = sys.B;
    s.Da = MatrixXd::Zero(sys.p, sys.m + sys.p);
    const int q = layout.unprotected();
    s.Da.block(0, sys.m + layout.nu, q, q) = MatrixXd::Identity(q, q);
    return s;
}

std::vector<int> AttackSignal::support(const ComponentLayout& layout, double rel_tol) const {
    std::vector<int> out;
    if (a.size() == 0) return out;
    const double thresh = rel_tol * a.cwiseAbs().maxCoeff();
    for (int j = 0; j < layout.component_count(); ++j) {
        if (a.row(layout.attack_column(j)).cwiseAbs().maxCoeff() > thresh) out.push_back(j);
    }
    return out;
}

Trajectory simulate(const LtiSystem& sys, const VectorXd& x0, const MatrixXd& u,
                    MatrixXd* states) {
    if (x0.size() != sys.n)
        throw std::invalid_argument("simulate: x0 has length " + std::to_string(x0.size()) +
                                    ", expected n=" + std::to_string(sys.n));
    if (u.rows() != sys.m)
        throw std::invalid_argument("simulate: input has " + std::to_string(u.rows()) +
                                    " rows, expected m=" + std::to_string(sys.m));
    const int N = static_cast<int>(u.cols());
    Trajectory traj;
    traj.u = u;
    traj.y.resize(sys.p, N);
    if (states) states->resize(sys.n, N);
    VectorXd x = x0;
    for (int k = 0; k < N; ++k) {
        if (states) states->col(k) = x;
        traj.y.col(k) = sys.C * x;
        x = sys.A * x + sys.B * u.col(k);
    }
    return traj;
}

MatrixXd simulate_attacked(const LtiSystem& sys, const ComponentLayout& layout,
                           const VectorXd& x0, const MatrixXd& u, const AttackSignal& a) {
    if (x0.size() != sys.n)
        throw std::invalid_argument("simulate_attacked: x0 has length " +
                                    std::to_string(x0.size()) + ", expected n=" +
                                    std::to_string(sys.n));
    if (u.rows() != sys.m && u.size() != 0)
        throw std::invalid_argument("simulate_attacked: input row count mismatch");
    if (a.a.rows() != sys.m + sys.p)
        throw std::invalid_argument("simulate_attacked: attack must have m+p rows");
    if (a.length() < static_cast<int>(u.cols()))
        throw std::invalid_argument("simulate_attacked: attack shorter than input");
    if (layout.nu > 0) {
        const auto protected_rows = a.a.middleRows(sys.m, layout.nu);
        if (protected_rows.size() > 0 && protected_rows.cwiseAbs().maxCoeff() > 0.0)
            throw std::invalid_argument(
                "simulate_attacked: nonzero attack entries on protected sensor channels");
    }

    const AttackStructure as = build_attack_structure(sys, layout);
    const int K = a.length();
    MatrixXd y(sys.p, K);
    VectorXd x = x0;
    for (int k = 0; k < K; ++k) {
        VectorXd uk = VectorXd::Zero(sys.m);
        if (k < u.cols()) uk = u.col(k);
        y.col(k) = sys.C * x + as.Da * a.a.col(k);
        x = sys.A * x + sys.B * uk + as.Ba * a.a.col(k);
    }
    return y;
}

std::pair<LtiSystem, ComponentLayout> build_platoon(const PlatoonConfig& cfg) {
    if (cfg.n_vehicles < 1) throw std::invalid_argument("build_platoon: n_vehicles >= 1");
    if (cfg.Ts <= 0) throw std::invalid_argument("build_platoon: Ts > 0");
    const int nv = cfg.n_vehicles;
    const int n = 2 * nv, m = nv, p = 2 * nv;

    MatrixXd A = MatrixXd::Identity(n, n);
    MatrixXd B = MatrixXd::Zero(n, m);
    for (int l = 0; l < nv; ++l) {
        A(2 * l, 2 * l + 1) = cfg.Ts;
        B(2 * l + 1, l) = cfg.Ts;
    }

    MatrixXd C = MatrixXd::Zero(p, n);
    for (int l = 0; l < nv; ++l) {
        C(2 * l, 2 * l) = 1.0;  // y_{2l-1}: position of vehicle l
        if (l == 0) {
            C(1, 1) = 1.0;  // y_2: velocity of the first vehicle
        } else {
            // y_{2l}: relative position between vehicles l-1 and l
            C(2 * l + 1, 2 * (l - 1)) = 1.0;
            C(2 * l + 1, 2 * l) = -1.0;
        }
    }
    return {LtiSystem::create(std::move(A), std::move(B), std::move(C)),
            ComponentLayout(m, p, 0)};
}

Trajectory generate_excitation(const LtiSystem& sys, const PlatoonConfig& cfg, int pe_order) {
    const int nv = cfg.n_vehicles;
    if (sys.n != 2 * nv || sys.m != nv)
        throw std::invalid_argument("generate_excitation: system is not the configured platoon");
    if (cfg.N < 1) throw std::invalid_argument("generate_excitation: N >= 1");

    constexpr int kMaxRetries = 10;
    const double noise_sd = std::sqrt(cfg.noise_var);
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ULL * attempt);
        std::normal_distribution<double> gauss(0.0, 1.0);

        Trajectory traj;
        traj.u.resize(sys.m, cfg.N);
        traj.y.resize(sys.p, cfg.N);

        // Start on the reference so positions stay bounded around it.
        VectorXd x(sys.n);
        for (int l = 0; l < nv; ++l) {
            x(2 * l) = -cfg.spacing * l;
            x(2 * l + 1) = cfg.speed;
        }
        for (int k = 0; k < cfg.N; ++k) {
            traj.y.col(k) = sys.C * x;
            for (int l = 0; l < nv; ++l) {
                const double p_ref = cfg.speed * cfg.Ts * k - cfg.spacing * l;
                const double err = (p_ref - x(2 * l)) + (cfg.speed - x(2 * l + 1));
                traj.u(l, k) = cfg.Kp * err + noise_sd * gauss(rng);
            }
            x = sys.A * x + sys.B * traj.u.col(k);
        }

        if (is_persistently_exciting(traj.u, pe_order).exciting) return traj;
    }
    throw std::runtime_error(
        "generate_excitation: input not persistently exciting of order " +
        std::to_string(pe_order) + " after " + std::to_string(kMaxRetries) +
        " seeds; increase N");
}

LtiSystem random_system(int n, int m, int p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto randn = [&](int r, int c) {
        MatrixXd out(r, c);
        for (int j = 0; j < c; ++j)
            for (int i = 0; i < r; ++i) out(i, j) = gauss(rng);
        return out;
    };

    for (int attempt = 0; attempt < 50; ++attempt) {
        MatrixXd A = randn(n, n);
        const double radius = A.eigenvalues().cwiseAbs().maxCoeff();
        if (radius > 0) A *= 0.8 / radius;
        MatrixXd B = randn(n, m);
        MatrixXd C = randn(p, n);
        LtiSystem sys = LtiSystem::create(A, B, C);
        if (sys.controllable && sys.observable) return sys;
    }
    throw std::runtime_error("random_system: no controllable/observable draw found");
}

Trajectory generate_random_excitation(const LtiSystem& sys, int N, std::uint64_t seed,
                                      int pe_order) {
    constexpr int kMaxRetries = 10;
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * attempt);
        std::normal_distribution<double> gauss(0.0, 1.0);
        MatrixXd u(sys.m, N);
        for (int k = 0; k < N; ++k)
            for (int i = 0; i < sys.m; ++i) u(i, k) = gauss(rng);
        if (!is_persistently_exciting(u, pe_order).exciting) continue;
        return simulate(sys, VectorXd::Zero(sys.n), u);
    }
    throw std::runtime_error(
        "generate_random_excitation: input not persistently exciting; increase N");
}

}  // namespace secidx
