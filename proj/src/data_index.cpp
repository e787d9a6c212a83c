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
#include "secidx/data_index.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "secidx/subset_search.hpp"

namespace secidx {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every constraint matrix of the V/R recursions (selectors, protected rows,
// the anchor [Up; Yp], and both H and T) is a row selection of the full data
// stack D = [Up; Uf; Yp; Yf], so ker D is contained in every kernel, is
// invariant under Pre/Post, and survives every intersection and sum. All
// iterates therefore split as Q * (reduced part) (+) ker D with Q an
// orthonormal basis of rowspace(D), and the recursions can run in the
// rank(D)-dimensional reduced coordinates. Ambient results are recovered by
// appending the kernel basis.
struct ReducedEngine {
    const HankelBlocks& blocks;
    int r0 = 0;  // rank of the full data stack
    int k0 = 0;  // dim of its kernel
    MatrixXd Q;   // d x r0, orthonormal rowspace basis
    MatrixXd Kb;  // d x k0, orthonormal kernel basis
    MatrixXd Hr, Tr, past_r, prot_r;
    std::vector<MatrixXd> sel_r;  // per component, reduced L^f_j

    explicit ReducedEngine(const HankelBlocks& b) : blocks(b) {
        const MatrixXd full = b.full_stack();
        const SvdResult s = svd(full, false, true);
        const double tol =
            rank_tolerance(full.rows(), full.cols(), s.singular_values.size() ? s.singular_values(0) : 0.0);
        for (Eigen::Index i = 0; i < s.singular_values.size(); ++i)
            if (s.singular_values(i) > tol) ++r0;
        k0 = b.d - r0;
        Q = s.v.leftCols(r0);
        Kb = s.v.rightCols(k0);

        Hr = b.H * Q;
        Tr = b.T * Q;
        past_r = b.past() * Q;
        prot_r = protected_rows(b) * Q;
        const int n_comp = b.layout.component_count();
        sel_r.reserve(n_comp);
        for (int j = 0; j < n_comp; ++j) sel_r.push_back(selector(b, j) * Q);
    }

    Subspace to_ambient(const Subspace& red) const {
        MatrixXd basis(blocks.d, red.dim() + k0);
        basis.leftCols(red.dim()) = Q * red.basis();
        basis.rightCols(k0) = Kb;
        return Subspace(blocks.d, std::move(basis));
    }

    Subspace v0_red(const GammaSets& g) const {
        Eigen::Index rows = prot_r.rows();
        for (int j : g.gu_bar) rows += sel_r[j].rows();
        for (int l : g.gy_bar) rows += sel_r[blocks.layout.m + l].rows();
        MatrixXd stacked(rows, r0);
        Eigen::Index at = 0;
        stacked.topRows(prot_r.rows()) = prot_r;
        at += prot_r.rows();
        for (int j : g.gu_bar) {
            stacked.middleRows(at, sel_r[j].rows()) = sel_r[j];
            at += sel_r[j].rows();
        }
        for (int l : g.gy_bar) {
            const MatrixXd& rows_l = sel_r[blocks.layout.m + l];
            stacked.middleRows(at, rows_l.rows()) = rows_l;
            at += rows_l.rows();
        }
        return kernel(stacked);
    }

    // V_{t+1} = V_0 /\ Pre(V_t); the iterates are nested, so equal successive
    // dimensions certify the fixed point (the stopping check is itself the
    // confirmation iteration).
    std::pair<Subspace, FixedPointTrace> v_inf_red(const GammaSets& g) const {
        FixedPointTrace trace;
        const Subspace v0 = v0_red(g);
        Subspace cur = v0;
        trace.dims.push_back(static_cast<int>(cur.dim()) + k0);
        for (int t = 0; t < blocks.d; ++t) {
            Subspace next = intersect(v0, pre_image(cur, Hr, Tr));
            trace.dims.push_back(static_cast<int>(next.dim()) + k0);
            const bool fixed = next.dim() == cur.dim();
            cur = std::move(next);
            if (fixed) {
                trace.steps_to_converge = t;
                return {cur, trace};
            }
        }
        trace.steps_to_converge = blocks.d;
        return {cur, trace};
    }

    // R_{t+1} = V_inf /\ (R_t + Post(R_t)), ascending and bounded by V_inf.
    std::pair<Subspace, FixedPointTrace> r_inf_red(const GammaSets&, const Subspace& vinf) const {
        FixedPointTrace trace;
        Subspace cur = intersect(vinf, kernel(past_r));
        trace.dims.push_back(static_cast<int>(cur.dim()) + k0);
        for (int t = 0; t < blocks.d; ++t) {
            Subspace next = intersect(vinf, sum(cur, post_image(cur, Hr, Tr)));
            trace.dims.push_back(static_cast<int>(next.dim()) + k0);
            const bool fixed = next.dim() == cur.dim();
            cur = std::move(next);
            if (fixed) {
                trace.steps_to_converge = t;
                return {cur, trace};
            }
        }
        trace.steps_to_converge = blocks.d;
        return {cur, trace};
    }

    int s_dim(const GammaSets& g, int i, FixedPointTrace* r_trace = nullptr) const {
        const auto [vinf, vt] = v_inf_red(g);
        // R_inf is inside V_inf, so a component invisible on V_inf is
        // invisible on R_inf; skip the ascending recursion in that case.
        if (mapped_dim(sel_r[i], vinf) == 0) {
            if (r_trace) *r_trace = FixedPointTrace{{static_cast<int>(k0)}, 0};
            return 0;
        }
        const auto [rinf, rt] = r_inf_red(g, vinf);
        if (r_trace) *r_trace = rt;
        return mapped_dim(sel_r[i], rinf);
    }

    bool feasible(const GammaSets& g, int i) const { return s_dim(g, i) >= 1; }
};

void require_member(const GammaSets& g, int i) {
    if (!std::binary_search(g.gamma.begin(), g.gamma.end(), i))
        throw std::invalid_argument("data_index: component " + std::to_string(i) +
                                    " is not a member of Gamma");
}

// Drop the last block row of an upper-trapezoidal compression: kernel(W)
// equals kernel(R) for any QR factorization W = QR, so tall constraint
// blocks shrink to at most cols rows without changing the solution set.
MatrixXd qr_compress(const MatrixXd& w) {
    if (w.rows() <= w.cols()) return w;
    Eigen::HouseholderQR<MatrixXd> qr(w);
    return MatrixXd(qr.matrixQR().topRows(w.cols()).triangularView<Eigen::Upper>());
}

// One-shot witness solve. The whole horizon's constraints — the zero-past
// anchor on g(0), the shift chain Hg(k+1) = Tg(k), and membership of every
// g(k) in V_inf — form one linear system in the V_inf coordinates b(k).
// Its null space contains every admissible chain; the chain built by
// Lemma 1's argument lives there whenever the horizon reaches the
// R-convergence step, so maximizing the target component's activity over
// the null space by one singular-vector pick is complete. (Backtracking a
// single vector through the R-iterates can fail once the union of Eq. (16)
// is realized as a subspace sum: an iterate member may split across R_t and
// Post(R_t) with neither part individually active.)
WitnessSequence synthesize_reduced(const ReducedEngine& eng, const GammaSets& g, int i,
                                   int horizon) {
    require_member(g, i);
    const auto& lay = eng.blocks.layout;
    const auto [vinf, vtrace] = eng.v_inf_red(g);
    if (mapped_dim(eng.sel_r[i], vinf) == 0)
        throw std::invalid_argument("witness synthesis requires a feasible (Gamma, i) pair");
    const auto [rinf, rtrace] = eng.r_inf_red(g, vinf);
    if (mapped_dim(eng.sel_r[i], rinf) == 0)
        throw std::invalid_argument("witness synthesis requires a feasible (Gamma, i) pair");

    if (horizon >= 0 && horizon < rtrace.steps_to_converge)
        throw std::invalid_argument("witness horizon shorter than the R-convergence step");
    const int K = horizon >= 0 ? horizon : rtrace.steps_to_converge + 2 * eng.blocks.L;

    const MatrixXd& Vb = vinf.basis();  // r0 x nv
    const Eigen::Index nv = Vb.cols();
    const MatrixXd anchor = qr_compress(eng.past_r * Vb);
    MatrixXd step(eng.Hr.rows(), 2 * nv);
    step.leftCols(nv) = -(eng.Tr * Vb);
    step.rightCols(nv) = eng.Hr * Vb;
    const MatrixXd stepc = qr_compress(step);

    MatrixXd m = MatrixXd::Zero(anchor.rows() + K * stepc.rows(), nv * (K + 1));
    m.block(0, 0, anchor.rows(), nv) = anchor;
    for (int k = 0; k < K; ++k)
        m.block(anchor.rows() + k * stepc.rows(), k * nv, stepc.rows(), 2 * nv) = stepc;

    const MatrixXd nb = null_space_basis(m);
    const MatrixXd sel_v = eng.sel_r[i] * Vb;
    MatrixXd activity(sel_v.rows() * (K + 1), nb.cols());
    for (int k = 0; k <= K; ++k)
        activity.middleRows(k * sel_v.rows(), sel_v.rows()) = sel_v * nb.middleRows(k * nv, nv);

    const SvdResult act = svd(activity, false, false);
    if (nb.cols() == 0 || act.singular_values(0) < 1e-10)
        throw std::runtime_error("witness synthesis found no active chain at this horizon");
    const VectorXd x = nb * act.v.col(0);

    WitnessSequence w;
    w.gamma = g;
    w.component = i;
    w.g.resize(eng.blocks.d, K + 1);
    w.u.resize(lay.m, K + 1);
    w.y.resize(lay.p, K + 1);
    for (int k = 0; k <= K; ++k) {
        const VectorXd gk = eng.Q * (Vb * x.segment(k * nv, nv));
        w.g.col(k) = gk;
        w.u.col(k) = eng.blocks.Uf.topRows(lay.m) * gk;
        w.y.col(k) = eng.blocks.Yf.topRows(lay.p) * gk;
    }

    // Components outside Gamma are zero up to round-off by the V_0
    // constraints; the attack keeps them (and the protected rows) exactly
    // zero so the support is structurally inside Gamma.
    w.attack.a = MatrixXd::Zero(lay.m + lay.p, K + 1);
    for (int j : g.gamma) {
        if (lay.is_actuator(j))
            w.attack.a.row(lay.attack_column(j)) = w.u.row(j);
        else
            w.attack.a.row(lay.attack_column(j)) = -w.y.row(lay.sensor_of(j));
    }
    const double amax = w.attack.a.cwiseAbs().maxCoeff();
    if (amax > 0.0) {
        w.attack.a /= amax;
        w.g /= amax;
        w.u /= amax;
        w.y /= amax;
    }
    return w;
}

}  // namespace

GammaSets GammaSets::make(std::vector<int> gamma, const ComponentLayout& layout) {
    std::sort(gamma.begin(), gamma.end());
    gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
    for (int j : gamma)
        if (j < 0 || j >= layout.component_count())
            throw std::out_of_range("GammaSets: component " + std::to_string(j) +
                                    " outside I");
    GammaSets out;
    out.gamma = std::move(gamma);
    for (int j = 0; j < layout.m; ++j)
        (std::binary_search(out.gamma.begin(), out.gamma.end(), j) ? out.gu : out.gu_bar)
            .push_back(j);
    for (int l = 0; l < layout.unprotected(); ++l)
        (std::binary_search(out.gamma.begin(), out.gamma.end(), layout.m + l) ? out.gy
                                                                              : out.gy_bar)
            .push_back(l);
    return out;
}

std::pair<Subspace, FixedPointTrace> v_infinity(const HankelBlocks& blocks,
                                                const GammaSets& gamma) {
    const ReducedEngine eng(blocks);
    auto [red, trace] = eng.v_inf_red(gamma);
    return {eng.to_ambient(red), trace};
}

std::pair<Subspace, FixedPointTrace> r_infinity(const HankelBlocks& blocks,
                                                const GammaSets& gamma, const Subspace& vinf) {
    if (vinf.ambient() != blocks.d)
        throw std::invalid_argument("r_infinity: V subspace has the wrong ambient dimension");
    const ReducedEngine eng(blocks);
    // The reduced coordinates of an ambient iterate are its projection onto
    // rowspace(D); the kernel part re-enters through to_ambient.
    const Subspace vred = Subspace::from_span(eng.Q.transpose() * vinf.basis());
    auto [red, trace] = eng.r_inf_red(gamma, vred);
    return {eng.to_ambient(red), trace};
}

bool data_feasible(const HankelBlocks& blocks, const GammaSets& gamma, int i) {
    require_member(gamma, i);
    return ReducedEngine(blocks).feasible(gamma, i);
}

IndexResult rho(const HankelBlocks& blocks, int i, int max_card, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    const ReducedEngine eng(blocks);
    const int n_comp = blocks.layout.component_count();
    if (i < 0 || i >= n_comp) throw std::out_of_range("rho: component outside I");
    const int cap = max_card < 0 ? n_comp : std::min(max_card, n_comp);

    IndexResult res;
    res.component = i;
    for (int q = 1; q <= cap; ++q) {
        auto hit = first_feasible_subset(n_comp, i, q, threads, [&](const std::vector<int>& s) {
            return eng.feasible(GammaSets::make(s, blocks.layout), i);
        });
        if (hit) {
            res.value = IndexValue::finite(q);
            res.witness_set = *hit;
            res.witness_attack =
                synthesize_reduced(eng, GammaSets::make(*hit, blocks.layout), i, -1).attack;
            res.elapsed_seconds = seconds_since(t0);
            return res;
        }
    }
    res.value = cap >= n_comp ? IndexValue::inf() : IndexValue::capped(cap);
    res.elapsed_seconds = seconds_since(t0);
    return res;
}

IndexResult rho_upper(const HankelBlocks& blocks, int i, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    const ReducedEngine eng(blocks);
    const int n_comp = blocks.layout.component_count();
    if (i < 0 || i >= n_comp) throw std::out_of_range("rho_upper: component outside I");

    IndexResult res;
    res.component = i;
    std::vector<int> gamma{i};
    while (true) {
        const GammaSets gs = GammaSets::make(gamma, blocks.layout);
        if (eng.s_dim(gs, i) >= 1) {
            res.value = IndexValue::finite(static_cast<int>(gamma.size()));
            res.witness_set = gs.gamma;
            res.witness_attack = synthesize_reduced(eng, gs, i, -1).attack;
            break;
        }
        if (static_cast<int>(gamma.size()) == n_comp) {
            res.value = IndexValue::inf();
            break;
        }
        std::vector<int> candidates;
        for (int j = 0; j < n_comp; ++j)
            if (!std::binary_search(gamma.begin(), gamma.end(), j) && j != i)
                candidates.push_back(j);
        std::vector<int> gains(candidates.size(), 0);
        parallel_for(static_cast<int>(candidates.size()), threads, [&](int idx) {
            std::vector<int> grown = gamma;
            grown.push_back(candidates[idx]);
            gains[idx] = eng.s_dim(GammaSets::make(grown, blocks.layout), i);
        });
        // Delta_j = s(gamma u {j}) - s(gamma) shares its argmax with
        // s(gamma u {j}). Early iterations usually tie at s = 0 across every
        // candidate (the gain landscape is flat until the last missing member
        // of a resolving set), so ties break to the largest component index:
        // sensors are preferred over actuators, which tends to complete the
        // local sensor group of the target instead of sweeping in unrelated
        // actuation channels.
        int best = 0;
        for (std::size_t idx = 1; idx < candidates.size(); ++idx)
            if (gains[idx] >= gains[best]) best = static_cast<int>(idx);
        gamma.push_back(candidates[best]);
        std::sort(gamma.begin(), gamma.end());
    }
    res.elapsed_seconds = seconds_since(t0);
    return res;
}

WitnessSequence synthesize_data_witness(const HankelBlocks& blocks, const GammaSets& gamma,
                                        int i, int horizon) {
    return synthesize_reduced(ReducedEngine(blocks), gamma, i, horizon);
}

}  // namespace secidx
