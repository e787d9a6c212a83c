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
#include "secidx/hankel.hpp"

#include <stdexcept>

#include "secidx/numerics.hpp"

namespace secidx {

namespace {

/// Rows of channel ch (0-based) out of every block row of a time-major,
/// channel-minor block matrix with blocks of size block_size.
MatrixXd channel_rows(const MatrixXd& m, int block_size, int ch) {
    const int blocks = static_cast<int>(m.rows()) / block_size;
    MatrixXd out(blocks, m.cols());
    for (int t = 0; t < blocks; ++t) out.row(t) = m.row(t * block_size + ch);
    return out;
}

}  // namespace

MatrixXd hankel_matrix(const MatrixXd& signal, int depth) {
    const int N = static_cast<int>(signal.cols());
    const int r = static_cast<int>(signal.rows());
    if (depth < 1 || depth > N)
        throw std::invalid_argument("hankel_matrix: depth must be in [1, length], got depth=" +
                                    std::to_string(depth) + ", length=" + std::to_string(N));
    const int cols = N - depth + 1;
    MatrixXd h(r * depth, cols);
    for (int i = 0; i < depth; ++i)
        h.middleRows(i * r, r) = signal.middleCols(i, cols);
    return h;
}

MatrixXd head_blocks(const MatrixXd& m, int block_rows, int block_size) {
    if (block_rows < 2) throw std::invalid_argument("head_blocks: need at least 2 block rows");
    if (m.rows() != static_cast<Eigen::Index>(block_rows) * block_size)
        throw std::invalid_argument("head_blocks: row count is not block_rows * block_size");
    return m.topRows((block_rows - 1) * block_size);
}

MatrixXd tail_blocks(const MatrixXd& m, int block_rows, int block_size) {
    if (block_rows < 2) throw std::invalid_argument("tail_blocks: need at least 2 block rows");
    if (m.rows() != static_cast<Eigen::Index>(block_rows) * block_size)
        throw std::invalid_argument("tail_blocks: row count is not block_rows * block_size");
    return m.bottomRows((block_rows - 1) * block_size);
}

PeResult is_persistently_exciting(const MatrixXd& u, int order) {
    const int N = static_cast<int>(u.cols());
    if (order < 1) throw std::invalid_argument("is_persistently_exciting: order must be >= 1");
    PeResult res;
    res.needed_rank = static_cast<int>(u.rows()) * order;
    // Data shorter than the window cannot be exciting of this order.
    if (order > N) return res;
    const MatrixXd h = hankel_matrix(u, order);
    if (h.cols() < res.needed_rank) {
        res.rank = numerical_rank(h);
        return res;
    }
    res.rank = numerical_rank(h);
    res.exciting = res.rank == res.needed_rank;
    return res;
}

MatrixXd HankelBlocks::past() const {
    MatrixXd out(Up.rows() + Yp.rows(), d);
    out << Up, Yp;
    return out;
}

MatrixXd HankelBlocks::full_stack() const {
    MatrixXd out(Up.rows() + Uf.rows() + Yp.rows() + Yf.rows(), d);
    out << Up, Uf, Yp, Yf;
    return out;
}

HankelBlocks build_blocks(const Trajectory& traj, int L, const ComponentLayout& layout) {
    const int N = traj.length();
    if (L < 1) throw std::invalid_argument("build_blocks: L >= 1");
    if (N < 2 * L)
        throw std::invalid_argument("build_blocks: need N >= 2L, got N=" + std::to_string(N) +
                                    ", minimum " + std::to_string(2 * L));
    if (traj.u.rows() != layout.m || traj.y.rows() != layout.p)
        throw std::invalid_argument("build_blocks: trajectory dimensions do not match layout");

    HankelBlocks b;
    b.L = L;
    b.d = N - 2 * L + 1;
    b.layout = layout;

    const MatrixXd hu = hankel_matrix(traj.u, 2 * L);
    const MatrixXd hy = hankel_matrix(traj.y, 2 * L);
    b.Up = hu.topRows(layout.m * L);
    b.Uf = hu.bottomRows(layout.m * L);
    b.Yp = hy.topRows(layout.p * L);
    b.Yf = hy.bottomRows(layout.p * L);

    const int m = layout.m, p = layout.p;
    b.H.resize((m + p) * (2 * L - 1), b.d);
    b.T.resize((m + p) * (2 * L - 1), b.d);
    if (L == 1) {
        // head/tail of single-block matrices degenerate to the other partition
        b.H << b.Up, b.Yp;
        b.T << b.Uf, b.Yf;
    } else {
        b.H << b.Up, head_blocks(b.Uf, L, m), b.Yp, head_blocks(b.Yf, L, p);
        b.T << tail_blocks(b.Up, L, m), b.Uf, tail_blocks(b.Yp, L, p), b.Yf;
    }

    // Consecutive windows of one trajectory share 2L-1 blocks.
    for (int k = 0; k + 1 < b.d; ++k) {
        if ((b.H.col(k + 1) - b.T.col(k)).cwiseAbs().maxCoeff() > 0.0)
            throw std::logic_error("build_blocks: shift identity failed on raw data");
    }
    return b;
}

MatrixXd selector(const HankelBlocks& blocks, int j) {
    const auto& lay = blocks.layout;
    if (j < 0 || j >= lay.component_count())
        throw std::out_of_range("selector: component " + std::to_string(j) +
                                " outside I (protected sensors are not selectable)");
    if (lay.is_actuator(j)) return channel_rows(blocks.Uf, lay.m, j);
    return channel_rows(blocks.Yf, lay.p, lay.sensor_of(j));
}

MatrixXd protected_rows(const HankelBlocks& blocks) {
    const auto& lay = blocks.layout;
    MatrixXd out(lay.nu * blocks.L, blocks.d);
    for (int s = 0; s < lay.nu; ++s)
        out.middleRows(s * blocks.L, blocks.L) =
            channel_rows(blocks.Yf, lay.p, lay.unprotected() + s);
    return out;
}

}  // namespace secidx
