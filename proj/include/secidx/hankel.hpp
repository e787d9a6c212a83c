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
#ifndef SECIDX_HANKEL_HPP
#define SECIDX_HANKEL_HPP

#include <Eigen/Dense>

#include "secidx/linsys.hpp"

namespace secidx {

/// Block Hankel matrix of the given depth: block (i, k) = signal(k + i).
/// signal is r x N (columns are samples); result is r*depth x (N-depth+1).
MatrixXd hankel_matrix(const MatrixXd& signal, int depth);

/// Drop the last (head) or first (tail) block row of a block matrix.
MatrixXd head_blocks(const MatrixXd& m, int block_rows, int block_size);
MatrixXd tail_blocks(const MatrixXd& m, int block_rows, int block_size);

struct PeResult {
    bool exciting = false;
    int rank = 0;
    int needed_rank = 0;
};

/// Persistency of excitation of the given order: the depth-q Hankel matrix of
/// the input has full row rank.
PeResult is_persistently_exciting(const MatrixXd& u, int order);

/// Past/future Hankel partition plus the shift-consistency matrices.
struct HankelBlocks {
    MatrixXd Up, Uf;  // mL x d each
    MatrixXd Yp, Yf;  // pL x d each
    MatrixXd H, T;    // (m+p)(2L-1) x d
    int L = 0;
    int d = 0;
    ComponentLayout layout;

    /// [Up; Yp], the anchor rows of the initial window.
    MatrixXd past() const;
    /// [Up; Uf; Yp; Yf], the full depth-2L data matrix.
    MatrixXd full_stack() const;
};

HankelBlocks build_blocks(const Trajectory& traj, int L, const ComponentLayout& layout);

/// L^f_j: the future rows of component j (an actuator channel of Uf or an
/// unprotected sensor channel of Yf). Rejects protected sensors.
MatrixXd selector(const HankelBlocks& blocks, int j);

/// Y^f_S, the stacked future rows of all protected sensors (0 x d when empty).
MatrixXd protected_rows(const HankelBlocks& blocks);

}  // namespace secidx

#endif
