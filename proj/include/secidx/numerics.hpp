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
#ifndef SECIDX_NUMERICS_HPP
#define SECIDX_NUMERICS_HPP

#include <Eigen/Dense>
#include <functional>

namespace secidx {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Global multiplier applied to every rank threshold in the toolkit.
/// The base threshold is max(rows,cols) * machine_eps * sigma_max.
double global_rank_scale();
void set_global_rank_scale(double scale);

/// Rank threshold for a matrix with the given shape and largest singular value.
double rank_tolerance(Eigen::Index rows, Eigen::Index cols, double sigma_max);

struct SvdResult {
    VectorXd singular_values;  // length min(rows, cols)
    MatrixXd u;                // left vectors (thin or full, per request)
    MatrixXd v;                // right vectors as columns (full when requested)
};

/// Singular value decomposition via LAPACK dgesdd.
/// want_full_v requests all right singular vectors (needed for null spaces).
SvdResult svd(const MatrixXd& m, bool want_u, bool want_full_v);

VectorXd singular_values(const MatrixXd& m);

/// Numerical rank at the global tolerance. scale_floor, when positive, is an
/// additional lower bound on the sigma_max used for the threshold; it keeps
/// near-zero products (e.g. L * basis with L * basis ~ 0) at rank zero
/// instead of ranking their round-off noise.
int numerical_rank(const MatrixXd& m, double scale_floor = 0.0);

/// Orthonormal basis of the column space (rank-revealing).
MatrixXd orthonormal_image(const MatrixXd& m);

/// Orthonormal basis of the null space. An empty (0 x n) matrix has the full
/// space as its kernel.
MatrixXd null_space_basis(const MatrixXd& m, double scale_floor = 0.0);

/// Chunked parallel loop with deterministic work assignment.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace secidx

#endif
