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
#ifndef SECIDX_SUBSPACE_HPP
#define SECIDX_SUBSPACE_HPP

#include <Eigen/Dense>

#include "secidx/numerics.hpp"

namespace secidx {

/// Linear subspace of R^ambient, carried as an orthonormal basis.
/// The zero subspace has an empty basis; the full space an identity basis.
class Subspace {
public:
    Subspace() = default;
    Subspace(Eigen::Index ambient, MatrixXd basis);

    static Subspace zero(Eigen::Index ambient);
    static Subspace full(Eigen::Index ambient);
    /// Span of arbitrary (not necessarily independent) columns.
    static Subspace from_span(const MatrixXd& columns);

    Eigen::Index ambient() const { return ambient_; }
    Eigen::Index dim() const { return basis_.cols(); }
    const MatrixXd& basis() const { return basis_; }

private:
    Eigen::Index ambient_ = 0;
    MatrixXd basis_;  // ambient x dim, orthonormal columns
};

/// Null space of M as a subspace of R^{M.cols()}. A 0 x d matrix (no
/// constraints) yields the full space.
Subspace kernel(const MatrixXd& m, double scale_floor = 0.0);

Subspace intersect(const Subspace& v, const Subspace& w);
Subspace sum(const Subspace& v, const Subspace& w);

/// Pre(V) = { g : exists v in V with H v = T g }.
Subspace pre_image(const Subspace& v, const MatrixXd& h, const MatrixXd& t);
/// Post(V) = { v : exists g in V with H v = T g }.
Subspace post_image(const Subspace& v, const MatrixXd& h, const MatrixXd& t);

/// Tolerance-governed basis containment: every basis vector of w lies in v
/// up to the given residual norm.
bool contains(const Subspace& v, const Subspace& w, double tol = 1e-8);

/// Rank of L restricted to V, i.e. dim(L V).
int mapped_dim(const MatrixXd& l, const Subspace& v);
/// True iff L vanishes on V.
bool in_kernel(const MatrixXd& l, const Subspace& v);

}  // namespace secidx

#endif
