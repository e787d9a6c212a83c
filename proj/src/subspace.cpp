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
#include "secidx/subspace.hpp"

#include <stdexcept>

namespace secidx {

Subspace::Subspace(Eigen::Index ambient, MatrixXd basis)
    : ambient_(ambient), basis_(std::move(basis)) {
    if (basis_.size() == 0) basis_.resize(ambient_, basis_.cols() == 0 ? 0 : basis_.cols());
    if (basis_.rows() != ambient_)
        throw std::invalid_argument("Subspace: basis rows do not match ambient dimension");
}

Subspace Subspace::zero(Eigen::Index ambient) {
    return Subspace(ambient, MatrixXd(ambient, 0));
}

Subspace Subspace::full(Eigen::Index ambient) {
    return Subspace(ambient, MatrixXd::Identity(ambient, ambient));
}

Subspace Subspace::from_span(const MatrixXd& columns) {
    return Subspace(columns.rows(), orthonormal_image(columns));
}

Subspace kernel(const MatrixXd& m, double scale_floor) {
    return Subspace(m.cols(), null_space_basis(m, scale_floor));
}

Subspace intersect(const Subspace& v, const Subspace& w) {
    if (v.ambient() != w.ambient())
        throw std::invalid_argument("intersect: ambient dimensions differ");
    if (v.dim() == 0 || w.dim() == 0) return Subspace::zero(v.ambient());
    // x = V a = W b  <=>  (a; b) in ker [V, -W]; the intersection is V a.
    MatrixXd stacked(v.ambient(), v.dim() + w.dim());
    stacked << v.basis(), -w.basis();
    const MatrixXd n = null_space_basis(stacked);
    if (n.cols() == 0) return Subspace::zero(v.ambient());
    return Subspace::from_span(v.basis() * n.topRows(v.dim()));
}

Subspace sum(const Subspace& v, const Subspace& w) {
    if (v.ambient() != w.ambient())
        throw std::invalid_argument("sum: ambient dimensions differ");
    if (v.dim() == 0) return w;
    if (w.dim() == 0) return v;
    MatrixXd stacked(v.ambient(), v.dim() + w.dim());
    stacked << v.basis(), w.basis();
    return Subspace::from_span(stacked);
}

namespace {

// { g : lhs g in Im(img) } computed as the kernel of lhs deflated by an
// orthonormal basis of Im(img). A single rank decision at the scale of lhs;
// projecting the null space of the stacked matrix [lhs, -img] instead would
// re-rank its round-off-level g-components against a unit-scale tolerance
// and admit spurious directions.
Subspace relation_preimage(const MatrixXd& lhs, const MatrixXd& img) {
    const MatrixXd b = orthonormal_image(img);
    if (b.cols() == 0) return kernel(lhs);
    // The rank cut is floored at the scale of lhs: when the deflation leaves
    // only round-off (the preimage is everything) the residue must rank zero.
    const double scale = lhs.cwiseAbs().rowwise().sum().maxCoeff();
    return kernel(lhs - b * (b.transpose() * lhs), scale);
}

}  // namespace

Subspace pre_image(const Subspace& v, const MatrixXd& h, const MatrixXd& t) {
    if (h.cols() != v.ambient() || t.cols() != v.ambient() || h.rows() != t.rows())
        throw std::invalid_argument("pre_image: H/T shapes incompatible with subspace");
    if (v.dim() == 0) return kernel(t);
    return relation_preimage(t, h * v.basis());
}

Subspace post_image(const Subspace& v, const MatrixXd& h, const MatrixXd& t) {
    if (h.cols() != v.ambient() || t.cols() != v.ambient() || h.rows() != t.rows())
        throw std::invalid_argument("post_image: H/T shapes incompatible with subspace");
    if (v.dim() == 0) return kernel(h);
    return relation_preimage(h, t * v.basis());
}

bool contains(const Subspace& v, const Subspace& w, double tol) {
    if (v.ambient() != w.ambient())
        throw std::invalid_argument("contains: ambient dimensions differ");
    if (w.dim() == 0) return true;
    if (w.dim() > v.dim()) return false;
    const MatrixXd residual = w.basis() - v.basis() * (v.basis().transpose() * w.basis());
    return residual.colwise().norm().maxCoeff() <= tol;
}

int mapped_dim(const MatrixXd& l, const Subspace& v) {
    if (l.cols() != v.ambient())
        throw std::invalid_argument("mapped_dim: column count does not match ambient");
    if (v.dim() == 0 || l.rows() == 0) return 0;
    // Threshold against the scale of L itself so that L * basis ~ 0 ranks as
    // zero instead of ranking round-off noise.
    const double scale = l.cwiseAbs().rowwise().sum().maxCoeff();
    return numerical_rank(l * v.basis(), scale);
}

bool in_kernel(const MatrixXd& l, const Subspace& v) {
    return mapped_dim(l, v) == 0;
}

}  // namespace secidx
