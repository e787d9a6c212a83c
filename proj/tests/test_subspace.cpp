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
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "secidx/numerics.hpp"
#include "secidx/subspace.hpp"

using namespace secidx;

namespace {

std::mt19937_64 rng(12345);

MatrixXd gaussian(int r, int c) {
    std::normal_distribution<double> nd;
    MatrixXd m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = nd(rng);
    return m;
}

Subspace random_subspace(int ambient, int dim) {
    return Subspace::from_span(gaussian(ambient, dim));
}

// Least-squares residual of "lhs x = rhs has a solution with x in V".
double solvability_residual(const MatrixXd& lhs, const Subspace& v, const VectorXd& rhs) {
    MatrixXd a = lhs * v.basis();
    VectorXd c = a.colPivHouseholderQr().solve(rhs);
    return (a * c - rhs).norm();
}

}  // namespace

TEST_CASE("numerical_rank recovers a planted rank") {
    for (int trial = 0; trial < 20; ++trial) {
        int r = 5 + trial % 7, c = 4 + trial % 9;
        int k = trial % (std::min(r, c) + 1);
        MatrixXd m = gaussian(r, k) * gaussian(k, c);
        CHECK(numerical_rank(m) == k);
    }
}

TEST_CASE("null_space_basis: orthonormal, annihilated, right dimension") {
    MatrixXd m = gaussian(4, 2) * gaussian(2, 7);  // rank 2 in R^7
    MatrixXd ns = null_space_basis(m);
    REQUIRE(ns.cols() == 5);
    CHECK((m * ns).norm() < 1e-10);
    CHECK((ns.transpose() * ns - MatrixXd::Identity(5, 5)).norm() < 1e-12);

    // No constraints: the whole space.
    CHECK(null_space_basis(MatrixXd(0, 6)).cols() == 6);
}

TEST_CASE("orthonormal_image spans exactly the column space") {
    MatrixXd m = gaussian(6, 3) * gaussian(3, 5);
    MatrixXd b = orthonormal_image(m);
    REQUIRE(b.cols() == 3);
    // Every column of m is reproduced by its projection onto Im(b).
    CHECK((m - b * (b.transpose() * m)).norm() < 1e-10);
}

TEST_CASE("Subspace constructors and kernel") {
    CHECK(Subspace::zero(5).dim() == 0);
    CHECK(Subspace::full(5).dim() == 5);
    CHECK(Subspace::from_span(gaussian(6, 9)).dim() == 6);

    Subspace k = kernel(gaussian(2, 5));
    CHECK(k.ambient() == 5);
    CHECK(k.dim() == 3);
    CHECK(kernel(MatrixXd(0, 4)).dim() == 4);
}

TEST_CASE("sum / intersect dimension identity on random pairs") {
    for (int trial = 0; trial < 25; ++trial) {
        int n = 6 + trial % 5;
        Subspace v = random_subspace(n, 1 + trial % 4);
        Subspace w = random_subspace(n, 1 + (trial * 7) % 4);
        Subspace s = sum(v, w);
        Subspace x = intersect(v, w);
        CHECK(s.dim() + x.dim() == v.dim() + w.dim());
        CHECK(contains(s, v));
        CHECK(contains(s, w));
        CHECK(contains(v, x));
        CHECK(contains(w, x));
    }
}

TEST_CASE("intersect: planted common vector is recovered") {
    VectorXd common = gaussian(8, 1);
    Subspace v = Subspace::from_span((MatrixXd(8, 3) << common, gaussian(8, 2)).finished());
    Subspace w = Subspace::from_span((MatrixXd(8, 3) << common, gaussian(8, 2)).finished());
    Subspace x = intersect(v, w);
    REQUIRE(x.dim() == 1);
    // The planted vector lies in the intersection.
    VectorXd cn = common.normalized();
    CHECK((cn - x.basis() * (x.basis().transpose() * cn)).norm() < 1e-9);
}

TEST_CASE("pre_image: definitional membership and completeness") {
    const int n = 9, rows = 5;
    MatrixXd h = gaussian(rows, n);
    MatrixXd t = gaussian(rows, n);
    Subspace v = random_subspace(n, 3);
    Subspace pre = pre_image(v, h, t);

    // Membership: for every basis vector g of Pre(V) there is v in V with
    // H v = T g (least-squares residual at round-off).
    for (int j = 0; j < pre.dim(); ++j)
        CHECK(solvability_residual(h, v, t * pre.basis().col(j)) < 1e-8);

    // Completeness: a g manufactured from some v in V belongs to Pre(V)
    // whenever T g = H v is solvable; build one via least squares.
    VectorXd vv = v.basis() * gaussian(3, 1);
    VectorXd g = t.colPivHouseholderQr().solve(h * vv);
    if ((t * g - h * vv).norm() < 1e-8) {
        VectorXd gn = g.normalized();
        CHECK((gn - pre.basis() * (pre.basis().transpose() * gn)).norm() < 1e-8);
    }

    // ker(T) is always inside Pre(V) (take v = 0).
    CHECK(contains(pre, kernel(t)));
}

TEST_CASE("pre_image / post_image: monotone under containment") {
    const int n = 8, rows = 6;
    MatrixXd h = gaussian(rows, n);
    MatrixXd t = gaussian(rows, n);
    MatrixXd big = gaussian(n, 4);
    Subspace w = Subspace::from_span(big);
    Subspace v = Subspace::from_span(big.leftCols(2));

    CHECK(contains(pre_image(w, h, t), pre_image(v, h, t)));
    CHECK(contains(post_image(w, h, t), post_image(v, h, t)));
}

TEST_CASE("post_image mirrors pre_image with the roles swapped") {
    const int n = 7, rows = 5;
    MatrixXd h = gaussian(rows, n);
    MatrixXd t = gaussian(rows, n);
    Subspace g = random_subspace(n, 3);
    Subspace post = post_image(g, h, t);
    // Every v in Post(G) admits g in G with H v = T g.
    for (int j = 0; j < post.dim(); ++j)
        CHECK(solvability_residual(t, g, h * post.basis().col(j)) < 1e-8);
}

TEST_CASE("contains / mapped_dim / in_kernel") {
    MatrixXd base = gaussian(9, 4);
    Subspace w = Subspace::from_span(base);
    Subspace v = Subspace::from_span(base.leftCols(2));
    CHECK(contains(w, v));
    CHECK_FALSE(contains(v, w));
    CHECK(contains(w, Subspace::zero(9)));

    MatrixXd l = gaussian(3, 9);
    CHECK(mapped_dim(l, w) == 3);  // generic full rank
    CHECK(mapped_dim(l, Subspace::zero(9)) == 0);
    CHECK(in_kernel(l, Subspace::zero(9)));

    // Plant a subspace inside ker(L).
    Subspace kv = Subspace::from_span(null_space_basis(l).leftCols(2));
    CHECK(in_kernel(l, kv));
    CHECK(mapped_dim(l, kv) == 0);
}

TEST_CASE("global rank scale round-trips and loosens decisions") {
    double old = global_rank_scale();
    set_global_rank_scale(2.5);
    CHECK(global_rank_scale() == doctest::Approx(2.5));
    set_global_rank_scale(old);
    CHECK(global_rank_scale() == doctest::Approx(old));
}

TEST_CASE("randomized subspace property sweep") {
    // Miniature of the acceptance property suite; kept here so unit runs
    // exercise the same identities quickly.
    for (int trial = 0; trial < 40; ++trial) {
        int n = 5 + trial % 6;
        Subspace v = random_subspace(n, trial % (n + 1));
        Subspace w = random_subspace(n, (trial * 3) % (n + 1));
        Subspace s = sum(v, w);
        Subspace x = intersect(v, w);
        CHECK(s.dim() + x.dim() == v.dim() + w.dim());
        CHECK(s.dim() <= n);
        CHECK(x.dim() <= std::min(v.dim(), w.dim()));
        CHECK(contains(s, v));
        CHECK(contains(v, x));
    }
}
