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
#include "secidx/numerics.hpp"

#include <lapacke.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace secidx {

namespace {
std::atomic<double> g_rank_scale{1.0};
}

double global_rank_scale() { return g_rank_scale.load(); }
void set_global_rank_scale(double scale) { g_rank_scale.store(scale); }

double rank_tolerance(Eigen::Index rows, Eigen::Index cols, double sigma_max) {
    const double eps = std::numeric_limits<double>::epsilon();
    // Relative floor of 1e-9: bases produced by chained subspace operations
    // carry directional noise a few orders above machine precision (inherited
    // through deflations of ill-conditioned data matrices), so a pure
    // eps-level threshold would rank that noise. Genuine rank gaps in this
    // domain sit many orders higher.
    const double rel = std::max(static_cast<double>(std::max(rows, cols)) * eps, 1e-9);
    return rel * sigma_max * global_rank_scale();
}

SvdResult svd(const MatrixXd& m, bool want_u, bool want_full_v) {
    const lapack_int rows = static_cast<lapack_int>(m.rows());
    const lapack_int cols = static_cast<lapack_int>(m.cols());
    const lapack_int k = std::min(rows, cols);

    SvdResult out;
    out.singular_values.resize(k);
    if (rows == 0 || cols == 0) {
        if (want_u) out.u.resize(rows, 0);
        if (want_full_v) out.v = MatrixXd::Identity(cols, cols);
        return out;
    }

    // jobz 'S' gives thin factors; when rows < cols the full V requires 'A'.
    const bool need_full = want_full_v && rows < cols;
    const char jobz = need_full ? 'A' : 'S';

    MatrixXd a = m;  // dgesdd destroys its input
    MatrixXd u(rows, need_full ? rows : k);
    MatrixXd vt(want_full_v ? cols : k, cols);
    if (!want_full_v) vt.resize(k, cols);

    lapack_int info = LAPACKE_dgesdd(
        LAPACK_COL_MAJOR, jobz, rows, cols, a.data(), rows,
        out.singular_values.data(), u.data(), rows, vt.data(),
        static_cast<lapack_int>(vt.rows()));
    // dgesdd occasionally fails outright, and on some near-square inputs it
    // reports success while writing non-finite singular vectors; fall back to
    // the slower QR-based dgesvd in either case.
    if (info != 0 || !out.singular_values.allFinite() || !u.allFinite() ||
        !vt.allFinite()) {
        a = m;
        VectorXd superb(std::max<lapack_int>(1, k - 1));
        info = LAPACKE_dgesvd(LAPACK_COL_MAJOR, jobz, jobz, rows, cols, a.data(),
                              rows, out.singular_values.data(), u.data(), rows,
                              vt.data(), static_cast<lapack_int>(vt.rows()),
                              superb.data());
        if (info != 0) throw std::runtime_error("SVD failed to converge");
        if (!out.singular_values.allFinite() || !u.allFinite() || !vt.allFinite())
            throw std::runtime_error("SVD produced non-finite factors");
    }

    if (want_u) out.u = u.leftCols(k);
    out.v = vt.transpose();
    return out;
}

VectorXd singular_values(const MatrixXd& m) {
    if (m.rows() == 0 || m.cols() == 0) return VectorXd();
    return svd(m, false, false).singular_values;
}

int numerical_rank(const MatrixXd& m, double scale_floor) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    const VectorXd sv = singular_values(m);
    const double scale = std::max(sv(0), scale_floor);
    const double tol = rank_tolerance(m.rows(), m.cols(), scale);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++r;
    return r;
}

MatrixXd orthonormal_image(const MatrixXd& m) {
    if (m.rows() == 0 || m.cols() == 0) return MatrixXd(m.rows(), 0);
    SvdResult s = svd(m, true, false);
    const double tol = rank_tolerance(m.rows(), m.cols(), s.singular_values(0));
    int r = 0;
    for (Eigen::Index i = 0; i < s.singular_values.size(); ++i)
        if (s.singular_values(i) > tol) ++r;
    return s.u.leftCols(r);
}

MatrixXd null_space_basis(const MatrixXd& m, double scale_floor) {
    const Eigen::Index d = m.cols();
    if (m.rows() == 0 || d == 0) return MatrixXd::Identity(d, d);
    SvdResult s = svd(m, false, true);
    const double tol =
        rank_tolerance(m.rows(), m.cols(), std::max(s.singular_values(0), scale_floor));
    int r = 0;
    for (Eigen::Index i = 0; i < s.singular_values.size(); ++i)
        if (s.singular_values(i) > tol) ++r;
    return s.v.rightCols(d - r);
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    if (threads <= 1 || n == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    const int workers = std::min(threads, n);
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace secidx
