#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace smallinc {

struct KrylovResult {
    int iterations = 0;
    double final_residual = 0.0; // relative to |b|
    std::vector<double> residual_history;
    bool converged = false;
};

struct SolverFailure : std::runtime_error {
    explicit SolverFailure(std::string what, std::vector<double> history)
        : std::runtime_error(std::move(what)), residual_history(std::move(history)) {}
    std::vector<double> residual_history;
};

/// Restarted GMRES on a matrix-free operator. Op maps a vector to A*vec;
/// Vec is an Eigen dense vector (real or complex). x holds the initial
/// guess on entry and the solution on return.
template <class Vec, class Op>
KrylovResult gmres(const Op& apply, const Vec& b, Vec& x, double tol, int max_iter,
                   int restart = 50) {
    using Scalar = typename Vec::Scalar;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using DenseVec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    KrylovResult res;
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        x.setZero();
        res.converged = true;
        return res;
    }

    Vec r = b - apply(x);
    double rnorm = r.norm();
    res.residual_history.push_back(rnorm / bnorm);
    if (rnorm / bnorm <= tol) {
        res.converged = true;
        res.final_residual = rnorm / bnorm;
        return res;
    }

    std::vector<Vec> basis;
    Mat hess; // (m+1) x m Hessenberg, column-filled

    while (res.iterations < max_iter) {
        basis.clear();
        basis.push_back(r / rnorm);
        const int m = restart;
        hess = Mat::Zero(m + 1, m);
        int k = 0;
        DenseVec y;
        for (; k < m && res.iterations < max_iter; ++k, ++res.iterations) {
            Vec w = apply(basis[static_cast<std::size_t>(k)]);
            for (int i = 0; i <= k; ++i) {
                Scalar hik = basis[static_cast<std::size_t>(i)].dot(w);
                hess(i, k) = hik;
                w -= hik * basis[static_cast<std::size_t>(i)];
            }
            const double hnext = w.norm();
            hess(k + 1, k) = Scalar(hnext);
            if (hnext > 0.0) basis.push_back(w / hnext);

            // Small least-squares solve for the current residual estimate.
            DenseVec rhs = DenseVec::Zero(k + 2);
            rhs(0) = Scalar(rnorm);
            y = hess.topLeftCorner(k + 2, k + 1).colPivHouseholderQr().solve(rhs);
            const double rel =
                (hess.topLeftCorner(k + 2, k + 1) * y - rhs).norm() / bnorm;
            res.residual_history.push_back(rel);
            if (rel <= tol || hnext == 0.0) {
                ++k;
                ++res.iterations;
                break;
            }
        }
        for (int i = 0; i < k; ++i) x += y(i) * basis[static_cast<std::size_t>(i)];
        r = b - apply(x);
        rnorm = r.norm();
        res.final_residual = rnorm / bnorm;
        if (res.final_residual <= tol) {
            res.converged = true;
            return res;
        }
    }
    return res;
}

} // namespace smallinc
