#include "smallinc/polarization.hpp"

#include <stdexcept>

#include "smallinc/lattice_kernel.hpp"

namespace smallinc {

PolarizationTensor ptensor_ball(double q0, double qj, double volume) {
    if (!(q0 > 0) || !(qj > 0) || !(volume > 0))
        throw std::domain_error("ptensor_ball: inputs must be positive");
    PolarizationTensor t;
    t.contrast = qj / q0;
    t.shape_volume = volume;
    t.entries = (3.0 * q0 / (qj + 2.0 * q0)) * volume * Mat3::Identity();
    return t;
}

NumericTensor ptensor_numeric(const ContrastProblem& problem) {
    if (!(problem.q0 > 0) || !(problem.qj > 0))
        throw std::domain_error("ptensor_numeric: contrasts must be positive");
    if (problem.resolution < 8)
        throw std::domain_error("ptensor_numeric: resolution must be >= 8 per axis");

    const LatticeCells cells = discretize_shape(problem.shape, problem.resolution);
    const std::size_t n = cells.coords.size();
    const double tau = (problem.qj - problem.q0) / problem.q0;
    const OffsetTable<double> table = build_static_table(cells);

    // u = e_i + tau * K u, with K the tabulated dipolar kernel including
    // the -I/3 self entry. Solve (I - tau K) u = e_i per direction; the
    // tensor column is the cell-volume-weighted sum of u.
    auto apply = [&](const Eigen::VectorXd& v) {
        Eigen::VectorXd out(v.size());
        table_matvec(table, cells, v.data(), out.data());
        return (v - tau * out).eval();
    };

    NumericTensor result;
    result.tensor.contrast = problem.qj / problem.q0;
    result.tensor.shape_volume =
        static_cast<double>(n) * cells.cell_volume;

    for (int dir = 0; dir < 3; ++dir) {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(3 * n));
        for (std::size_t v = 0; v < n; ++v) b(static_cast<Eigen::Index>(3 * v + static_cast<std::size_t>(dir))) = 1.0;
        Eigen::VectorXd u = b;
        KrylovResult kr = gmres(apply, b, u, 1e-8, 500);
        if (!kr.converged)
            throw SolverFailure("ptensor_numeric: solver did not converge",
                                kr.residual_history);
        result.diagnostics.iterations += kr.iterations;
        result.diagnostics.final_residual =
            std::max(result.diagnostics.final_residual, kr.final_residual);
        result.diagnostics.residual_history.insert(
            result.diagnostics.residual_history.end(), kr.residual_history.begin(),
            kr.residual_history.end());
        Vec3 col = Vec3::Zero();
        for (std::size_t v = 0; v < n; ++v)
            col += Vec3(u(static_cast<Eigen::Index>(3 * v)),
                        u(static_cast<Eigen::Index>(3 * v + 1)),
                        u(static_cast<Eigen::Index>(3 * v + 2)));
        result.tensor.entries.col(dir) = col * cells.cell_volume;
    }
    return result;
}

} // namespace smallinc
