#include "smallinc/ls_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "smallinc/asymptotics.hpp"
#include "smallinc/fit.hpp"
#include "smallinc/green.hpp"
#include "smallinc/lattice_kernel.hpp"

namespace smallinc {

namespace {

struct OracleOperator {
    std::vector<OracleSolution::InclusionGrid> grids;
    std::vector<OffsetTable<Complex>> tables;
    std::vector<double> contrast;              // eps_j - eps0
    std::vector<std::vector<CMat3>> cross;     // [pair] row-major Na x Nb blocks
    std::vector<std::pair<std::size_t, std::size_t>> cross_pairs;
    std::size_t total = 0;
    double coupling = 0.0; // omega^2 mu0

    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
};

Eigen::VectorXcd OracleOperator::apply(const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd y = x;
    std::vector<Complex> tmp;
    for (std::size_t j = 0; j < grids.size(); ++j) {
        const auto& g = grids[j];
        const std::size_t n = g.cells.coords.size();
        tmp.resize(3 * n);
        table_matvec(tables[j], g.cells, x.data() + 3 * g.offset, tmp.data());
        const Complex f = -coupling * contrast[j];
        for (std::size_t v = 0; v < 3 * n; ++v)
            y(static_cast<Eigen::Index>(3 * g.offset + v)) += f * tmp[v];
    }
    for (std::size_t p = 0; p < cross_pairs.size(); ++p) {
        const auto [a, b] = cross_pairs[p];
        const auto& ga = grids[a];
        const auto& gb = grids[b];
        const std::size_t na = ga.cells.coords.size();
        const std::size_t nb = gb.cells.coords.size();
        const Complex fa = -coupling * contrast[b]; // source contrast
        const Complex fb = -coupling * contrast[a];
        for (std::size_t va = 0; va < na; ++va) {
            CVec3 xa{x(static_cast<Eigen::Index>(3 * (ga.offset + va))),
                     x(static_cast<Eigen::Index>(3 * (ga.offset + va) + 1)),
                     x(static_cast<Eigen::Index>(3 * (ga.offset + va) + 2))};
            CVec3 acc = CVec3::Zero();
            for (std::size_t vb = 0; vb < nb; ++vb) {
                const CMat3& w = cross[p][va * nb + vb];
                CVec3 xb{x(static_cast<Eigen::Index>(3 * (gb.offset + vb))),
                         x(static_cast<Eigen::Index>(3 * (gb.offset + vb) + 1)),
                         x(static_cast<Eigen::Index>(3 * (gb.offset + vb) + 2))};
                acc += w * xb;
                // Transposed use for the reverse coupling (W symmetric).
                const CVec3 back = w.transpose() * xa;
                y(static_cast<Eigen::Index>(3 * (gb.offset + vb))) += fb * back[0];
                y(static_cast<Eigen::Index>(3 * (gb.offset + vb) + 1)) += fb * back[1];
                y(static_cast<Eigen::Index>(3 * (gb.offset + vb) + 2)) += fb * back[2];
            }
            y(static_cast<Eigen::Index>(3 * (ga.offset + va))) += fa * acc[0];
            y(static_cast<Eigen::Index>(3 * (ga.offset + va) + 1)) += fa * acc[1];
            y(static_cast<Eigen::Index>(3 * (ga.offset + va) + 2)) += fa * acc[2];
        }
    }
    return y;
}

OracleOperator build_operator(const Scene& scene, int vpd) {
    if (vpd < 8)
        throw std::invalid_argument("solve_interior: voxels_per_diameter must be >= 8");
    for (const auto& inc : scene.inclusions)
        if (std::abs(inc.mu - scene.wave.mu0) > 1e-14 * scene.wave.mu0)
            throw UnsupportedConfiguration(
                "ls_oracle supports dielectric contrast only (mu_j must equal mu0)");

    OracleOperator op;
    op.coupling = scene.wave.omega * scene.wave.omega * scene.wave.mu0;
    std::size_t offset = 0;
    for (const auto& inc : scene.inclusions) {
        OracleSolution::InclusionGrid g;
        g.cells = discretize_shape(inc.shape, vpd);
        g.offset = offset;
        const double a = scene.alpha;
        g.cell_volume = a * a * a * g.cells.cell_volume;
        g.centers.reserve(g.cells.centers.size());
        for (const auto& c : g.cells.centers) g.centers.push_back(inc.center + a * c);
        offset += g.cells.coords.size();
        op.tables.push_back(build_dyadic_table(g.cells, a, scene.wave.k));
        op.contrast.push_back(inc.eps - scene.wave.eps0);
        op.grids.push_back(std::move(g));
    }
    op.total = offset;
    for (std::size_t a = 0; a < op.grids.size(); ++a)
        for (std::size_t b = a + 1; b < op.grids.size(); ++b) {
            const auto& ga = op.grids[a];
            const auto& gb = op.grids[b];
            std::vector<CMat3> block;
            block.reserve(ga.centers.size() * gb.centers.size());
            for (const auto& xa : ga.centers)
                for (const auto& xb : gb.centers)
                    block.push_back(dyadic_green(xa, xb, scene.wave.k) * gb.cell_volume);
            op.cross.push_back(std::move(block));
            op.cross_pairs.emplace_back(a, b);
        }
    return op;
}

Eigen::VectorXcd incident_on_grid(const Scene& scene, const OracleOperator& op) {
    Eigen::VectorXcd b(static_cast<Eigen::Index>(3 * op.total));
    for (const auto& g : op.grids)
        for (std::size_t v = 0; v < g.centers.size(); ++v) {
            const CVec3 e = background_fields(scene, g.centers[v]).E;
            b.segment<3>(static_cast<Eigen::Index>(3 * (g.offset + v))) = e;
        }
    return b;
}

} // namespace

OracleSolution solve_interior(const Scene& scene, int voxels_per_diameter,
                              double tol, int max_iter) {
    OracleOperator op = build_operator(scene, voxels_per_diameter);
    Eigen::VectorXcd b = incident_on_grid(scene, op);

    Eigen::VectorXcd x = b;
    auto apply = [&op](const Eigen::VectorXcd& v) { return op.apply(v); };
    KrylovResult kr = gmres(apply, b, x, tol, max_iter);
    if (!kr.converged)
        throw SolverFailure("ls_oracle: solver did not converge", kr.residual_history);

    OracleSolution sol;
    sol.grids = op.grids;
    sol.iterations = kr.iterations;
    sol.final_residual = kr.final_residual;
    sol.residual_history = std::move(kr.residual_history);
    sol.interior_E.resize(op.total);
    for (std::size_t v = 0; v < op.total; ++v)
        sol.interior_E[v] = x.segment<3>(static_cast<Eigen::Index>(3 * v));
    return sol;
}

double forward_residual(const Scene& scene, const OracleSolution& sol) {
    const int vpd = sol.grids.empty() ? 8 : sol.grids[0].cells.dims[0];
    OracleOperator op = build_operator(scene, vpd);
    Eigen::VectorXcd b = incident_on_grid(scene, op);
    Eigen::VectorXcd x(static_cast<Eigen::Index>(3 * op.total));
    for (std::size_t v = 0; v < op.total; ++v)
        x.segment<3>(static_cast<Eigen::Index>(3 * v)) = sol.interior_E[v];
    return (b - op.apply(x)).norm() / b.norm();
}

FieldSample scattered_field(const Scene& scene, const OracleSolution& sol,
                            const Vec3& x) {
    if (inclusion_at(scene, x) >= 0)
        throw std::domain_error("scattered_field: point inside an inclusion");
    const auto& w = scene.wave;
    FieldSample out = background_fields(scene, x);
    for (std::size_t j = 0; j < sol.grids.size(); ++j) {
        const auto& g = sol.grids[j];
        const double contrast = scene.inclusions[j].eps - w.eps0;
        if (contrast == 0.0) continue;
        CVec3 accE = CVec3::Zero();
        CVec3 accH = CVec3::Zero();
        for (std::size_t v = 0; v < g.centers.size(); ++v) {
            const CVec3& ev = sol.interior_E[g.offset + v];
            accE += dyadic_green(x, g.centers[v], w.k) * ev;
            accH += ccross(grad_scalar_green(x, g.centers[v], w.k), ev);
        }
        out.E += w.omega * w.omega * w.mu0 * contrast * g.cell_volume * accE;
        out.H += -iu * w.omega * contrast * g.cell_volume * accH;
    }
    return out;
}

std::vector<CVec3> born_field(const Scene& scene, int voxels_per_diameter) {
    OracleOperator op = build_operator(scene, voxels_per_diameter);
    Eigen::VectorXcd b = incident_on_grid(scene, op);
    // E0 + coupling*K E0 = 2b - A b, since A = I - coupling*K.
    Eigen::VectorXcd first = 2.0 * b - op.apply(b);
    std::vector<CVec3> out(op.total);
    for (std::size_t v = 0; v < op.total; ++v)
        out[v] = first.segment<3>(static_cast<Eigen::Index>(3 * v));
    return out;
}

std::vector<Vec3> default_probe_points(const Scene& scene, unsigned seed, int count,
                                       double radius) {
    Vec3 centroid = Vec3::Zero();
    double max_d = 0.0;
    for (const auto& inc : scene.inclusions) {
        centroid += inc.center;
        max_d = std::max(max_d, scene.alpha * inc.shape.diameter());
    }
    if (!scene.inclusions.empty())
        centroid /= static_cast<double>(scene.inclusions.size());
    if (radius <= 0.0) radius = 5.0 * max_d;
    if (radius <= 0.0) radius = 1.0;

    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(count));
    while (pts.size() < static_cast<std::size_t>(count)) {
        Vec3 d{gauss(rng), gauss(rng), gauss(rng)};
        const double n = d.norm();
        if (n < 1e-6) continue;
        pts.push_back(centroid + radius * d / n);
    }
    return pts;
}

StudyReport convergence_study(const Scene& scene_template,
                              std::span<const double> alphas,
                              int voxels_per_diameter,
                              std::span<const Vec3> probes) {
    if (alphas.size() < 3) throw std::invalid_argument("need >=3 scales");
    for (std::size_t i = 2; i < alphas.size(); ++i) {
        const double r1 = alphas[i - 1] / alphas[i - 2];
        const double r2 = alphas[i] / alphas[i - 1];
        if (std::abs(r2 / r1 - 1.0) > 0.05)
            throw std::invalid_argument("alpha values must be geometrically spaced");
    }

    StudyReport report;
    if (probes.empty()) {
        Scene probe_scene = scene_template;
        probe_scene.alpha = *std::max_element(alphas.begin(), alphas.end());
        report.probes = default_probe_points(probe_scene);
    } else {
        report.probes.assign(probes.begin(), probes.end());
    }

    for (const double a : alphas) {
        Scene scene = scene_template;
        scene.alpha = a;
        const auto rep = validate_scene(scene);
        if (!rep.ok)
            throw std::invalid_argument("convergence_study: invalid scene at alpha=" +
                                        std::to_string(a));
        OracleSolution sol = solve_interior(scene, voxels_per_diameter);
        const auto tensors = ball_tensors(scene);

        StudyRow row;
        row.alpha = a;
        row.iterations = sol.iterations;
        row.final_residual = sol.final_residual;
        for (const auto& p : report.probes) {
            const CVec3 e_oracle = scattered_field(scene, sol, p).E;
            const CVec3 e0 = background_fields(scene, p).E;
            const CVec3 e_asym = asymptotic_E(scene, p, tensors);
            row.probe_err_background.push_back((e_oracle - e0).norm());
            row.probe_err_asymptotic.push_back((e_oracle - e_asym).norm());
        }
        row.err_background = *std::max_element(row.probe_err_background.begin(),
                                               row.probe_err_background.end());
        row.err_asymptotic = *std::max_element(row.probe_err_asymptotic.begin(),
                                               row.probe_err_asymptotic.end());
        report.rows.push_back(std::move(row));
    }

    std::vector<double> xs, ys_bg, ys_asym;
    for (const auto& r : report.rows) {
        xs.push_back(r.alpha);
        ys_bg.push_back(r.err_background);
        ys_asym.push_back(r.err_asymptotic);
    }
    report.slope_background = loglog_fit(xs, ys_bg).slope;
    report.slope_asymptotic = loglog_fit(xs, ys_asym).slope;
    return report;
}

} // namespace smallinc
