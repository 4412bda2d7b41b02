#pragma once

#include <span>
#include <vector>

#include "smallinc/krylov.hpp"
#include "smallinc/scene.hpp"
#include "smallinc/sources.hpp"
#include "smallinc/voxels.hpp"

namespace smallinc {

struct UnsupportedConfiguration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleSolution {
    struct InclusionGrid {
        LatticeCells cells;            // local (unscaled) lattice
        std::vector<Vec3> centers;     // scaled physical voxel centers
        double cell_volume = 0.0;      // scaled quadrature weight
        std::size_t offset = 0;        // first voxel index in interior_E
    };
    std::vector<InclusionGrid> grids;
    std::vector<CVec3> interior_E; // concatenated over inclusions
    int iterations = 0;
    double final_residual = 0.0;
    std::vector<double> residual_history;
};

/// Solve the discretized volume integral equation
///   E(v) = E0(v) + w^2 mu0 sum_j (eps_j - eps0) sum_v' W(v,v') E(v')
/// over all voxel centers of the scaled inclusions (dielectric contrast
/// only). Throws UnsupportedConfiguration for magnetic contrast and
/// SolverFailure on non-convergence.
OracleSolution solve_interior(const Scene& scene, int voxels_per_diameter,
                              double tol = 1e-8, int max_iter = 2000);

/// Residual of the forward operator applied to a solution, relative to
/// |E0| on the grid; an audit independent of the solver's own bookkeeping.
double forward_residual(const Scene& scene, const OracleSolution& sol);

/// Total field at an exterior point from the solved interior values.
FieldSample scattered_field(const Scene& scene, const OracleSolution& sol,
                            const Vec3& x);

/// First Born approximation on the solver's own grid (single operator
/// application to the incident field); used as a weak-contrast oracle.
std::vector<CVec3> born_field(const Scene& scene, int voxels_per_diameter);

struct StudyRow {
    double alpha = 0.0;
    std::vector<double> probe_err_background; // |E_oracle - E0| per probe
    std::vector<double> probe_err_asymptotic; // |E_oracle - E_asym| per probe
    double err_background = 0.0;              // max over probes
    double err_asymptotic = 0.0;
    int iterations = 0;
    double final_residual = 0.0;
};

struct StudyReport {
    std::vector<StudyRow> rows;
    std::vector<Vec3> probes;
    double slope_background = 0.0; // fitted on max-over-probes errors
    double slope_asymptotic = 0.0;
};

/// Run oracle and asymptotic evaluations over a geometric alpha sweep on
/// a fixed exterior probe set. The scene's own alpha is ignored.
StudyReport convergence_study(const Scene& scene_template,
                              std::span<const double> alphas,
                              int voxels_per_diameter,
                              std::span<const Vec3> probes = {});

/// Default probe set: n deterministic points on a sphere around the
/// inclusion centroid.
std::vector<Vec3> default_probe_points(const Scene& scene, unsigned seed = 0,
                                       int count = 8, double radius = 0.0);

} // namespace smallinc
