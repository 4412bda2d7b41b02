#pragma once

#include <vector>

#include "smallinc/krylov.hpp"
#include "smallinc/scene.hpp"
#include "smallinc/types.hpp"

namespace smallinc {

struct PolarizationTensor {
    Mat3 entries = Mat3::Zero(); // units of volume
    double contrast = 1.0;       // q_j / q_0
    double shape_volume = 0.0;   // |B|
};

struct SolveDiagnostics {
    int iterations = 0;
    double final_residual = 0.0;
    std::vector<double> residual_history;
};

/// Closed form for a ball: (3 q0 / (qj + 2 q0)) * volume * I.
PolarizationTensor ptensor_ball(double q0, double qj, double volume);

struct ContrastProblem {
    ShapeSpec shape;
    double q0 = 1.0;
    double qj = 1.0;
    int resolution = 16; // cells per axis, >= 8
};

struct NumericTensor {
    PolarizationTensor tensor;
    SolveDiagnostics diagnostics;
};

/// Solve the static transmission problem for each coordinate direction via
/// a volume integral equation for the interior gradient (dipolar kernel
/// with -I/3 self term) and integrate the gradient over the shape.
/// Throws SolverFailure on non-convergence.
NumericTensor ptensor_numeric(const ContrastProblem& problem);

} // namespace smallinc
