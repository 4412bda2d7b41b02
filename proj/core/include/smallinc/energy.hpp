#pragma once

#include <functional>
#include <span>
#include <vector>

#include "smallinc/fit.hpp"
#include "smallinc/scene.hpp"
#include "smallinc/sources.hpp"
#include "smallinc/types.hpp"

namespace smallinc {

/// Weight applied to |H|^2 in the energy density: "paper" uses 1/mu,
/// "conventional" uses mu.
enum class EnergyWeight { paper, conventional };

enum class FieldProvenance { background, asymptotic, oracle };

using FieldProvider = std::function<FieldSample(const Vec3&)>;

/// Instantaneous Poynting vector Re(E e^{-iwt}) x Re(H e^{-iwt}) / mu0.
Vec3 poynting(const CVec3& E, const CVec3& H, double t, double omega, double mu0);

/// (1/mu0)[h . curl e - e . curl h] with fourth-order finite-difference
/// curls of the instantaneous fields.
double div_poynting(const FieldProvider& provider, const WaveContext& wave,
                    const Vec3& x, double t);

/// Spherical probe region with a product Gauss rule (radial x polar Gauss-
/// Legendre, uniform azimuth).
struct ProbeRegion {
    Vec3 center = Vec3::Zero();
    double radius = 0.0;
    int quad_order = 6;
};

struct EnergyReport {
    double value = 0.0; // J
    ProbeRegion region;
    double time = 0.0;
    FieldProvenance provenance = FieldProvenance::background;
};

/// (1/2) integral over the region of eps_a |e|^2 + w |h|^2. The region
/// must exclude the source and all scaled inclusions.
EnergyReport instantaneous_energy(const FieldProvider& provider,
                                  const ProbeRegion& region, const Scene& scene,
                                  double t,
                                  EnergyWeight weight = EnergyWeight::paper,
                                  FieldProvenance provenance = FieldProvenance::background);

struct ScalingFit {
    LineFit fit;
    double implied_constant = 0.0;    // max |dE| / alpha^3 over the sweep
    double normalized_constant = 0.0; // implied constant / background energy
    double background_energy = 0.0;
    std::vector<double> alphas;
    std::vector<double> deltas; // |E_alpha - E_0| per alpha
    bool degenerate = false;    // deltas below noise floor, no meaningful fit
};

/// |E_alpha(t) - E_0(t)| over a geometric alpha sweep with oracle fields,
/// fitted in log-log coordinates.
ScalingFit energy_scaling_fit(const Scene& scene_template,
                              std::span<const double> alphas,
                              const ProbeRegion& region, double t,
                              EnergyWeight weight = EnergyWeight::paper,
                              int voxels_per_diameter = 16);

} // namespace smallinc
