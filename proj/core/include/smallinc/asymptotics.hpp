#pragma once

#include <span>
#include <vector>

#include "smallinc/polarization.hpp"
#include "smallinc/scene.hpp"
#include "smallinc/sources.hpp"
#include "smallinc/types.hpp"

namespace smallinc {

/// Polarization tensors of one inclusion for both material contrasts.
struct InclusionTensors {
    PolarizationTensor m_eps;
    PolarizationTensor m_mu;
};

/// Closed-form tensors for every inclusion; requires all shapes to be balls.
std::vector<InclusionTensors> ball_tensors(const Scene& scene);

/// The alpha^3-scaled leading correction to the electric field (the sum
/// term of the expansion, without the background).
CVec3 field_correction_E(const Scene& scene, const Vec3& x,
                         std::span<const InclusionTensors> tensors);
CVec3 field_correction_H(const Scene& scene, const Vec3& x,
                         std::span<const InclusionTensors> tensors);

/// Leading-order expansions E0 + correction / H0 + correction. x must lie
/// outside every scaled inclusion.
CVec3 asymptotic_E(const Scene& scene, const Vec3& x,
                   std::span<const InclusionTensors> tensors);
CVec3 asymptotic_H(const Scene& scene, const Vec3& x,
                   std::span<const InclusionTensors> tensors);

/// Scalar constants of the energy-rate expansion for a ball inclusion.
struct AsymptoticCoefficients {
    Complex c1, c2, c1p, c2p;
};
AsymptoticCoefficients ball_coefficients(const Scene& scene, int j);

/// alpha^3 coefficient of the energy-density-rate perturbation
/// d/dt(aleph_0 - aleph_alpha) at x. All inclusions must be balls.
/// Off the source support only the divergence terms contribute; at the
/// source position the dipole pairing value is returned instead.
Complex energy_rate_perturbation(const Scene& scene, const Vec3& x);

} // namespace smallinc
