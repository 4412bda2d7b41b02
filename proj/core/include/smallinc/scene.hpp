#pragma once

#include <string>
#include <vector>

#include "smallinc/types.hpp"
#include "smallinc/voxels.hpp"

namespace smallinc {

/// Background medium constants and the derived wavenumber.
struct WaveContext {
    double eps0 = 0.0;  // permittivity, F/m
    double mu0 = 0.0;   // permeability, H/m
    double omega = 0.0; // angular frequency, rad/s
    double k = 0.0;     // wavenumber, 1/m

    static WaveContext make(double eps0, double mu0, double omega);
    /// eps0 = mu0 = 1 preset, convenient for tests.
    static WaveContext natural(double omega) { return make(1.0, 1.0, omega); }
};

struct ShapeSpec {
    enum class Kind { Ball, Voxelized };
    Kind kind = Kind::Ball;
    double radius = 0.0; // Ball only
    VoxelGrid grid;      // Voxelized only

    static ShapeSpec ball(double radius);
    static ShapeSpec voxelized(VoxelGrid grid);

    double volume() const;
    double diameter() const;
    /// Membership in local (unscaled, origin-centered) coordinates.
    /// Boundary points count as inside.
    bool contains(const Vec3& local) const;
    /// Radius of the smallest origin-centered ball covering the shape.
    double bounding_radius() const;
};

struct InclusionSpec {
    Vec3 center = Vec3::Zero(); // z_j
    ShapeSpec shape;
    double eps = 0.0;
    double mu = 0.0;
};

/// Point electric dipole p delta(x - position).
struct SourceSpec {
    Vec3 position = Vec3::Zero();
    CVec3 moment = CVec3::Zero();
};

struct Scene {
    WaveContext wave;
    double alpha = 0.0; // inclusion scale; 0 means pure background
    std::vector<InclusionSpec> inclusions;
    SourceSpec source;
    double c0 = 0.0;               // minimum center separation
    double source_clearance = 0.0; // 0 requests the default rule

    /// 2 * max_j(alpha * diam(B_j)) + c0.
    double default_source_clearance() const;
    double resolved_source_clearance() const;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

ValidationReport validate_scene(const Scene& scene);

struct Material {
    double eps = 0.0;
    double mu = 0.0;
};

/// Piecewise-constant material lookup; boundary points report the
/// inclusion material.
Material material_at(const Scene& scene, const Vec3& x);

/// Index of the inclusion whose scaled shape contains x, or -1.
int inclusion_at(const Scene& scene, const Vec3& x);

} // namespace smallinc
