#include "smallinc/scene.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace smallinc {

namespace {
template <class... Args>
std::string msg(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}
} // namespace

WaveContext WaveContext::make(double eps0, double mu0, double omega) {
    WaveContext w;
    w.eps0 = eps0;
    w.mu0 = mu0;
    w.omega = omega;
    w.k = (eps0 > 0 && mu0 > 0 && omega > 0) ? omega * std::sqrt(eps0 * mu0) : 0.0;
    return w;
}

ShapeSpec ShapeSpec::ball(double radius) {
    ShapeSpec s;
    s.kind = Kind::Ball;
    s.radius = radius;
    return s;
}

ShapeSpec ShapeSpec::voxelized(VoxelGrid grid) {
    ShapeSpec s;
    s.kind = Kind::Voxelized;
    s.grid = std::move(grid);
    return s;
}

double ShapeSpec::volume() const {
    if (kind == Kind::Ball) return 4.0 / 3.0 * M_PI * radius * radius * radius;
    return grid.volume();
}

double ShapeSpec::bounding_radius() const {
    if (kind == Kind::Ball) return radius;
    return grid.bounding_radius();
}

double ShapeSpec::diameter() const { return 2.0 * bounding_radius(); }

bool ShapeSpec::contains(const Vec3& local) const {
    if (kind == Kind::Ball) return local.norm() <= radius;
    return grid.contains(local);
}

double Scene::default_source_clearance() const {
    double max_d = 0.0;
    for (const auto& inc : inclusions) max_d = std::max(max_d, alpha * inc.shape.diameter());
    return 2.0 * max_d + c0;
}

double Scene::resolved_source_clearance() const {
    return source_clearance > 0.0 ? source_clearance : default_source_clearance();
}

ValidationReport validate_scene(const Scene& scene) {
    ValidationReport rep;
    auto fail = [&rep](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };

    if (!(scene.wave.eps0 > 0)) fail("background permittivity must be positive");
    if (!(scene.wave.mu0 > 0)) fail("background permeability must be positive");
    if (!(scene.wave.omega > 0)) fail("frequency must be positive");
    if (scene.alpha < 0) fail("alpha must be >= 0");
    if (!(scene.c0 > 0)) fail("minimum separation c0 must be positive");
    if (scene.source.moment.norm() == 0.0) fail("source dipole moment must be nonzero");

    for (std::size_t j = 0; j < scene.inclusions.size(); ++j) {
        const auto& inc = scene.inclusions[j];
        if (!(inc.eps > 0))
            fail(msg("inclusion ", j, ": permittivity must be positive"));
        if (!(inc.mu > 0))
            fail(msg("inclusion ", j, ": permeability must be positive"));
        if (inc.shape.kind == ShapeSpec::Kind::Ball) {
            if (!(inc.shape.radius > 0))
                fail(msg("inclusion ", j, ": ball radius must be positive"));
        } else {
            if (inc.shape.grid.count() == 0)
                fail(msg("inclusion ", j, ": voxel grid is empty"));
            else if (!inc.shape.grid.connected())
                fail(msg("inclusion ", j, ": voxel grid is not connected"));
        }
        if (!inc.shape.contains(Vec3::Zero()))
            fail(msg("inclusion ", j, ": shape does not contain the origin"));
    }

    for (std::size_t j = 0; j < scene.inclusions.size(); ++j) {
        for (std::size_t l = j + 1; l < scene.inclusions.size(); ++l) {
            const double d =
                (scene.inclusions[j].center - scene.inclusions[l].center).norm();
            if (d < scene.c0)
                fail(msg("inclusions ", j, " and ", l, ": center separation ", d,
                         " violates bound |z_j - z_l| >= c0 = ", scene.c0));
            // Conservative disjointness via bounding spheres.
            const double rj = scene.alpha * scene.inclusions[j].shape.bounding_radius();
            const double rl = scene.alpha * scene.inclusions[l].shape.bounding_radius();
            if (scene.alpha > 0 && d < rj + rl)
                fail(msg("inclusions ", j, " and ", l, ": scaled shapes overlap"));
        }
    }

    const double clearance = scene.resolved_source_clearance();
    for (std::size_t j = 0; j < scene.inclusions.size(); ++j) {
        const double d = (scene.source.position - scene.inclusions[j].center).norm();
        if (d < clearance)
            fail(msg("inclusion ", j, ": source distance ", d, " below clearance ",
                     clearance));
    }
    return rep;
}

int inclusion_at(const Scene& scene, const Vec3& x) {
    if (scene.alpha <= 0.0) return -1;
    for (std::size_t j = 0; j < scene.inclusions.size(); ++j) {
        const auto& inc = scene.inclusions[j];
        const Vec3 local = (x - inc.center) / scene.alpha;
        if (inc.shape.contains(local)) return static_cast<int>(j);
    }
    return -1;
}

Material material_at(const Scene& scene, const Vec3& x) {
    const int j = inclusion_at(scene, x);
    if (j < 0) return {scene.wave.eps0, scene.wave.mu0};
    return {scene.inclusions[static_cast<std::size_t>(j)].eps,
            scene.inclusions[static_cast<std::size_t>(j)].mu};
}

} // namespace smallinc
