#pragma once

#include "smallinc/scene.hpp"

// Shared fixtures: a dielectric ball lit by a z-polarized dipole on the
// x axis. Natural units (eps0 = mu0 = 1) keep the numbers readable.

inline smallinc::Scene ball_scene(double omega = 2.0, double alpha = 0.1,
                                  double eps_j = 2.0, double mu_j = 1.0) {
    using namespace smallinc;
    Scene sc;
    sc.wave = WaveContext::natural(omega);
    sc.alpha = alpha;
    sc.c0 = 1.0;
    sc.source.position = Vec3{2.5, 0.0, 0.0};
    sc.source.moment = CVec3{0.0, 0.0, 1.0};
    InclusionSpec inc;
    inc.center = Vec3::Zero();
    inc.shape = ShapeSpec::ball(1.0);
    inc.eps = eps_j;
    inc.mu = mu_j;
    sc.inclusions.push_back(inc);
    return sc;
}

inline smallinc::Scene two_ball_scene(double omega = 2.0, double alpha = 0.1) {
    using namespace smallinc;
    Scene sc = ball_scene(omega, alpha);
    InclusionSpec inc;
    inc.center = Vec3{0.0, -1.6, 0.0};
    inc.shape = ShapeSpec::ball(0.8);
    inc.eps = 3.0;
    inc.mu = 1.0;
    sc.inclusions.push_back(inc);
    sc.source.position = Vec3{3.0, 0.0, 0.0};
    return sc;
}
