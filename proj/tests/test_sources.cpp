#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smallinc/fd.hpp"
#include "smallinc/sources.hpp"

#include "test_scenes.hpp"

using namespace smallinc;

TEST_CASE("dipole fields satisfy both curl equations away from the source") {
    const Scene sc = ball_scene();
    const auto& w = sc.wave;
    const double h = 1e-3 / w.k;
    for (const Vec3& x : {Vec3{-1.0, 0.5, 0.3}, Vec3{0.0, -2.0, 1.0},
                          Vec3{1.0, 1.0, -1.5}}) {
        auto Ef = [&](const Vec3& y) { return background_fields(sc, y).E; };
        auto Hf = [&](const Vec3& y) { return background_fields(sc, y).H; };
        const FieldSample s = background_fields(sc, x);
        // curl E = i omega mu0 H, curl H = -i omega eps0 E
        const CVec3 r1 = curl_c4(Ef, x, h) - iu * w.omega * w.mu0 * s.H;
        const CVec3 r2 = curl_c4(Hf, x, h) + iu * w.omega * w.eps0 * s.E;
        CHECK(r1.norm() < 1e-5 * w.k * s.E.norm());
        CHECK(r2.norm() < 1e-5 * w.k * s.H.norm());
    }
}

TEST_CASE("dipole fields decay like 1/r in the far zone") {
    const Scene sc = ball_scene();
    const Vec3 dir = Vec3{0.2, 1.0, -0.4}.normalized();
    const double r1 = 200.0 / sc.wave.k;
    const FieldSample far1 =
        background_fields(sc, sc.source.position + r1 * dir);
    const FieldSample far2 =
        background_fields(sc, sc.source.position + 2.0 * r1 * dir);
    CHECK(far1.E.norm() / far2.E.norm() == doctest::Approx(2.0).epsilon(0.01));
    CHECK(far1.H.norm() / far2.H.norm() == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("fields are linear in the dipole moment") {
    Scene sc = ball_scene();
    const Vec3 x{-1.0, 0.7, 0.2};
    const FieldSample a = background_fields(sc, x);
    sc.source.moment *= Complex{2.0, 1.0};
    const FieldSample b = background_fields(sc, x);
    CHECK((b.E - Complex{2.0, 1.0} * a.E).norm() < 1e-14 * b.E.norm());
    CHECK((b.H - Complex{2.0, 1.0} * a.H).norm() < 1e-14 * b.H.norm());
}

TEST_CASE("far field is transverse to the propagation direction") {
    const Scene sc = ball_scene();
    const Vec3 dir = Vec3{1.0, 0.3, 0.1}.normalized();
    const Vec3 x = sc.source.position + (1e3 / sc.wave.k) * dir;
    const FieldSample s = background_fields(sc, x);
    CHECK(std::abs(dir.cast<Complex>().dot(s.E)) < 1e-2 * s.E.norm());
    CHECK(std::abs(dir.cast<Complex>().dot(s.H)) < 1e-2 * s.H.norm());
}
