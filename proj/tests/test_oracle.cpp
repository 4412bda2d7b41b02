#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smallinc/asymptotics.hpp"
#include "smallinc/fd.hpp"
#include "smallinc/fit.hpp"
#include "smallinc/ls_oracle.hpp"

#include "test_scenes.hpp"

using namespace smallinc;

TEST_CASE("zero contrast returns the incident field immediately") {
    const Scene sc = ball_scene(2.0, 0.1, 1.0, 1.0);
    const OracleSolution sol = solve_interior(sc, 10);
    CHECK(sol.iterations <= 1);
    double worst = 0.0;
    for (std::size_t v = 0; v < sol.interior_E.size(); ++v) {
        const CVec3 e0 = background_fields(sc, sol.grids[0].centers[v]).E;
        worst = std::max(worst, (sol.interior_E[v] - e0).norm() / e0.norm());
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("magnetic contrast is reported as unsupported") {
    const Scene sc = ball_scene(2.0, 0.1, 2.0, 3.0);
    CHECK_THROWS_AS((void)solve_interior(sc, 10), UnsupportedConfiguration);
}

TEST_CASE("solution error against the Born series is second order in contrast") {
    std::vector<double> deltas{0.04, 0.02, 0.01};
    std::vector<double> errs;
    for (const double d : deltas) {
        const Scene sc = ball_scene(2.0, 0.2, 1.0 + d, 1.0);
        const OracleSolution sol = solve_interior(sc, 10);
        const std::vector<CVec3> born = born_field(sc, 10);
        REQUIRE(born.size() == sol.interior_E.size());
        double num = 0.0, den = 0.0;
        for (std::size_t v = 0; v < born.size(); ++v) {
            num = std::max(num, (sol.interior_E[v] - born[v]).norm());
            den = std::max(den, sol.interior_E[v].norm());
        }
        errs.push_back(num / den);
    }
    const LineFit fit = loglog_fit(deltas, errs);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("quasi-static interior matches the sphere coefficient") {
    // Slow oscillation: the interior field approaches
    // 3 eps0/(eps_j + 2 eps0) times the applied field.
    Scene sc = ball_scene(0.2, 0.1, 2.0, 1.0);
    sc.source.position = Vec3{5.0, 0.0, 0.0};
    const OracleSolution sol = solve_interior(sc, 16);
    CVec3 mean = CVec3::Zero();
    for (const auto& e : sol.interior_E) mean += e;
    mean /= static_cast<double>(sol.interior_E.size());
    const CVec3 e0 = background_fields(sc, sc.inclusions[0].center).E;
    const CVec3 expected = (3.0 * 1.0 / (2.0 + 2.0)) * e0;
    CHECK((mean - expected).norm() < 0.01 * expected.norm());
}

TEST_CASE("forward-operator residual audit") {
    const Scene sc = ball_scene(2.0, 0.1, 2.0, 1.0);
    const OracleSolution sol = solve_interior(sc, 12);
    CHECK(forward_residual(sc, sol) < 1e-8);
    CHECK(sol.final_residual < 1e-8);
    CHECK(!sol.residual_history.empty());
}

TEST_CASE("scattered field refines monotonically with the grid") {
    // Strong contrast and a large scale so discretization error dominates
    // the converged-noise floor.
    Scene sc = ball_scene(2.0, 0.4, 4.0, 1.0);
    sc.source.position = Vec3{3.0, 0.0, 0.0};
    const Vec3 probe{-1.4, 0.6, 0.3};
    std::vector<CVec3> values;
    for (const int vpd : {8, 16, 24})
        values.push_back(scattered_field(sc, solve_interior(sc, vpd), probe).E);
    const double step1 = (values[1] - values[0]).norm();
    const double step2 = (values[2] - values[1]).norm();
    CHECK(step2 < step1);
}

TEST_CASE("scattered E and H satisfy the curl relation") {
    const Scene sc = ball_scene(2.0, 0.1, 2.0, 1.0);
    const OracleSolution sol = solve_interior(sc, 16);
    const auto& w = sc.wave;
    const Vec3 x{-1.5, 0.4, 0.2};
    auto Ef = [&](const Vec3& y) { return scattered_field(sc, sol, y).E; };
    const CVec3 fromE = curl_c4(Ef, x, 1e-3 / w.k) / (iu * w.omega * w.mu0);
    const CVec3 direct = scattered_field(sc, sol, x).H;
    CHECK((fromE - direct).norm() < 1e-6 * direct.norm());
}

TEST_CASE("a zero-contrast companion inclusion changes nothing") {
    Scene sc = two_ball_scene();
    sc.inclusions[1].eps = sc.wave.eps0;
    sc.inclusions[1].mu = sc.wave.mu0;
    Scene single = sc;
    single.inclusions.resize(1);
    const OracleSolution both = solve_interior(sc, 10);
    const OracleSolution one = solve_interior(single, 10);
    const Vec3 probe{-2.0, 1.0, 0.5};
    const CVec3 eb = scattered_field(sc, both, probe).E;
    const CVec3 eo = scattered_field(single, one, probe).E;
    CHECK((eb - eo).norm() < 1e-10 * eo.norm());
}

TEST_CASE("scattering obeys Lorentz reciprocity") {
    // Swap source and receiver dipoles: p_b . E_sc(x_b) is symmetric.
    const Vec3 xa{2.5, 0.0, 0.0}, xb{-1.0, 2.2, 0.4};
    const CVec3 pa{0.0, 0.0, 1.0}, pb{1.0, 0.5, 0.0};
    Scene sc = ball_scene(2.0, 0.1, 2.0, 1.0);

    sc.source.position = xa;
    sc.source.moment = pa;
    const OracleSolution sol_a = solve_interior(sc, 16);
    const CVec3 esc_b = scattered_field(sc, sol_a, xb).E -
                        background_fields(sc, xb).E;

    sc.source.position = xb;
    sc.source.moment = pb;
    const OracleSolution sol_b = solve_interior(sc, 16);
    const CVec3 esc_a = scattered_field(sc, sol_b, xa).E -
                        background_fields(sc, xa).E;

    const Complex lhs = pb.cast<Complex>().cwiseProduct(esc_b).sum();
    const Complex rhs = pa.cast<Complex>().cwiseProduct(esc_a).sum();
    CHECK(std::abs(lhs - rhs) < 5e-3 * std::abs(lhs));
}

TEST_CASE("scattered far field decays like 1/r") {
    const Scene sc = ball_scene(2.0, 0.2, 2.0, 1.0);
    const OracleSolution sol = solve_interior(sc, 10);
    const Vec3 dir = Vec3{-0.3, 1.0, 0.2}.normalized();
    const double r = 150.0 / sc.wave.k;
    const CVec3 near_sc = scattered_field(sc, sol, r * dir).E -
                          background_fields(sc, r * dir).E;
    const CVec3 far_sc = scattered_field(sc, sol, 2.0 * r * dir).E -
                         background_fields(sc, 2.0 * r * dir).E;
    CHECK(near_sc.norm() / far_sc.norm() == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("interior evaluation of the scattered field is rejected") {
    const Scene sc = ball_scene(2.0, 0.2, 2.0, 1.0);
    const OracleSolution sol = solve_interior(sc, 8);
    CHECK_THROWS_AS((void)scattered_field(sc, sol, Vec3{0.05, 0.0, 0.0}),
                    std::domain_error);
}

TEST_CASE("convergence study validates its scale list") {
    const Scene sc = ball_scene();
    const std::vector<double> two{0.2, 0.1};
    CHECK_THROWS_AS((void)convergence_study(sc, two, 8), std::invalid_argument);
    const std::vector<double> uneven{0.2, 0.15, 0.05};
    CHECK_THROWS_AS((void)convergence_study(sc, uneven, 8),
                    std::invalid_argument);
}

TEST_CASE("default probe points are deterministic and exterior") {
    const Scene sc = ball_scene();
    const auto a = default_probe_points(sc, 42);
    const auto b = default_probe_points(sc, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK((a[i] - b[i]).norm() == 0.0);
        CHECK(inclusion_at(sc, a[i]) == -1);
    }
    const auto c = default_probe_points(sc, 43);
    CHECK((a[0] - c[0]).norm() > 0.0);
}
