// Acceptance gate: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Usage: acceptance <path-to-smallinc-cli> <config-dir>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "smallinc/asymptotics.hpp"
#include "smallinc/energy.hpp"
#include "smallinc/fd.hpp"
#include "smallinc/fit.hpp"
#include "smallinc/green.hpp"
#include "smallinc/ls_oracle.hpp"
#include "smallinc/polarization.hpp"

#include "test_scenes.hpp"

using namespace smallinc;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, const char* what, bool ok, const std::string& detail) {
    std::printf("criterion %d (%s): %s  [%s]\n", criterion, what,
                ok ? "PASS" : "FAIL", detail.c_str());
    if (!ok) ++failures;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

void criterion1_kernel() {
    std::mt19937 rng(1);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(0.5, 2.0);
    const double k = 2.0;
    const double lambda = 2.0 * M_PI / k;
    const double h = 1e-3 / k;
    double worst_pde = 0.0, worst_rec = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Vec3 d1{nd(rng), nd(rng), nd(rng)}, d2{nd(rng), nd(rng), nd(rng)};
        const Vec3 x = 3.0 * lambda * d1.normalized();
        const Vec3 y = x + ud(rng) * lambda * d2.normalized();
        const CMat3 G = dyadic_green(x, y, k);
        double res = 0.0;
        for (int col = 0; col < 3; ++col) {
            auto field = [&](const Vec3& p) -> CVec3 {
                return dyadic_green(p, y, k).col(col);
            };
            auto curl1 = [&](const Vec3& p) -> CVec3 { return curl_c4(field, p, h); };
            res += (curl_c4(curl1, x, h) - k * k * CVec3(G.col(col))).squaredNorm();
        }
        worst_pde = std::max(worst_pde, std::sqrt(res) / (k * k * G.norm()));
        worst_rec = std::max(
            worst_rec, (G - dyadic_green(y, x, k).transpose()).norm() / G.norm());
    }
    bool decay_ok = true;
    const Vec3 dir = Vec3{0.3, -0.8, 0.5}.normalized();
    const CVec3 p{0.2, 1.0, -0.4};
    double prev = 1e300;
    for (const double r : {1e2 / k, 1e3 / k, 1e4 / k}) {
        const Vec3 x = r * dir;
        const CVec3 f = dyadic_green(x, Vec3::Zero(), k) * p;
        const CVec3 c = curl_x_dyadic_green(x, Vec3::Zero(), k) * p;
        const double q = r * (c - iu * k * ccross(dir.cast<Complex>(), f)).norm();
        if (q >= prev) decay_ok = false;
        prev = q;
    }
    report(1, "kernel correctness", worst_pde <= 1e-3 && worst_rec <= 1e-12 && decay_ok,
           "pde " + num(worst_pde) + ", reciprocity " + num(worst_rec) +
               ", radiation decay " + (decay_ok ? "monotone" : "violated"));
}

void criterion2_ptensor() {
    ContrastProblem p;
    p.shape = ShapeSpec::ball(1.0);
    p.q0 = 1.0;
    p.qj = 2.0;
    p.resolution = 32;
    const Mat3 got = ptensor_numeric(p).tensor.entries;
    const Mat3 exact = ptensor_ball(1.0, 2.0, p.shape.volume()).entries;
    const double err = (got - exact).norm() / exact.norm();

    ContrastProblem unit = p;
    unit.qj = 1.0;
    const Mat3 gu = ptensor_numeric(unit).tensor.entries;
    const double vol = unit.shape.volume();
    const double uerr = (gu - vol * Mat3::Identity()).norm() / (vol * std::sqrt(3.0));
    report(2, "polarization tensors", err <= 0.02 && uerr <= 1e-3,
           "contrast-2 error " + num(err) + ", unit-contrast error " + num(uerr));
}

StudyReport study; // shared by criteria 3 and 4

void criteria34_field_orders() {
    const Scene sc = ball_scene(2.0, 0.1, 2.0, 1.0);
    const std::vector<double> alphas{0.2, 0.1, 0.05};
    std::vector<Vec3> probes;
    for (int s = 0; s < 8; ++s)
        probes.push_back(
            1.5 * Vec3(s & 1 ? 1 : -1, s & 2 ? 1 : -1, s & 4 ? 1 : -1).normalized());
    study = convergence_study(sc, alphas, 16, probes);
    report(3, "leading-order field scaling",
           std::abs(study.slope_background - 3.0) <= 0.2,
           "slope " + num(study.slope_background) + " (want 3.0 +- 0.2)");
    report(4, "ball remainder order", study.slope_asymptotic >= 4.0,
           "slope " + num(study.slope_asymptotic) + " (want >= 4.0)");
}

void criterion5_energy_scaling() {
    const Scene sc = ball_scene(2.0, 0.1, 2.0, 1.0);
    const std::vector<double> alphas{0.2, 0.1, 0.05};
    bool ok = true;
    std::string detail;
    for (const auto weight : {EnergyWeight::paper, EnergyWeight::conventional}) {
        std::vector<double> constants;
        for (const double radius : {0.8, 0.5}) {
            ProbeRegion reg{Vec3{-1.8, 0.0, 0.0}, radius, 6};
            const ScalingFit f =
                energy_scaling_fit(sc, alphas, reg, 0.3, weight, 16);
            if (f.degenerate || std::abs(f.fit.slope - 3.0) > 0.3) ok = false;
            constants.push_back(f.normalized_constant);
            if (!detail.empty()) detail += ", ";
            detail += "slope " + num(f.fit.slope);
        }
        const double spread = std::abs(constants[0] - constants[1]) /
                              std::max(constants[0], constants[1]);
        if (spread > 0.2) ok = false;
        detail += ", C spread " + num(spread);
    }
    report(5, "energy scaling", ok, detail);
}

void criterion6_energy_rate() {
    const Scene sc = ball_scene(2.0, 0.1, 2.0, 3.0);
    const auto tens = ball_tensors(sc);
    const double a3 = sc.alpha * sc.alpha * sc.alpha;
    std::mt19937 rng(7);
    std::normal_distribution<double> nd;
    double worst = 0.0;
    int tested = 0;
    while (tested < 10) {
        Vec3 dir{nd(rng), nd(rng), nd(rng)};
        dir.normalize();
        const Vec3 x = Vec3{-1.0, 0.5, 0.0} + 1.2 * dir;
        if ((x - sc.source.position).norm() < 0.3 || x.norm() < 0.3) continue;
        ++tested;
        auto flux = [&](const Vec3& y) -> CVec3 {
            const FieldSample bg = background_fields(sc, y);
            return (ccross(bg.E, field_correction_H(sc, y, tens)) +
                    ccross(field_correction_E(sc, y, tens), bg.H)) /
                   sc.wave.mu0;
        };
        const Complex assembled = div_c4(flux, x, 1e-3 / sc.wave.k);
        const Complex direct = a3 * energy_rate_perturbation(sc, x);
        worst = std::max(worst, std::abs(assembled - direct) / std::abs(direct));
    }
    report(6, "energy-rate self-consistency", worst <= 1e-3,
           "worst relative mismatch " + num(worst));
}

void criterion7_oracle_gates() {
    // Born slope 2 over weak contrasts.
    const std::vector<double> deltas{0.04, 0.02, 0.01};
    std::vector<double> errs;
    for (const double d : deltas) {
        const Scene sc = ball_scene(2.0, 0.2, 1.0 + d, 1.0);
        const OracleSolution sol = solve_interior(sc, 10);
        const std::vector<CVec3> born = born_field(sc, 10);
        double numr = 0.0, den = 0.0;
        for (std::size_t v = 0; v < born.size(); ++v) {
            numr = std::max(numr, (sol.interior_E[v] - born[v]).norm());
            den = std::max(den, sol.interior_E[v].norm());
        }
        errs.push_back(numr / den);
    }
    const double born_slope = loglog_fit(deltas, errs).slope;

    // Quasi-static interior coefficient.
    Scene qs = ball_scene(0.2, 0.1, 2.0, 1.0);
    qs.source.position = Vec3{5.0, 0.0, 0.0};
    const OracleSolution sol = solve_interior(qs, 16);
    CVec3 mean = CVec3::Zero();
    for (const auto& e : sol.interior_E) mean += e;
    mean /= static_cast<double>(sol.interior_E.size());
    const CVec3 expected =
        0.75 * background_fields(qs, qs.inclusions[0].center).E;
    const double qs_err = (mean - expected).norm() / expected.norm();

    // Forward-operator audit on a full-wave solve.
    const Scene fw = ball_scene(2.0, 0.1, 2.0, 1.0);
    const double audit = forward_residual(fw, solve_interior(fw, 12));

    report(7, "oracle validity gates",
           std::abs(born_slope - 2.0) <= 0.2 && qs_err <= 0.01 && audit <= 1e-8,
           "born slope " + num(born_slope) + ", quasi-static error " + num(qs_err) +
               ", audit " + num(audit));
}

bool same_bytes(const fs::path& a, const fs::path& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str();
}

void criterion8_structure(const std::string& cli, const std::string& config_dir) {
    // Duality: assemble curl(E correction)/(i omega mu0) from the analytic
    // curl identities and compare with the H correction.
    const Scene sc = ball_scene(2.0, 0.1, 2.0, 3.0);
    const auto tens = ball_tensors(sc);
    const auto& w = sc.wave;
    const Vec3 z = sc.inclusions[0].center;
    const auto& inc = sc.inclusions[0];
    const FieldSample bgz = background_fields(sc, z);
    const double a3 = sc.alpha * sc.alpha * sc.alpha;
    double worst_dual = 0.0;
    for (const Vec3& x : {Vec3{-1.5, 0.2, 0.4}, Vec3{0.8, -1.0, 0.6}}) {
        const CMat3 G = dyadic_green(x, z, w.k);
        const CMat3 C = curl_dyadic_green(x, z, w.k);
        const CVec3 mh = tens[0].m_mu.entries.cast<Complex>() * bgz.H;
        const CVec3 me = tens[0].m_eps.entries.cast<Complex>() * bgz.E;
        const CVec3 curl_of_Ec =
            a3 * (-iu * w.omega * (inc.mu - w.mu0) * (-w.k * w.k) * (G * mh) +
                  w.omega * w.omega * w.mu0 * (inc.eps - w.eps0) * (-(C * me)));
        const CVec3 dual = curl_of_Ec / (iu * w.omega * w.mu0);
        const CVec3 direct = field_correction_H(sc, x, tens);
        worst_dual = std::max(worst_dual, (dual - direct).norm() / direct.norm());
    }

    // Degeneracies are exact.
    Scene flat = ball_scene(2.0, 0.1, 1.0, 1.0);
    const auto tflat = ball_tensors(flat);
    Scene frozen = ball_scene(2.0, 0.0, 2.0, 3.0);
    const auto tfrozen = ball_tensors(frozen);
    const Vec3 probe{-1.5, 0.2, 0.4};
    const bool degenerate_ok =
        field_correction_E(flat, probe, tflat).norm() == 0.0 &&
        field_correction_H(flat, probe, tflat).norm() == 0.0 &&
        field_correction_E(frozen, probe, tfrozen).norm() == 0.0;

    // CSV determinism through the CLI.
    bool csv_ok = false;
    std::string csv_note = "cli unavailable";
    if (!cli.empty()) {
        const fs::path work = fs::current_path() / "acceptance_cli_out";
        fs::remove_all(work);
        fs::create_directories(work);
        const std::string cfg = config_dir + "/ball.json";
        const std::string base = "\"" + cli + "\" fields --config \"" + cfg +
                                 "\" --seed 5 --out \"";
        const int r1 = std::system((base + (work / "a").string() + "\"").c_str());
        const int r2 = std::system((base + (work / "b").string() + "\"").c_str());
        csv_ok = r1 == 0 && r2 == 0 &&
                 same_bytes(work / "a" / "fields.csv", work / "b" / "fields.csv");
        csv_note = csv_ok ? "byte-identical" : "mismatch";
        fs::remove_all(work);
    }

    report(8, "structural properties",
           worst_dual <= 1e-12 && degenerate_ok && csv_ok,
           "duality " + num(worst_dual) + ", degeneracies " +
               (degenerate_ok ? "exact" : "violated") + ", csv " + csv_note);
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::string config_dir = argc > 2 ? argv[2] : ".";
    try {
        criterion1_kernel();
        criterion2_ptensor();
        criteria34_field_orders();
        criterion5_energy_scaling();
        criterion6_energy_rate();
        criterion7_oracle_gates();
        criterion8_structure(cli, config_dir);
    } catch (const std::exception& e) {
        std::cerr << "acceptance aborted: " << e.what() << "\n";
        return 1;
    }
    if (failures == 0) std::printf("all acceptance criteria passed\n");
    return failures == 0 ? 0 : 1;
}
