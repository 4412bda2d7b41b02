#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smallinc/asymptotics.hpp"
#include "smallinc/config_io.hpp"
#include "smallinc/energy.hpp"
#include "smallinc/ls_oracle.hpp"
#include "smallinc/polarization.hpp"
#include "smallinc/workers.hpp"

using namespace smallinc;
using nlohmann::json;
namespace fs = std::filesystem;

#ifndef SMALLINC_VERSION
#define SMALLINC_VERSION "0.0.0"
#endif

namespace {

// Shortest round-trip decimal form; CSV output must be byte-deterministic.
std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw CliError("cannot parse number '" + tok + "'");
        }
    }
    if (out.empty()) throw CliError("empty numeric list");
    return out;
}

std::vector<Vec3> load_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open points file: " + path);
    std::vector<Vec3> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto nums = parse_list(line);
        if (nums.size() != 3)
            throw CliError("points file rows must be x,y,z: '" + line + "'");
        pts.push_back(Vec3{nums[0], nums[1], nums[2]});
    }
    if (pts.empty()) throw CliError("points file has no rows");
    return pts;
}

// "c=x,y,z r=R"
ProbeRegion parse_region(const std::string& text) {
    ProbeRegion reg;
    std::stringstream ss(text);
    std::string tok;
    bool have_c = false, have_r = false;
    while (ss >> tok) {
        if (tok.rfind("c=", 0) == 0) {
            const auto nums = parse_list(tok.substr(2));
            if (nums.size() != 3) throw CliError("region center needs x,y,z");
            reg.center = Vec3{nums[0], nums[1], nums[2]};
            have_c = true;
        } else if (tok.rfind("r=", 0) == 0) {
            reg.radius = std::stod(tok.substr(2));
            have_r = true;
        } else {
            throw CliError("unrecognized region token '" + tok + "'");
        }
    }
    if (!have_c || !have_r) throw CliError("region must be 'c=x,y,z r=R'");
    return reg;
}

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json mat_json(const Mat3& m) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i)
        rows.push_back(json::array({m(i, 0), m(i, 1), m(i, 2)}));
    return rows;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError("cannot write " + path.string());
    out << text;
}

struct RunContext {
    std::string subcommand;
    std::string config_path;
    fs::path out_dir;
    unsigned seed = 0;
    int threads = 1;
    SceneConfig cfg;
};

void write_manifest(const RunContext& rc, json resolved) {
    json manifest;
    manifest["subcommand"] = rc.subcommand;
    manifest["config"] = rc.config_path;
    manifest["out"] = rc.out_dir.string();
    manifest["seed"] = rc.seed;
    manifest["threads"] = rc.threads;
    manifest["version"] = SMALLINC_VERSION;
    manifest["resolved"] = std::move(resolved);
    write_text(rc.out_dir / "run.json", manifest.dump(2) + "\n");
}

void append_fields_row(std::string& csv, const Vec3& x, const FieldSample& bg,
                       const CVec3& ae, const CVec3& ah) {
    csv += fmt(x[0]) + "," + fmt(x[1]) + "," + fmt(x[2]);
    const CVec3* blocks[4] = {&bg.E, &bg.H, &ae, &ah};
    for (const CVec3* b : blocks)
        for (int i = 0; i < 3; ++i)
            csv += "," + fmt((*b)[i].real()) + "," + fmt((*b)[i].imag());
    csv += "\n";
}

int run_fields(RunContext& rc, const std::string& points_path) {
    const Scene& sc = rc.cfg.scene;
    std::vector<Vec3> pts = points_path.empty()
                                ? default_probe_points(sc, rc.seed)
                                : load_points_csv(points_path);
    const auto tens = ball_tensors(sc);
    std::string csv = "x,y,z";
    for (const char* m : {"bg", "asym"})
        for (const char* f : {"E", "H"})
            for (const char* c : {"x", "y", "z"})
                for (const char* p : {"re", "im"})
                    csv += std::string(",") + m + "_" + f + c + "_" + p;
    csv += "\n";
    for (const Vec3& x : pts) {
        const FieldSample bg = background_fields(sc, x);
        append_fields_row(csv, x, bg, asymptotic_E(sc, x, tens),
                          asymptotic_H(sc, x, tens));
    }
    write_text(rc.out_dir / "fields.csv", csv);
    json resolved;
    resolved["points"] = points_path.empty() ? "default" : points_path;
    resolved["n_points"] = pts.size();
    resolved["source_clearance"] = sc.resolved_source_clearance();
    write_manifest(rc, std::move(resolved));
    return 0;
}

int run_ptensor(RunContext& rc, int resolution) {
    const Scene& sc = rc.cfg.scene;
    json out;
    out["inclusions"] = json::array();
    for (std::size_t j = 0; j < sc.inclusions.size(); ++j) {
        const auto& inc = sc.inclusions[j];
        json entry;
        entry["index"] = j;
        entry["resolution"] = resolution;
        for (const char* which : {"eps", "mu"}) {
            ContrastProblem p;
            p.shape = inc.shape;
            p.resolution = resolution;
            if (std::string(which) == "eps") {
                p.q0 = sc.wave.eps0;
                p.qj = inc.eps;
            } else {
                p.q0 = sc.wave.mu0;
                p.qj = inc.mu;
            }
            const NumericTensor r = ptensor_numeric(p);
            json t;
            t["contrast"] = r.tensor.contrast;
            t["shape_volume"] = r.tensor.shape_volume;
            t["matrix"] = mat_json(r.tensor.entries);
            t["iterations"] = r.diagnostics.iterations;
            t["final_residual"] = r.diagnostics.final_residual;
            entry[which] = std::move(t);
        }
        out["inclusions"].push_back(std::move(entry));
    }
    write_text(rc.out_dir / "ptensor.json", out.dump(2) + "\n");
    json resolved;
    resolved["resolution"] = resolution;
    write_manifest(rc, std::move(resolved));
    return 0;
}

int run_oracle(RunContext& rc, int vpd, double tol) {
    const Scene& sc = rc.cfg.scene;
    const OracleSolution sol = solve_interior(sc, vpd, tol);

    std::ofstream bin(rc.out_dir / "interior_E.bin", std::ios::binary);
    if (!bin) throw CliError("cannot write interior_E.bin");
    for (const CVec3& e : sol.interior_E)
        for (int i = 0; i < 3; ++i) {
            const double re = e[i].real(), im = e[i].imag();
            bin.write(reinterpret_cast<const char*>(&re), sizeof(double));
            bin.write(reinterpret_cast<const char*>(&im), sizeof(double));
        }
    bin.close();

    json meta;
    meta["iterations"] = sol.iterations;
    meta["final_residual"] = sol.final_residual;
    meta["voxels_per_diameter"] = vpd;
    meta["tolerance"] = tol;
    meta["grids"] = json::array();
    for (const auto& g : sol.grids) {
        json grid;
        grid["dims"] = json::array(
            {g.cells.dims[0], g.cells.dims[1], g.cells.dims[2]});
        grid["count"] = g.centers.size();
        grid["cell_volume"] = g.cell_volume;
        grid["offset"] = g.offset;
        meta["grids"].push_back(std::move(grid));
    }
    write_text(rc.out_dir / "oracle.json", meta.dump(2) + "\n");
    json resolved;
    resolved["voxels_per_diameter"] = vpd;
    resolved["tolerance"] = tol;
    write_manifest(rc, std::move(resolved));
    return 0;
}

int run_convergence(RunContext& rc, const std::string& alphas_text, int vpd) {
    const Scene& sc = rc.cfg.scene;
    const std::vector<double> alphas = parse_list(alphas_text);
    const std::vector<Vec3> probes = default_probe_points(sc, rc.seed);
    const StudyReport rep = convergence_study(sc, alphas, vpd, probes);

    std::string csv =
        "alpha,iterations,final_residual,err_background,err_asymptotic";
    for (std::size_t i = 0; i < rep.probes.size(); ++i) {
        csv += ",probe" + std::to_string(i) + "_err_background";
        csv += ",probe" + std::to_string(i) + "_err_asymptotic";
    }
    csv += "\n";
    for (const auto& row : rep.rows) {
        csv += fmt(row.alpha) + "," + std::to_string(row.iterations) + "," +
               fmt(row.final_residual) + "," + fmt(row.err_background) + "," +
               fmt(row.err_asymptotic);
        for (std::size_t i = 0; i < rep.probes.size(); ++i)
            csv += "," + fmt(row.probe_err_background[i]) + "," +
                   fmt(row.probe_err_asymptotic[i]);
        csv += "\n";
    }
    write_text(rc.out_dir / "convergence.csv", csv);

    json out;
    out["slope_background"] = rep.slope_background;
    out["slope_asymptotic"] = rep.slope_asymptotic;
    out["probes"] = json::array();
    for (const Vec3& p : rep.probes) out["probes"].push_back(vec_json(p));
    write_text(rc.out_dir / "convergence.json", out.dump(2) + "\n");

    json resolved;
    resolved["alphas"] = alphas;
    resolved["voxels_per_diameter"] = vpd;
    resolved["n_probes"] = probes.size();
    write_manifest(rc, std::move(resolved));
    return 0;
}

int run_energy(RunContext& rc, const std::string& region_text, double t,
               const std::string& alphas_text, int vpd) {
    const Scene& sc = rc.cfg.scene;
    const ProbeRegion region = parse_region(region_text);
    const std::vector<double> alphas = parse_list(alphas_text);
    const ScalingFit fit =
        energy_scaling_fit(sc, alphas, region, t, rc.cfg.energy_weight, vpd);

    std::string csv = "alpha,abs_energy_delta\n";
    for (std::size_t i = 0; i < fit.alphas.size(); ++i)
        csv += fmt(fit.alphas[i]) + "," + fmt(fit.deltas[i]) + "\n";
    write_text(rc.out_dir / "energy.csv", csv);

    json out;
    out["degenerate"] = fit.degenerate;
    out["slope"] = fit.fit.slope;
    out["intercept"] = fit.fit.intercept;
    out["fit_residual"] = fit.fit.residual;
    out["implied_constant"] = fit.implied_constant;
    out["normalized_constant"] = fit.normalized_constant;
    out["background_energy"] = fit.background_energy;
    out["time"] = t;
    out["region"] = {{"center", vec_json(region.center)},
                     {"radius", region.radius},
                     {"quad_order", region.quad_order}};
    out["weight"] =
        rc.cfg.energy_weight == EnergyWeight::paper ? "paper" : "conventional";
    write_text(rc.out_dir / "energy.json", out.dump(2) + "\n");

    json resolved;
    resolved["alphas"] = alphas;
    resolved["voxels_per_diameter"] = vpd;
    resolved["time"] = t;
    write_manifest(rc, std::move(resolved));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"small-inclusion electromagnetic perturbation toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", points_path, region_text;
    std::string alphas_text = "0.2,0.1,0.05";
    unsigned seed = 0;
    int resolution = 16, vpd = 16;
    double tol = 1e-8, t = 0.3;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "scene config JSON")->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "seed for default probe points");
    };

    CLI::App* fields = app.add_subcommand("fields", "background and expansion fields");
    add_common(fields);
    fields->add_option("--points", points_path, "CSV of probe points (x,y,z rows)");

    CLI::App* ptensor = app.add_subcommand("ptensor", "numeric polarization tensors");
    add_common(ptensor);
    ptensor->add_option("--resolution", resolution, "cells per axis (>= 8)");

    CLI::App* oracle = app.add_subcommand("oracle", "volume-integral reference solve");
    add_common(oracle);
    oracle->add_option("--vpd", vpd, "voxels per shape diameter");
    oracle->add_option("--tol", tol, "solver tolerance");

    CLI::App* convergence =
        app.add_subcommand("convergence", "alpha sweep against the expansion");
    add_common(convergence);
    convergence->add_option("--alphas", alphas_text, "comma-separated scales");
    convergence->add_option("--vpd", vpd, "voxels per shape diameter");

    CLI::App* energy = app.add_subcommand("energy", "energy perturbation scaling fit");
    add_common(energy);
    energy->add_option("--region", region_text, "probe region 'c=x,y,z r=R'")
        ->required();
    energy->add_option("--t", t, "evaluation time");
    energy->add_option("--alphas", alphas_text, "comma-separated scales");
    energy->add_option("--vpd", vpd, "voxels per shape diameter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    RunContext rc;
    try {
        rc.threads = 1;
        if (const char* env = std::getenv("SMALLINC_THREADS")) {
            try {
                rc.threads = std::stoi(env);
            } catch (const std::exception&) {
                throw CliError("SMALLINC_THREADS must be an integer");
            }
            if (rc.threads < 1) throw CliError("SMALLINC_THREADS must be >= 1");
        }
        set_worker_count(rc.threads);

        rc.subcommand = app.get_subcommands().front()->get_name();
        rc.config_path = config_path;
        rc.out_dir = out_dir;
        rc.seed = seed;
        fs::create_directories(rc.out_dir);

        rc.cfg = load_scene_config(config_path);
        const ValidationReport rep = validate_scene(rc.cfg.scene);
        if (!rep.ok) {
            std::cerr << "invalid scene:\n";
            for (const auto& v : rep.violations) std::cerr << "  - " << v << "\n";
            return 2;
        }

        if (rc.subcommand == "fields") return run_fields(rc, points_path);
        if (rc.subcommand == "ptensor") return run_ptensor(rc, resolution);
        if (rc.subcommand == "oracle") return run_oracle(rc, vpd, tol);
        if (rc.subcommand == "convergence")
            return run_convergence(rc, alphas_text, vpd);
        return run_energy(rc, region_text, t, alphas_text, vpd);
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        std::string csv = "iteration,relative_residual\n";
        for (std::size_t i = 0; i < e.residual_history.size(); ++i)
            csv += std::to_string(i) + "," + fmt(e.residual_history[i]) + "\n";
        try {
            write_text(rc.out_dir / "residual_history.csv", csv);
        } catch (const std::exception&) {
        }
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const CliError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
