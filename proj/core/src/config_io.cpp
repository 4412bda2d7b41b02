#include "smallinc/config_io.hpp"

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace smallinc {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw ConfigError("config error at '" + path + "': " + what);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) bad(path + "/" + key, "unknown key");
    }
}

double get_number(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) bad(path + "/" + key, "missing required key");
    const auto& v = obj.at(key);
    if (!v.is_number()) bad(path + "/" + key, "expected a number");
    return v.get<double>();
}

Vec3 get_vec3(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) bad(path + "/" + key, "missing required key");
    const auto& v = obj.at(key);
    if (!v.is_array() || v.size() != 3) bad(path + "/" + key, "expected [x, y, z]");
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        if (!v[static_cast<std::size_t>(i)].is_number())
            bad(path + "/" + key, "expected numeric components");
        out[i] = v[static_cast<std::size_t>(i)].get<double>();
    }
    return out;
}

ShapeSpec parse_shape(const json& obj, const std::string& path,
                      const std::string& base_dir) {
    if (!obj.is_object()) bad(path, "expected an object");
    reject_unknown(obj, path, {"ball", "voxels"});
    if (obj.contains("ball") == obj.contains("voxels"))
        bad(path, "expected exactly one of 'ball' or 'voxels'");
    if (obj.contains("ball")) {
        const auto& b = obj.at("ball");
        reject_unknown(b, path + "/ball", {"radius"});
        return ShapeSpec::ball(get_number(b, path + "/ball", "radius"));
    }
    const auto& v = obj.at("voxels");
    reject_unknown(v, path + "/voxels", {"path", "cell"});
    if (!v.contains("path") || !v.at("path").is_string())
        bad(path + "/voxels/path", "expected a string path");
    const std::filesystem::path file =
        std::filesystem::path(base_dir) / v.at("path").get<std::string>();
    VoxelGrid grid;
    try {
        grid = load_voxel_grid(file.string());
    } catch (const std::exception& e) {
        bad(path + "/voxels/path", e.what());
    }
    grid.cell = get_number(v, path + "/voxels", "cell");
    return ShapeSpec::voxelized(std::move(grid));
}

} // namespace

SceneConfig parse_scene_config(const std::string& json_text,
                               const std::string& base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config error at '/': expected an object");
    reject_unknown(root, "", {"wave", "alpha", "inclusions", "source", "c0",
                              "energy_weight"});

    SceneConfig out;
    Scene& s = out.scene;

    if (!root.contains("wave")) bad("/wave", "missing required key");
    const auto& wave = root.at("wave");
    reject_unknown(wave, "/wave", {"eps0", "mu0", "omega"});
    s.wave = WaveContext::make(get_number(wave, "/wave", "eps0"),
                               get_number(wave, "/wave", "mu0"),
                               get_number(wave, "/wave", "omega"));

    s.alpha = get_number(root, "", "alpha");
    s.c0 = get_number(root, "", "c0");

    if (!root.contains("inclusions") || !root.at("inclusions").is_array())
        bad("/inclusions", "expected an array");
    std::size_t idx = 0;
    for (const auto& inc_json : root.at("inclusions")) {
        const std::string path = "/inclusions/" + std::to_string(idx++);
        reject_unknown(inc_json, path, {"center", "shape", "eps", "mu"});
        InclusionSpec inc;
        inc.center = get_vec3(inc_json, path, "center");
        if (!inc_json.contains("shape")) bad(path + "/shape", "missing required key");
        inc.shape = parse_shape(inc_json.at("shape"), path + "/shape", base_dir);
        inc.eps = get_number(inc_json, path, "eps");
        inc.mu = get_number(inc_json, path, "mu");
        s.inclusions.push_back(std::move(inc));
    }

    if (!root.contains("source")) bad("/source", "missing required key");
    const auto& src = root.at("source");
    reject_unknown(src, "/source", {"position", "moment_re", "moment_im"});
    s.source.position = get_vec3(src, "/source", "position");
    const Vec3 re = get_vec3(src, "/source", "moment_re");
    const Vec3 im = get_vec3(src, "/source", "moment_im");
    s.source.moment = re.cast<Complex>() + iu * im.cast<Complex>();

    if (root.contains("energy_weight")) {
        const auto& w = root.at("energy_weight");
        if (!w.is_string()) bad("/energy_weight", "expected 'paper' or 'conventional'");
        const std::string v = w.get<std::string>();
        if (v == "paper")
            out.energy_weight = EnergyWeight::paper;
        else if (v == "conventional")
            out.energy_weight = EnergyWeight::conventional;
        else
            bad("/energy_weight", "expected 'paper' or 'conventional'");
    }
    return out;
}

SceneConfig load_scene_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene_config(buf.str(),
                              std::filesystem::path(path).parent_path().string());
}

} // namespace smallinc
