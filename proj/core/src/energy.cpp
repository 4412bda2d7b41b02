#include "smallinc/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "smallinc/fd.hpp"
#include "smallinc/ls_oracle.hpp"

namespace smallinc {

Vec3 poynting(const CVec3& E, const CVec3& H, double t, double omega, double mu0) {
    const Complex phase = std::exp(-iu * omega * t);
    const Vec3 e = (E * phase).real();
    const Vec3 h = (H * phase).real();
    return e.cross(h) / mu0;
}

double div_poynting(const FieldProvider& provider, const WaveContext& wave,
                    const Vec3& x, double t) {
    const double h_step = 1e-3 / wave.k;
    const Complex phase = std::exp(-iu * wave.omega * t);
    auto e_inst = [&](const Vec3& y) -> Vec3 {
        return (provider(y).E * phase).real();
    };
    auto h_inst = [&](const Vec3& y) -> Vec3 {
        return (provider(y).H * phase).real();
    };
    const FieldSample s = provider(x);
    const Vec3 e = (s.E * phase).real();
    const Vec3 h = (s.H * phase).real();
    const Vec3 curl_e = curl_c4(e_inst, x, h_step);
    const Vec3 curl_h = curl_c4(h_inst, x, h_step);
    return (h.dot(curl_e) - e.dot(curl_h)) / wave.mu0;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
            const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nodes[static_cast<std::size_t>(i)] = x;
        weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

} // namespace

EnergyReport instantaneous_energy(const FieldProvider& provider,
                                  const ProbeRegion& region, const Scene& scene,
                                  double t, EnergyWeight weight,
                                  FieldProvenance provenance) {
    if (!(region.radius > 0) || region.quad_order < 1)
        throw std::domain_error("invalid probe region");
    if ((scene.source.position - region.center).norm() <= region.radius)
        throw std::domain_error("probe region must exclude the source");
    for (const auto& inc : scene.inclusions) {
        const double reach = scene.alpha * inc.shape.bounding_radius();
        if ((inc.center - region.center).norm() <= region.radius + reach)
            throw std::domain_error("probe region must exclude all scaled inclusions");
    }

    const int q = region.quad_order;
    std::vector<double> rn, rw, un, uw;
    gauss_legendre(q, rn, rw);
    gauss_legendre(q, un, uw);
    const int np = 2 * q;
    const double wphi = 2.0 * M_PI / np;
    const Complex phase = std::exp(-iu * scene.wave.omega * t);

    double acc = 0.0;
    for (int ir = 0; ir < q; ++ir) {
        const double r = 0.5 * region.radius * (rn[static_cast<std::size_t>(ir)] + 1.0);
        const double wr = 0.5 * region.radius * rw[static_cast<std::size_t>(ir)] * r * r;
        for (int iu_ = 0; iu_ < q; ++iu_) {
            const double u = un[static_cast<std::size_t>(iu_)];
            const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
            for (int ip = 0; ip < np; ++ip) {
                const double phi = wphi * (ip + 0.5);
                const Vec3 node = region.center +
                                  r * Vec3{su * std::cos(phi), su * std::sin(phi), u};
                const Material m = material_at(scene, node);
                const FieldSample s = provider(node);
                const Vec3 e = (s.E * phase).real();
                const Vec3 h = (s.H * phase).real();
                const double wh =
                    weight == EnergyWeight::paper ? 1.0 / m.mu : m.mu;
                acc += wr * uw[static_cast<std::size_t>(iu_)] * wphi * 0.5 *
                       (m.eps * e.squaredNorm() + wh * h.squaredNorm());
            }
        }
    }

    EnergyReport rep;
    rep.value = acc;
    rep.region = region;
    rep.time = t;
    rep.provenance = provenance;
    return rep;
}

ScalingFit energy_scaling_fit(const Scene& scene_template,
                              std::span<const double> alphas,
                              const ProbeRegion& region, double t,
                              EnergyWeight weight, int voxels_per_diameter) {
    if (alphas.size() < 3) throw std::invalid_argument("need >=3 scales");

    Scene bg_scene = scene_template;
    bg_scene.alpha = 0.0;
    auto bg_provider = [&bg_scene](const Vec3& x) {
        return background_fields(bg_scene, x);
    };
    const double e0 = instantaneous_energy(bg_provider, region, bg_scene, t, weight,
                                           FieldProvenance::background)
                          .value;

    ScalingFit out;
    out.background_energy = e0;
    for (const double a : alphas) {
        Scene scene = scene_template;
        scene.alpha = a;
        OracleSolution sol = solve_interior(scene, voxels_per_diameter);
        auto provider = [&scene, &sol](const Vec3& x) {
            return scattered_field(scene, sol, x);
        };
        const double ea = instantaneous_energy(provider, region, scene, t, weight,
                                               FieldProvenance::oracle)
                              .value;
        out.alphas.push_back(a);
        out.deltas.push_back(std::abs(ea - e0));
    }

    double max_c = 0.0;
    for (std::size_t i = 0; i < out.alphas.size(); ++i)
        max_c = std::max(max_c,
                         out.deltas[i] / (out.alphas[i] * out.alphas[i] * out.alphas[i]));
    out.implied_constant = max_c;
    out.normalized_constant = e0 > 0 ? max_c / e0 : 0.0;

    const double floor = 1e-10 * e0;
    if (*std::max_element(out.deltas.begin(), out.deltas.end()) < floor) {
        out.degenerate = true;
        return out;
    }
    out.fit = loglog_fit(out.alphas, out.deltas);
    return out;
}

} // namespace smallinc
