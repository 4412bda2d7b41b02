#include "smallinc/voxels.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <queue>
#include <stdexcept>

#include "smallinc/scene.hpp"

namespace smallinc {

namespace {
constexpr char kMagic[4] = {'S', 'I', 'V', 'X'};
}

bool VoxelGrid::contains(const Vec3& p) const {
    if (cell <= 0.0) return false;
    const int i = static_cast<int>(std::floor(p[0] / cell + 0.5 * nx));
    const int j = static_cast<int>(std::floor(p[1] / cell + 0.5 * ny));
    const int k = static_cast<int>(std::floor(p[2] / cell + 0.5 * nz));
    return at(i, j, k);
}

std::size_t VoxelGrid::count() const {
    std::size_t n = 0;
    for (auto v : mask) n += (v != 0);
    return n;
}

double VoxelGrid::bounding_radius() const {
    double r2 = 0.0;
    const double half_diag = 0.5 * cell * std::sqrt(3.0);
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                if (at(i, j, k)) r2 = std::max(r2, center_of(i, j, k).squaredNorm());
    return std::sqrt(r2) + half_diag;
}

bool VoxelGrid::connected() const {
    const std::size_t total = count();
    if (total == 0) return false;
    std::vector<std::uint8_t> seen(mask.size(), 0);
    // find a seed
    std::size_t seed = 0;
    while (seed < mask.size() && mask[seed] == 0) ++seed;
    std::queue<std::size_t> q;
    q.push(seed);
    seen[seed] = 1;
    std::size_t visited = 0;
    const int sx = 1, sy = nx, sz = nx * ny;
    while (!q.empty()) {
        const std::size_t idx = q.front();
        q.pop();
        ++visited;
        const int i = static_cast<int>(idx % static_cast<std::size_t>(nx));
        const int j = static_cast<int>((idx / static_cast<std::size_t>(nx)) % static_cast<std::size_t>(ny));
        const int k = static_cast<int>(idx / static_cast<std::size_t>(nx * ny));
        const int di[6] = {1, -1, 0, 0, 0, 0};
        const int dj[6] = {0, 0, 1, -1, 0, 0};
        const int dk[6] = {0, 0, 0, 0, 1, -1};
        for (int n = 0; n < 6; ++n) {
            const int ii = i + di[n], jj = j + dj[n], kk = k + dk[n];
            if (!at(ii, jj, kk)) continue;
            const std::size_t nidx = idx + static_cast<std::size_t>(di[n] * sx + dj[n] * sy + dk[n] * sz);
            if (!seen[nidx]) {
                seen[nidx] = 1;
                q.push(nidx);
            }
        }
    }
    return visited == total;
}

VoxelGrid load_voxel_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open voxel file: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("bad voxel file magic: " + path);
    std::uint32_t dims[3];
    in.read(reinterpret_cast<char*>(dims), sizeof dims);
    VoxelGrid g;
    g.nx = static_cast<int>(dims[0]);
    g.ny = static_cast<int>(dims[1]);
    g.nz = static_cast<int>(dims[2]);
    in.read(reinterpret_cast<char*>(&g.cell), sizeof g.cell);
    const std::size_t n = static_cast<std::size_t>(g.nx) * g.ny * g.nz;
    g.mask.resize(n);
    in.read(reinterpret_cast<char*>(g.mask.data()), static_cast<std::streamsize>(n));
    if (!in) throw std::runtime_error("truncated voxel file: " + path);
    return g;
}

void save_voxel_grid(const VoxelGrid& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write voxel file: " + path);
    out.write(kMagic, 4);
    const std::uint32_t dims[3] = {static_cast<std::uint32_t>(g.nx),
                                   static_cast<std::uint32_t>(g.ny),
                                   static_cast<std::uint32_t>(g.nz)};
    out.write(reinterpret_cast<const char*>(dims), sizeof dims);
    out.write(reinterpret_cast<const char*>(&g.cell), sizeof g.cell);
    out.write(reinterpret_cast<const char*>(g.mask.data()),
              static_cast<std::streamsize>(g.mask.size()));
}

VoxelGrid voxelize_ball(double radius, int cells_per_axis) {
    VoxelGrid g;
    g.nx = g.ny = g.nz = cells_per_axis;
    g.cell = 2.0 * radius / cells_per_axis;
    g.mask.assign(static_cast<std::size_t>(cells_per_axis) * cells_per_axis * cells_per_axis, 0);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                if (g.center_of(i, j, k).norm() <= radius)
                    g.mask[static_cast<std::size_t>((k * g.ny + j) * g.nx + i)] = 1;
    return g;
}

VoxelGrid voxelize_cube(double side, int cells_per_axis) {
    VoxelGrid g;
    g.nx = g.ny = g.nz = cells_per_axis;
    g.cell = side / cells_per_axis;
    g.mask.assign(static_cast<std::size_t>(cells_per_axis) * cells_per_axis * cells_per_axis, 1);
    return g;
}

LatticeCells discretize_shape(const ShapeSpec& shape, int resolution) {
    if (resolution < 2) throw std::invalid_argument("resolution too small");
    LatticeCells out;
    VoxelGrid g;
    if (shape.kind == ShapeSpec::Kind::Ball) {
        g = voxelize_ball(shape.radius, resolution);
    } else {
        g = shape.grid;
    }
    out.dims[0] = g.nx;
    out.dims[1] = g.ny;
    out.dims[2] = g.nz;
    out.cell = g.cell;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                if (g.at(i, j, k)) {
                    out.coords.push_back({i, j, k});
                    out.centers.push_back(g.center_of(i, j, k));
                }
    if (out.coords.empty()) throw std::invalid_argument("empty shape discretization");
    out.cell_volume = g.cell * g.cell * g.cell;
    if (shape.kind == ShapeSpec::Kind::Ball) {
        // Match the quadrature measure to the exact ball volume so the
        // leading volume moment carries no rasterization bias.
        out.cell_volume = shape.volume() / static_cast<double>(out.coords.size());
    }
    return out;
}

} // namespace smallinc
