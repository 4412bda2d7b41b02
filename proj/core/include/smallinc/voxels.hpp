#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "smallinc/types.hpp"

namespace smallinc {

/// Boolean voxel lattice in local (shape) coordinates, centered at the
/// origin: voxel (i,j,k) has center cell*(i - nx/2 + 0.5, ...).
struct VoxelGrid {
    int nx = 0, ny = 0, nz = 0;
    double cell = 0.0;
    std::vector<std::uint8_t> mask; // x-fastest, size nx*ny*nz

    bool at(int i, int j, int k) const {
        if (i < 0 || j < 0 || k < 0 || i >= nx || j >= ny || k >= nz) return false;
        return mask[static_cast<std::size_t>((k * ny + j) * nx + i)] != 0;
    }
    Vec3 center_of(int i, int j, int k) const {
        return {cell * (i - 0.5 * nx + 0.5),
                cell * (j - 0.5 * ny + 0.5),
                cell * (k - 0.5 * nz + 0.5)};
    }
    /// Membership test for a point in local coordinates.
    bool contains(const Vec3& p) const;
    std::size_t count() const;
    double volume() const { return static_cast<double>(count()) * cell * cell * cell; }
    /// Radius of the smallest origin-centered ball covering all set voxels.
    double bounding_radius() const;
    /// True if the set voxels form a single 6-connected component.
    bool connected() const;
};

VoxelGrid load_voxel_grid(const std::string& path);
void save_voxel_grid(const VoxelGrid& g, const std::string& path);

/// Rasterize an origin-centered ball; used by tests and the ptensor CLI.
VoxelGrid voxelize_ball(double radius, int cells_per_axis);

/// Axis-aligned cube of the given side, centered at the origin.
VoxelGrid voxelize_cube(double side, int cells_per_axis);

/// List of occupied lattice cells, the form the dense kernel operators
/// consume. Coordinates are integer cell indices relative to the grid corner.
struct LatticeCells {
    std::vector<std::array<int, 3>> coords;
    std::vector<Vec3> centers;   // local (unscaled) coordinates
    int dims[3] = {0, 0, 0};
    double cell = 0.0;           // cell edge length
    double cell_volume = 0.0;    // quadrature weight per cell (may be volume-matched)
};

/// Discretize a shape at the given per-axis resolution. For balls the cell
/// quadrature weight is rescaled so the total matches the exact ball volume.
struct ShapeSpec;
LatticeCells discretize_shape(const ShapeSpec& shape, int resolution);

} // namespace smallinc
