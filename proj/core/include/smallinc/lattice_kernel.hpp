#pragma once

#include <vector>

#include "smallinc/types.hpp"
#include "smallinc/voxels.hpp"

namespace smallinc {

/// Kernel values tabulated on the lattice of voxel-center offsets. Both
/// the static dipolar kernel and the dynamic dyadic kernel are symmetric
/// 3x3 matrices that depend only on the offset and are even in it, so one
/// table per grid serves every source/target pair. Entries carry the cell
/// quadrature weight; the zero offset holds the regularized self term.
template <class Scalar>
struct OffsetTable {
    int nx = 0, ny = 0, nz = 0; // source grid dims
    // 6 packed entries (xx, yy, zz, xy, xz, yz) per offset
    std::vector<Scalar> data;

    std::size_t index(int di, int dj, int dk) const {
        const std::size_t ox = static_cast<std::size_t>(di + nx - 1);
        const std::size_t oy = static_cast<std::size_t>(dj + ny - 1);
        const std::size_t oz = static_cast<std::size_t>(dk + nz - 1);
        return ((oz * static_cast<std::size_t>(2 * ny - 1) + oy) *
                    static_cast<std::size_t>(2 * nx - 1) +
                ox) *
               6;
    }
};

/// Static dipolar kernel (3 rr^T - I)/(4 pi r^3) * cell_volume, self
/// entry -I/3 (equal-volume-sphere principal value vanishes by symmetry).
OffsetTable<double> build_static_table(const LatticeCells& cells);

/// Dynamic dyadic kernel G(r) * cell_volume at physical offsets
/// r = scale * (lattice offset); self entry is the closed-form integral of
/// G over the equal-volume sphere, including the -I/(3 k^2) depolarization
/// contribution.
OffsetTable<Complex> build_dyadic_table(const LatticeCells& cells, double scale,
                                        double k);

/// y_v = sum_{v'} T(v - v') x_{v'} over the occupied cells. x and y are
/// 3 entries per cell, cell order matching cells.coords.
template <class Scalar>
void table_matvec(const OffsetTable<Scalar>& table, const LatticeCells& cells,
                  const Scalar* x, Scalar* y);

/// Closed-form integral of the dyadic kernel over a sphere of the given
/// volume centered at the singularity (isotropic; returns the scalar that
/// multiplies the identity).
Complex dyadic_self_integral(double cell_volume, double k);

} // namespace smallinc
