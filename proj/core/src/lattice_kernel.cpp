#include "smallinc/lattice_kernel.hpp"

#include <cmath>
#include <thread>

#include "smallinc/green.hpp"
#include "smallinc/workers.hpp"

namespace smallinc {

Complex dyadic_self_integral(double cell_volume, double k) {
    // Integral of the dyadic kernel over the equal-volume sphere around
    // the singularity: trace identity gives
    //   (2/(3k^2)) [(1 - ika) e^{ika} - 1] - 1/(3k^2)
    // per diagonal entry; the -1/(3k^2) part is the depolarization term.
    const double a = std::cbrt(3.0 * cell_volume / (4.0 * M_PI));
    const double k2 = k * k;
    return 2.0 / (3.0 * k2) * ((1.0 - iu * k * a) * std::exp(iu * k * a) - 1.0) -
           1.0 / (3.0 * k2);
}

OffsetTable<double> build_static_table(const LatticeCells& cells) {
    OffsetTable<double> t;
    t.nx = cells.dims[0];
    t.ny = cells.dims[1];
    t.nz = cells.dims[2];
    const int ex = 2 * t.nx - 1, ey = 2 * t.ny - 1, ez = 2 * t.nz - 1;
    t.data.assign(static_cast<std::size_t>(ex) * ey * ez * 6, 0.0);
    const double h = cells.cell;
    const double vol = cells.cell_volume;
    for (int dk = -(t.nz - 1); dk <= t.nz - 1; ++dk)
        for (int dj = -(t.ny - 1); dj <= t.ny - 1; ++dj)
            for (int di = -(t.nx - 1); di <= t.nx - 1; ++di) {
                double* e = &t.data[t.index(di, dj, dk)];
                if (di == 0 && dj == 0 && dk == 0) {
                    // -I/3 self term; the equal-volume-sphere principal
                    // value of the dipolar kernel vanishes by symmetry.
                    e[0] = e[1] = e[2] = -1.0 / 3.0;
                    continue;
                }
                const Vec3 r{h * di, h * dj, h * dk};
                const double rn = r.norm();
                const Vec3 u = r / rn;
                const double c = vol / (4.0 * M_PI * rn * rn * rn);
                e[0] = c * (3.0 * u[0] * u[0] - 1.0);
                e[1] = c * (3.0 * u[1] * u[1] - 1.0);
                e[2] = c * (3.0 * u[2] * u[2] - 1.0);
                e[3] = c * 3.0 * u[0] * u[1];
                e[4] = c * 3.0 * u[0] * u[2];
                e[5] = c * 3.0 * u[1] * u[2];
            }
    return t;
}

OffsetTable<Complex> build_dyadic_table(const LatticeCells& cells, double scale,
                                        double k) {
    OffsetTable<Complex> t;
    t.nx = cells.dims[0];
    t.ny = cells.dims[1];
    t.nz = cells.dims[2];
    const int ex = 2 * t.nx - 1, ey = 2 * t.ny - 1, ez = 2 * t.nz - 1;
    t.data.assign(static_cast<std::size_t>(ex) * ey * ez * 6, Complex{});
    const double h = scale * cells.cell;
    const double vol = scale * scale * scale * cells.cell_volume;
    for (int dk = -(t.nz - 1); dk <= t.nz - 1; ++dk)
        for (int dj = -(t.ny - 1); dj <= t.ny - 1; ++dj)
            for (int di = -(t.nx - 1); di <= t.nx - 1; ++di) {
                Complex* e = &t.data[t.index(di, dj, dk)];
                if (di == 0 && dj == 0 && dk == 0) {
                    e[0] = e[1] = e[2] = dyadic_self_integral(vol, k);
                    continue;
                }
                const Vec3 r{h * di, h * dj, h * dk};
                const CMat3 g = dyadic_green(r, Vec3::Zero(), k) * vol;
                e[0] = g(0, 0);
                e[1] = g(1, 1);
                e[2] = g(2, 2);
                e[3] = g(0, 1);
                e[4] = g(0, 2);
                e[5] = g(1, 2);
            }
    return t;
}

template <class Scalar>
void table_matvec(const OffsetTable<Scalar>& table, const LatticeCells& cells,
                  const Scalar* x, Scalar* y) {
    const std::size_t n = cells.coords.size();
    const std::size_t sy = static_cast<std::size_t>(2 * table.nx - 1);
    const std::size_t sz = sy * static_cast<std::size_t>(2 * table.ny - 1);
    const std::size_t c0 = (static_cast<std::size_t>(table.nz - 1) * sz +
                            static_cast<std::size_t>(table.ny - 1) * sy +
                            static_cast<std::size_t>(table.nx - 1));
    // Per-cell linear codes so the pair offset is a single subtraction.
    std::vector<std::ptrdiff_t> code(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& c = cells.coords[v];
        code[v] = static_cast<std::ptrdiff_t>(c[2]) * static_cast<std::ptrdiff_t>(sz) +
                  static_cast<std::ptrdiff_t>(c[1]) * static_cast<std::ptrdiff_t>(sy) +
                  c[0];
    }
    const Scalar* tab = table.data.data();
    auto run_rows = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t a = lo; a < hi; ++a) {
            Scalar acc0{}, acc1{}, acc2{};
            const std::ptrdiff_t base =
                code[a] + static_cast<std::ptrdiff_t>(c0);
            for (std::size_t b = 0; b < n; ++b) {
                const Scalar* e = tab + static_cast<std::size_t>(base - code[b]) * 6;
                const Scalar x0 = x[3 * b], x1 = x[3 * b + 1], x2 = x[3 * b + 2];
                acc0 += e[0] * x0 + e[3] * x1 + e[4] * x2;
                acc1 += e[3] * x0 + e[1] * x1 + e[5] * x2;
                acc2 += e[4] * x0 + e[5] * x1 + e[2] * x2;
            }
            y[3 * a] = acc0;
            y[3 * a + 1] = acc1;
            y[3 * a + 2] = acc2;
        }
    };
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n ? n : 1);
    if (workers <= 1) {
        run_rows(0, n);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        if (lo >= n) break;
        pool.emplace_back(run_rows, lo, std::min(n, lo + chunk));
    }
    for (auto& th : pool) th.join();
}

template void table_matvec<double>(const OffsetTable<double>&, const LatticeCells&,
                                   const double*, double*);
template void table_matvec<Complex>(const OffsetTable<Complex>&, const LatticeCells&,
                                    const Complex*, Complex*);

} // namespace smallinc
