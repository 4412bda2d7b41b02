#pragma once

#include "smallinc/types.hpp"

namespace smallinc {

/// Finite-difference stencils used both by the energy module and by the
/// self-verification tests of the analytic kernels. F maps Vec3 to a
/// scalar or Eigen vector.

template <class F>
auto partial_c2(F&& f, Vec3 x, int axis, double h) {
    Vec3 xp = x, xm = x;
    xp[axis] += h;
    xm[axis] -= h;
    return ((f(xp) - f(xm)) / (2.0 * h)).eval();
}

template <class F>
auto partial_c2_scalar(F&& f, Vec3 x, int axis, double h) {
    Vec3 xp = x, xm = x;
    xp[axis] += h;
    xm[axis] -= h;
    return (f(xp) - f(xm)) / (2.0 * h);
}

/// Fourth-order centered first derivative.
template <class F>
auto partial_c4(F&& f, Vec3 x, int axis, double h) {
    Vec3 x1 = x, x2 = x, x3 = x, x4 = x;
    x1[axis] += 2 * h; x2[axis] += h; x3[axis] -= h; x4[axis] -= 2 * h;
    return ((-f(x1) + 8.0 * f(x2) - 8.0 * f(x3) + f(x4)) / (12.0 * h)).eval();
}

/// Fourth-order curl of a 3-vector field.
template <class F>
auto curl_c4(F&& f, const Vec3& x, double h) {
    auto dx = partial_c4(f, x, 0, h);
    auto dy = partial_c4(f, x, 1, h);
    auto dz = partial_c4(f, x, 2, h);
    decltype(dx) out;
    out[0] = dy[2] - dz[1];
    out[1] = dz[0] - dx[2];
    out[2] = dx[1] - dy[0];
    return out;
}

/// Second-order curl of a 3-vector field.
template <class F>
auto curl_c2(F&& f, const Vec3& x, double h) {
    auto dx = partial_c2(f, x, 0, h);
    auto dy = partial_c2(f, x, 1, h);
    auto dz = partial_c2(f, x, 2, h);
    decltype(dx) out;
    out[0] = dy[2] - dz[1];
    out[1] = dz[0] - dx[2];
    out[2] = dx[1] - dy[0];
    return out;
}

/// Fourth-order divergence of a 3-vector field.
template <class F>
auto div_c4(F&& f, const Vec3& x, double h) {
    auto dx = partial_c4(f, x, 0, h);
    auto dy = partial_c4(f, x, 1, h);
    auto dz = partial_c4(f, x, 2, h);
    return dx[0] + dy[1] + dz[2];
}

/// Second-order 7-point Laplacian of a scalar field.
template <class F>
auto laplacian_c2(F&& f, const Vec3& x, double h) {
    auto acc = -6.0 * f(x);
    for (int axis = 0; axis < 3; ++axis) {
        Vec3 xp = x, xm = x;
        xp[axis] += h;
        xm[axis] -= h;
        acc += f(xp) + f(xm);
    }
    return acc / (h * h);
}

} // namespace smallinc
