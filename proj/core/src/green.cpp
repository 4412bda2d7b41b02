#include "smallinc/green.hpp"

#include <cmath>

namespace smallinc {

namespace {

void check_separation(double r, double k) {
    // Absolute-zero separation is always singular; otherwise guard on k*r
    // so the static kernel (k = 0) stays evaluable at finite r.
    if (!(r > 0.0) || (k > 0.0 && k * r < 1e-8)) throw KernelSingularity{};
}

} // namespace

Complex scalar_green(const Vec3& x, const Vec3& xp, double k) {
    const double r = (x - xp).norm();
    check_separation(r, k);
    return std::exp(iu * k * r) / (4.0 * M_PI * r);
}

CVec3 grad_scalar_green(const Vec3& x, const Vec3& xp, double k) {
    const Vec3 d = x - xp;
    const double r = d.norm();
    check_separation(r, k);
    const Complex g = std::exp(iu * k * r) / (4.0 * M_PI * r);
    // g'(r) = g (ik - 1/r), gradient along the unit separation vector
    return (g * (iu * k - 1.0 / r) / r) * d.cast<Complex>();
}

CMat3 dyadic_green(const Vec3& x, const Vec3& xp, double k) {
    const Vec3 d = x - xp;
    const double r = d.norm();
    check_separation(r, k);
    const Complex g = std::exp(iu * k * r) / (4.0 * M_PI * r);
    // G = g [ (1 + i/(kr) - 1/(kr)^2) I + (-1 - 3i/(kr) + 3/(kr)^2) rhat rhat ]
    const double kr = k * r;
    const Complex a = 1.0 + iu / kr - 1.0 / (kr * kr);
    const Complex b = -1.0 - 3.0 * iu / kr + 3.0 / (kr * kr);
    const Vec3 rhat = d / r;
    CMat3 out = (g * a) * CMat3::Identity();
    out += (g * b) * (rhat * rhat.transpose()).cast<Complex>();
    return out;
}

CMat3 cross_matrix(const CVec3& a) {
    CMat3 m;
    m << 0.0, -a[2], a[1],
         a[2], 0.0, -a[0],
        -a[1], a[0], 0.0;
    return m;
}

CMat3 curl_dyadic_green(const Vec3& x, const Vec3& xp, double k) {
    // Only the g*I part of the dyad has a curl; the grad-grad part is
    // curl-free. Column-wise curl in x' gives [-grad_x g]_x.
    return cross_matrix((-grad_scalar_green(x, xp, k)).eval());
}

CMat3 curl_x_dyadic_green(const Vec3& x, const Vec3& xp, double k) {
    return cross_matrix(grad_scalar_green(x, xp, k));
}

} // namespace smallinc
