#pragma once

#include <complex>
#include <Eigen/Dense>

namespace smallinc {

using Complex = std::complex<double>;
using Vec3  = Eigen::Vector3d;
using Mat3  = Eigen::Matrix3d;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;

inline constexpr Complex iu{0.0, 1.0};

/// Componentwise complex cross product a x b. Eigen's cross() conjugates
/// its result for complex scalars, which is not the bilinear product the
/// field identities use.
inline CVec3 ccross(const CVec3& a, const CVec3& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

} // namespace smallinc
