#pragma once

#include <stdexcept>

#include "smallinc/types.hpp"

namespace smallinc {

struct KernelSingularity : std::domain_error {
    KernelSingularity() : std::domain_error("kernel singularity") {}
};

/// Scalar Helmholtz kernel e^{ikr}/(4 pi r), r = |x - xp|.
Complex scalar_green(const Vec3& x, const Vec3& xp, double k);

/// Gradient of scalar_green with respect to x.
CVec3 grad_scalar_green(const Vec3& x, const Vec3& xp, double k);

/// Free-space dyadic kernel (I + grad grad / k^2) g(|x - xp|), the 3x3
/// matrix solution of curl curl G - k^2 G = I delta with outgoing
/// radiation behavior. Complex-symmetric; G(x,y) = G(y,x)^T.
CMat3 dyadic_green(const Vec3& x, const Vec3& xp, double k);

/// Column-by-column curl of dyadic_green with respect to the second
/// argument. Antisymmetric (a cross-product matrix): only the gI part of
/// the dyad has a curl, so the result is [grad' g]_x.
CMat3 curl_dyadic_green(const Vec3& x, const Vec3& xp, double k);

/// Curl with respect to the first argument; equals -curl_dyadic_green.
CMat3 curl_x_dyadic_green(const Vec3& x, const Vec3& xp, double k);

/// Cross-product matrix [a]_x with [a]_x v = a x v.
CMat3 cross_matrix(const CVec3& a);

} // namespace smallinc
