#pragma once

#include "smallinc/scene.hpp"
#include "smallinc/types.hpp"

namespace smallinc {

struct FieldSample {
    CVec3 E = CVec3::Zero(); // V/m
    CVec3 H = CVec3::Zero(); // A/m
    Vec3 at = Vec3::Zero();
};

/// Unperturbed fields of the dipole source in free space:
///   E0(x) = i omega mu0 G(x, xs) p,   H0(x) = curl_x G(x, xs) p.
FieldSample background_fields(const Scene& scene, const Vec3& x);

} // namespace smallinc
