#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace smallinc {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // RMS of fit residuals
};

/// Least-squares line through (log x_i, log y_i).
inline LineFit loglog_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_fit: need >=2 matching samples");
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    LineFit f;
    f.slope = (dn * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / dn;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::log(y[i]) - (f.intercept + f.slope * std::log(x[i]));
        ss += e * e;
    }
    f.residual = std::sqrt(ss / dn);
    return f;
}

} // namespace smallinc
