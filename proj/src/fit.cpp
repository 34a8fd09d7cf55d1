#include "rqi/fit.hpp"

#include <cmath>

#include "rqi/error.hpp"

namespace rqi {

double fit_order(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) {
        throw Error(ErrorKind::InsufficientPoints, "order fit needs at least 3 points");
    }
    double sx = 0.0, sy = 0.0;
    for (const auto& [h, err] : points) {
        if (!(h > 0.0) || !(err > 0.0)) {
            throw Error(ErrorKind::NonPositiveValue, "order fit needs positive h and error");
        }
        sx += std::log(h);
        sy += std::log(err);
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [h, err] : points) {
        const double dx = std::log(h) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(err) - my);
    }
    if (sxx == 0.0) {
        throw Error(ErrorKind::InsufficientPoints, "order fit needs distinct h values");
    }
    return sxy / sxx;
}

} // namespace rqi
