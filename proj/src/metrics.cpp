#include "geofill/metrics.hpp"

#include <cmath>

namespace geofill {

namespace {

void require_mask(const ImageGrid* mask, const ImageGrid& gt) {
    if (!mask) return;
    if (mask->channels != 1)
        throw DomainError("mask must be single-channel");
    if (mask->width != gt.width || mask->height != gt.height)
        throw DomainError("mask dimensions differ from the fields");
    for (double v : mask->data)
        if (v != 0.0 && v != 1.0)
            throw DomainError("mask entries must be exactly 0 or 1");
}

bool used(const ImageGrid& gt, const ImageGrid* mask, int x, int y) {
    if (mask && mask->at(x, y) != 1.0) return false;
    for (int c = 0; c < gt.channels; ++c)
        if (!std::isfinite(gt.at(x, y, c))) return false;
    return true;
}

}  // namespace

double rmse(const ImageGrid& estimate, const ImageGrid& gt, const ImageGrid* mask) {
    if (estimate.channels != 1 || gt.channels != 1)
        throw DomainError("rmse expects single-channel fields");
    if (!estimate.same_shape(gt))
        throw DomainError("estimate and gt dimensions differ");
    require_mask(mask, gt);

    double sum = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < gt.height; ++y)
        for (int x = 0; x < gt.width; ++x) {
            if (!used(gt, mask, x, y)) continue;
            double d = estimate.at(x, y) - gt.at(x, y);
            sum += d * d;
            ++n;
        }
    if (n == 0)
        throw DomainError("no pixels left to evaluate (empty mask)");
    return std::sqrt(sum / static_cast<double>(n));
}

double epe(const ImageGrid& estimate, const ImageGrid& gt, const ImageGrid* mask) {
    if (estimate.channels != 2 || gt.channels != 2)
        throw DomainError("epe expects 2-channel flow fields");
    if (!estimate.same_shape(gt))
        throw DomainError("estimate and gt dimensions differ");
    require_mask(mask, gt);

    double sum = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < gt.height; ++y)
        for (int x = 0; x < gt.width; ++x) {
            if (!used(gt, mask, x, y)) continue;
            double du = estimate.at(x, y, 0) - gt.at(x, y, 0);
            double dv = estimate.at(x, y, 1) - gt.at(x, y, 1);
            sum += std::sqrt(du * du + dv * dv);
            ++n;
        }
    if (n == 0)
        throw DomainError("no pixels left to evaluate (empty mask)");
    return sum / static_cast<double>(n);
}

}  // namespace geofill
