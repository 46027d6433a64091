#ifndef GEOFILL_METRICS_HPP
#define GEOFILL_METRICS_HPP

#include "geofill/core.hpp"

namespace geofill {

/// Root-mean-squared error between two single-channel fields. Without a
/// mask, averages over every pixel whose gt value is finite; with one (a
/// single-channel {0,1} grid), over mask=1 pixels that also have finite gt.
/// Throws DomainError when the effective mask is empty.
double rmse(const ImageGrid& estimate, const ImageGrid& gt,
            const ImageGrid* mask = nullptr);

/// Average endpoint error between two 2-channel flow fields: mean L2 norm
/// of the per-pixel difference vector. Masking rules match rmse (gt must be
/// finite in both channels).
double epe(const ImageGrid& estimate, const ImageGrid& gt,
           const ImageGrid* mask = nullptr);

}  // namespace geofill

#endif  // GEOFILL_METRICS_HPP
