#ifndef GEOFILL_EXACT_ORACLE_HPP
#define GEOFILL_EXACT_ORACLE_HPP

#include "geofill/core.hpp"

namespace geofill {

/// Single-source geodesic distances over the 4-connected grid,
/// edge cost ||I_k - I_l||_2 + delta.
struct GeodesicDistanceMap {
    int source_x = 0;
    int source_y = 0;
    ImageGrid distances;  // single channel, distance at source is 0
};

/// Exact shortest-path distances from one pixel (priority-queue label
/// setting). Quadratic-scale tool: meant for tests and small inputs.
GeodesicDistanceMap geodesic_distance_map(const ImageGrid& guidance,
                                          int source_x, int source_y,
                                          const FilterParams& params);

/// exp(-a * geodesic distance between p and q); equivalently the maximum
/// over connecting paths of the product of per-edge factors.
double exact_weight(const ImageGrid& guidance, int px, int py, int qx, int qy,
                    const FilterParams& params);

/// Reference interpolator: evaluates the weighted-sum ratio with exact
/// geodesic weights, one shortest-path run per confident sample.
/// Throws DomainError when no pixel is confident or the image exceeds
/// 65536 pixels (guard against accidental quadratic blowups).
ImageGrid exact_filter(const SparseField& sparse, const ImageGrid& guidance,
                       const FilterParams& params);

}  // namespace geofill

#endif  // GEOFILL_EXACT_ORACLE_HPP
