#ifndef GEOFILL_GEODESIC_FILTER_HPP
#define GEOFILL_GEODESIC_FILTER_HPP

#include <vector>

#include "geofill/core.hpp"

namespace geofill {

enum class Direction { left_to_right, right_to_left, top_to_bottom, bottom_to_top };
enum class Quadrant { top_left, top_right, bottom_left, bottom_right };

/// Per-edge attenuation factors of the 4-connected pixel lattice:
/// g = exp(-a * (||I_k - I_l||_2 + delta)) for each pair of neighbors.
/// horizontal[y * (width-1) + x] joins (x,y)-(x+1,y);
/// vertical[y * width + x] joins (x,y)-(x,y+1). All entries in (0,1).
struct EdgeWeights {
    int width = 0;
    int height = 0;
    std::vector<double> horizontal;
    std::vector<double> vertical;

    double horizontal_at(int x, int y) const {
        return horizontal[static_cast<std::size_t>(y) * (width - 1) + x];
    }
    double vertical_at(int x, int y) const {
        return vertical[static_cast<std::size_t>(y) * width + x];
    }
};

/// The two running sums of the normalized filter: numerator carries the
/// weighted data channels, denominator the weighted confidence.
struct AccumulatorPair {
    ImageGrid numerator;
    ImageGrid denominator;
};

/// Builds the edge factors from a 1- or 3-channel guidance image.
EdgeWeights compute_edge_weights(const ImageGrid& guidance, const FilterParams& params);

/// One causal raster scan: along each scan line in the given direction,
/// B_p = z_p + g(edge to previous pixel) * B_prev, B = z at the line start.
/// Channels of z are processed independently.
ImageGrid directional_pass(const ImageGrid& z, const EdgeWeights& weights, Direction direction);

/// Accumulates contributions of all pixels q in the closed quadrant relative
/// to p (for top_left: q.x <= p.x and q.y <= p.y), each attenuated along the
/// bent path "horizontal within q's row to column p.x, then vertical to p".
/// Realized as a horizontal causal pass followed by a vertical one.
ImageGrid quadrant_accumulate(const ImageGrid& z, const EdgeWeights& weights, Quadrant quadrant);

/// Inclusion-exclusion merge of the four quadrant sums: the four directional
/// sums (which quadrant pairs count twice) are subtracted and the center
/// value added back, so every source pixel contributes exactly once.
ImageGrid combine_quadrants(const ImageGrid& a_tl, const ImageGrid& a_tr,
                            const ImageGrid& a_bl, const ImageGrid& a_br,
                            const ImageGrid& b_lr, const ImageGrid& b_rl,
                            const ImageGrid& b_tb, const ImageGrid& b_bt,
                            const ImageGrid& z);

/// Densifies the sparse field: both sums of the normalized filter are run
/// through the same raster-scan machinery (data channels and confidence
/// stacked), then divided channelwise. Runtime is proportional to pixel
/// count alone - sample density does not enter.
/// Throws DomainError when no pixel is confident.
ImageGrid interpolate(const SparseField& sparse, const ImageGrid& guidance,
                      const FilterParams& params);

}  // namespace geofill

#endif  // GEOFILL_GEODESIC_FILTER_HPP
