#ifndef GEOFILL_SAMPLING_HPP
#define GEOFILL_SAMPLING_HPP

#include "geofill/core.hpp"

namespace geofill {

enum class SamplingMode { edge_threshold, patch_max, regular_grid };

struct SamplingSpec {
    SamplingMode mode = SamplingMode::regular_grid;
    double density = 1.0;  // target fraction of known pixels, in (0,1]
};

/// Per-pixel gradient magnitude of the guidance: central differences per
/// channel (one-sided at borders), L2 norm over dx, dy and channels.
ImageGrid gradient_norm(const ImageGrid& guidance);

/// Keeps the ceil(density*N) pixels with the largest guidance-gradient
/// norm (ties in raster order), but only where gt is finite; values are
/// copied from gt.
SparseField sample_edge_threshold(const ImageGrid& gt, const ImageGrid& guidance,
                                  double density);

/// Splits the image into s-by-s patches, s = round(1/sqrt(density)); border
/// patches keep their natural smaller size. In each patch the pixel with
/// the largest gradient norm (finite gt only) becomes the known sample.
SparseField sample_patch_max(const ImageGrid& gt, const ImageGrid& guidance,
                             double density);

/// Marks pixels on the regular lattice (i*s, j*s), s = round(1/sqrt(density)),
/// anchored at the origin; lattice points with non-finite gt are skipped.
SparseField sample_regular(const ImageGrid& gt, double density);

/// Dispatch on spec.mode (regular_grid ignores guidance).
SparseField sample_field(const ImageGrid& gt, const ImageGrid& guidance,
                         const SamplingSpec& spec);

}  // namespace geofill

#endif  // GEOFILL_SAMPLING_HPP
