#ifndef GEOFILL_BASELINES_HPP
#define GEOFILL_BASELINES_HPP

#include "geofill/core.hpp"

namespace geofill {

/// Kernel-regression interpolation with a purely spatial Gaussian,
/// w = exp(-||p-q||^2 / (2 sigma_s^2)). Samples outside a square window of
/// radius ceil(8 sigma_s) around p are skipped; if the window holds no
/// sample, the nearest confident sample (Euclidean, ties by row then
/// column) supplies the value. Throws DomainError when nothing is known.
ImageGrid nadaraya_watson(const SparseField& sparse, const FilterParams& params);

/// Same ratio with the bilateral kernel
/// w = exp(-||p-q||^2 / (2 sigma_s^2) - ||I_p-I_q||^2 / (2 sigma_r^2));
/// window and fallback identical to nadaraya_watson.
ImageGrid bilateral_interpolate(const SparseField& sparse, const ImageGrid& guidance,
                                const FilterParams& params);

}  // namespace geofill

#endif  // GEOFILL_BASELINES_HPP
