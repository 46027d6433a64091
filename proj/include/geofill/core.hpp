#ifndef GEOFILL_CORE_HPP
#define GEOFILL_CORE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace geofill {

// Thrown when an argument violates an operation's domain: non-positive
// bandwidth, empty sample set, mismatched dimensions, oversized oracle input.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown by file readers/writers on malformed content or OS-level failures.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Multi-channel 2D raster, row-major, channel-interleaved. Serves both as
/// guidance image (1 gray / 3 color channels, values nominally in [0,255])
/// and as per-pixel data field (disparity = 1 channel, flow = 2 channels).
struct ImageGrid {
    int width = 0;
    int height = 0;
    int channels = 1;
    double value_scale = 0.0;  // nominal range hint: 255 for 8-bit images, 0 = unscaled data
    std::vector<double> data;

    ImageGrid() = default;
    ImageGrid(int w, int h, int c, double fill = 0.0);

    std::size_t index(int x, int y, int c = 0) const {
        return (static_cast<std::size_t>(y) * width + x) * channels + c;
    }
    double at(int x, int y, int c = 0) const { return data[index(x, y, c)]; }
    double& at(int x, int y, int c = 0) { return data[index(x, y, c)]; }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    bool same_shape(const ImageGrid& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
};

/// One known site of a sparse field: pixel coordinate plus one value per
/// data channel.
struct SparseSite {
    int x = 0;
    int y = 0;
    std::vector<double> values;
};

/// Sparse data as a dense-layout pair: `values` holds the known value at
/// known sites and 0 elsewhere, `confidence` is a single-channel {0,1} mask
/// marking the known sites.
struct SparseField {
    ImageGrid values;
    ImageGrid confidence;

    int width() const { return values.width; }
    int height() const { return values.height; }
    int channels() const { return values.channels; }

    /// Number of confident (known) pixels.
    std::size_t sample_count() const;
    /// Enumerates the confident sites in raster order.
    std::vector<SparseSite> sites() const;
};

/// Checks the SparseField invariants (shared shape, confidence strictly in
/// {0,1}, zero values wherever confidence is 0); throws DomainError.
void validate_sparse_field(const SparseField& sparse);

/// Filter bandwidths and the kernel constants derived from them.
/// Always build through derive_params so a and delta stay consistent.
struct FilterParams {
    double sigma_r = 0;  // range bandwidth, guidance-value units
    double sigma_s = 0;  // spatial bandwidth, pixels
    double a = 0;        // kernel decay rate, a = 2 / sigma_r^2
    double delta = 0;    // per-edge spatial cost, delta = sigma_r^2 / sigma_s^2
};

/// Maps the bilateral-style bandwidths (sigma_r, sigma_s) to the kernel
/// constants (a, delta). Throws DomainError unless both sigmas are > 0.
FilterParams derive_params(double sigma_r, double sigma_s);

/// Builds a SparseField of the given shape from a list of known sites.
/// Out-of-bounds sites, duplicate sites, value-count mismatches and
/// non-finite values are rejected with DomainError.
SparseField extend_sparse(const std::vector<SparseSite>& sites,
                          int width, int height, int channels);

enum class MetricKind { rmse, epe };
enum class MaskKind { all, known, unknown, external };

/// One evaluation result: which metric, its value, which pixels it was
/// computed over, the sample density of the input, and wall time.
struct EvalReport {
    MetricKind metric = MetricKind::rmse;
    double value = 0;
    MaskKind mask = MaskKind::all;
    double density = 1.0;
    double elapsed_seconds = 0;
};

const char* to_string(MetricKind m);
const char* to_string(MaskKind m);

}  // namespace geofill

#endif  // GEOFILL_CORE_HPP
