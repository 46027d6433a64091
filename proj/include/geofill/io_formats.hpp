#ifndef GEOFILL_IO_FORMATS_HPP
#define GEOFILL_IO_FORMATS_HPP

#include <string>

#include "geofill/core.hpp"

namespace geofill {

// All readers throw IoError on malformed content, naming the byte offset or
// line of the first violation; they never guess past a broken header.

/// Binary PGM (P5) or PPM (P6), 8-bit only; values land in [0,255] as reals,
/// value_scale = 255.
ImageGrid read_image(const std::string& path);

/// 8-bit binary PGM/PPM writer (channels pick the format: 1 -> P5, 3 -> P6).
/// Values are rounded and clamped to [0,255].
void write_image(const std::string& path, const ImageGrid& image);

/// Middlebury PFM, single channel ('Pf'). Rows are stored bottom-up; the
/// scale's sign gives byte order. Non-finite entries pass through untouched
/// (they mark pixels without ground truth).
ImageGrid read_pfm(const std::string& path);
void write_pfm(const std::string& path, const ImageGrid& image);

/// Two-channel optical-flow container: "PIEH" float tag, int32 width and
/// height, then row-major interleaved float32 (u,v). Non-finite payload is
/// rejected on read.
ImageGrid read_flo(const std::string& path);
void write_flo(const std::string& path, const ImageGrid& flow);

/// Text sparse-sample file: header "GEOSPARSE <width> <height> <channels>",
/// then one "x y v1 [v2 ...]" record per known site, raster-sorted. Values
/// are printed with enough digits to round-trip doubles losslessly.
SparseField read_sparse(const std::string& path);
void write_sparse(const std::string& path, const SparseField& sparse);

}  // namespace geofill

#endif  // GEOFILL_IO_FORMATS_HPP
