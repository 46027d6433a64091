#include "geofill/core.hpp"

#include <cmath>
#include <set>
#include <string>

namespace geofill {

ImageGrid::ImageGrid(int w, int h, int c, double fill)
    : width(w), height(h), channels(c),
      data(static_cast<std::size_t>(w) * h * c, fill) {
    if (w < 1 || h < 1 || c < 1)
        throw DomainError("image dimensions must be at least 1x1x1, got " +
                          std::to_string(w) + "x" + std::to_string(h) + "x" +
                          std::to_string(c));
}

std::size_t SparseField::sample_count() const {
    std::size_t n = 0;
    for (double c : confidence.data)
        if (c == 1.0) ++n;
    return n;
}

std::vector<SparseSite> SparseField::sites() const {
    std::vector<SparseSite> out;
    for (int y = 0; y < values.height; ++y) {
        for (int x = 0; x < values.width; ++x) {
            if (confidence.at(x, y) != 1.0) continue;
            SparseSite s;
            s.x = x;
            s.y = y;
            s.values.resize(values.channels);
            for (int c = 0; c < values.channels; ++c)
                s.values[c] = values.at(x, y, c);
            out.push_back(std::move(s));
        }
    }
    return out;
}

void validate_sparse_field(const SparseField& sparse) {
    if (sparse.values.width != sparse.confidence.width ||
        sparse.values.height != sparse.confidence.height)
        throw DomainError("sparse values and confidence dimensions differ");
    if (sparse.confidence.channels != 1)
        throw DomainError("confidence must be single-channel");
    for (int y = 0; y < sparse.values.height; ++y) {
        for (int x = 0; x < sparse.values.width; ++x) {
            double c = sparse.confidence.at(x, y);
            if (c != 0.0 && c != 1.0)
                throw DomainError("confidence must be exactly 0 or 1 at (" +
                                  std::to_string(x) + "," + std::to_string(y) + ")");
            if (c == 0.0) {
                for (int ch = 0; ch < sparse.values.channels; ++ch)
                    if (sparse.values.at(x, y, ch) != 0.0)
                        throw DomainError("unknown site carries a nonzero value at (" +
                                          std::to_string(x) + "," + std::to_string(y) + ")");
            }
        }
    }
}

FilterParams derive_params(double sigma_r, double sigma_s) {
    if (!(sigma_r > 0.0) || !(sigma_s > 0.0))
        throw DomainError("sigma_r and sigma_s must both be positive");
    FilterParams p;
    p.sigma_r = sigma_r;
    p.sigma_s = sigma_s;
    p.a = 2.0 / (sigma_r * sigma_r);
    p.delta = (sigma_r * sigma_r) / (sigma_s * sigma_s);
    return p;
}

SparseField extend_sparse(const std::vector<SparseSite>& sites,
                          int width, int height, int channels) {
    SparseField out;
    out.values = ImageGrid(width, height, channels, 0.0);
    out.confidence = ImageGrid(width, height, 1, 0.0);
    std::set<std::pair<int, int>> seen;
    for (const SparseSite& s : sites) {
        if (s.x < 0 || s.x >= width || s.y < 0 || s.y >= height)
            throw DomainError("sparse site (" + std::to_string(s.x) + "," +
                              std::to_string(s.y) + ") out of bounds for " +
                              std::to_string(width) + "x" + std::to_string(height));
        if (!seen.insert({s.x, s.y}).second)
            throw DomainError("duplicate sparse site (" + std::to_string(s.x) + "," +
                              std::to_string(s.y) + ")");
        if (static_cast<int>(s.values.size()) != channels)
            throw DomainError("sparse site (" + std::to_string(s.x) + "," +
                              std::to_string(s.y) + ") carries " +
                              std::to_string(s.values.size()) + " values, expected " +
                              std::to_string(channels));
        for (double v : s.values)
            if (!std::isfinite(v))
                throw DomainError("sparse site (" + std::to_string(s.x) + "," +
                                  std::to_string(s.y) + ") carries a non-finite value");
        for (int c = 0; c < channels; ++c)
            out.values.at(s.x, s.y, c) = s.values[c];
        out.confidence.at(s.x, s.y) = 1.0;
    }
    return out;
}

const char* to_string(MetricKind m) {
    switch (m) {
        case MetricKind::rmse: return "rmse";
        case MetricKind::epe: return "epe";
    }
    return "?";
}

const char* to_string(MaskKind m) {
    switch (m) {
        case MaskKind::all: return "all";
        case MaskKind::known: return "known";
        case MaskKind::unknown: return "unknown";
        case MaskKind::external: return "external";
    }
    return "?";
}

}  // namespace geofill
