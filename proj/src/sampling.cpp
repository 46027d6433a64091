#include "geofill/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace geofill {

namespace {

void require_density(double density) {
    if (!(density > 0.0) || !(density <= 1.0))
        throw DomainError("sampling density must lie in (0,1]");
}

int grid_step(double density) {
    int s = static_cast<int>(std::llround(1.0 / std::sqrt(density)));
    return std::max(s, 1);
}

bool finite_gt(const ImageGrid& gt, int x, int y) {
    for (int c = 0; c < gt.channels; ++c)
        if (!std::isfinite(gt.at(x, y, c))) return false;
    return true;
}

SparseField empty_like(const ImageGrid& gt) {
    SparseField out;
    out.values = ImageGrid(gt.width, gt.height, gt.channels, 0.0);
    out.values.value_scale = gt.value_scale;
    out.confidence = ImageGrid(gt.width, gt.height, 1, 0.0);
    return out;
}

void mark_known(SparseField& field, const ImageGrid& gt, int x, int y) {
    for (int c = 0; c < gt.channels; ++c)
        field.values.at(x, y, c) = gt.at(x, y, c);
    field.confidence.at(x, y) = 1.0;
}

}  // namespace

ImageGrid gradient_norm(const ImageGrid& guidance) {
    const int w = guidance.width, h = guidance.height, ch = guidance.channels;
    ImageGrid out(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double sum2 = 0.0;
            for (int c = 0; c < ch; ++c) {
                double dx = 0.0, dy = 0.0;
                if (w > 1) {
                    // central difference inside, one-sided at the borders
                    if (x == 0) dx = guidance.at(1, y, c) - guidance.at(0, y, c);
                    else if (x == w - 1) dx = guidance.at(x, y, c) - guidance.at(x - 1, y, c);
                    else dx = (guidance.at(x + 1, y, c) - guidance.at(x - 1, y, c)) / 2.0;
                }
                if (h > 1) {
                    if (y == 0) dy = guidance.at(x, 1, c) - guidance.at(x, 0, c);
                    else if (y == h - 1) dy = guidance.at(x, y, c) - guidance.at(x, y - 1, c);
                    else dy = (guidance.at(x, y + 1, c) - guidance.at(x, y - 1, c)) / 2.0;
                }
                sum2 += dx * dx + dy * dy;
            }
            out.at(x, y) = std::sqrt(sum2);
        }
    return out;
}

SparseField sample_edge_threshold(const ImageGrid& gt, const ImageGrid& guidance,
                                  double density) {
    require_density(density);
    if (gt.width != guidance.width || gt.height != guidance.height)
        throw DomainError("gt and guidance dimensions differ");

    ImageGrid norm = gradient_norm(guidance);
    const int w = gt.width, h = gt.height;

    struct Candidate {
        double g;
        int idx;
    };
    std::vector<Candidate> cand;
    cand.reserve(gt.pixel_count());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (finite_gt(gt, x, y)) cand.push_back({norm.at(x, y), y * w + x});

    SparseField out = empty_like(gt);
    if (cand.empty()) return out;

    // largest gradient first; equal gradients keep raster order
    std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
        if (a.g != b.g) return a.g > b.g;
        return a.idx < b.idx;
    });

    double want = density * static_cast<double>(gt.pixel_count());
    // the small nudge keeps exact products like 0.1*90 from ceiling to 10
    std::size_t k = static_cast<std::size_t>(std::ceil(want - 1e-9));
    k = std::clamp<std::size_t>(k, 1, cand.size());

    for (std::size_t i = 0; i < k; ++i) {
        int x = cand[i].idx % w, y = cand[i].idx / w;
        mark_known(out, gt, x, y);
    }
    return out;
}

SparseField sample_patch_max(const ImageGrid& gt, const ImageGrid& guidance,
                             double density) {
    require_density(density);
    if (gt.width != guidance.width || gt.height != guidance.height)
        throw DomainError("gt and guidance dimensions differ");

    ImageGrid norm = gradient_norm(guidance);
    const int w = gt.width, h = gt.height;
    const int s = grid_step(density);

    SparseField out = empty_like(gt);
    for (int y0 = 0; y0 < h; y0 += s) {
        int y1 = std::min(y0 + s, h);
        for (int x0 = 0; x0 < w; x0 += s) {
            int x1 = std::min(x0 + s, w);
            int best_x = -1, best_y = -1;
            double best_g = -1.0;
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) {
                    if (!finite_gt(gt, x, y)) continue;
                    if (norm.at(x, y) > best_g) {  // ties keep the raster-first pixel
                        best_g = norm.at(x, y);
                        best_x = x;
                        best_y = y;
                    }
                }
            if (best_x >= 0) mark_known(out, gt, best_x, best_y);
        }
    }
    return out;
}

SparseField sample_regular(const ImageGrid& gt, double density) {
    require_density(density);
    const int s = grid_step(density);
    SparseField out = empty_like(gt);
    for (int y = 0; y < gt.height; y += s)
        for (int x = 0; x < gt.width; x += s)
            if (finite_gt(gt, x, y)) mark_known(out, gt, x, y);
    return out;
}

SparseField sample_field(const ImageGrid& gt, const ImageGrid& guidance,
                         const SamplingSpec& spec) {
    switch (spec.mode) {
        case SamplingMode::edge_threshold:
            return sample_edge_threshold(gt, guidance, spec.density);
        case SamplingMode::patch_max:
            return sample_patch_max(gt, guidance, spec.density);
        case SamplingMode::regular_grid:
            return sample_regular(gt, spec.density);
    }
    throw DomainError("invalid sampling mode");
}

}  // namespace geofill
