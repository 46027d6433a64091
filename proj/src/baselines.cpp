#include "geofill/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "filter_internals.hpp"

namespace geofill {

namespace {

// Squared color distance between two pixels of the guidance image.
double color_dist2(const ImageGrid& g, int x0, int y0, int x1, int y1) {
    double d2 = 0.0;
    for (int c = 0; c < g.channels; ++c) {
        double d = g.at(x1, y1, c) - g.at(x0, y0, c);
        d2 += d * d;
    }
    return d2;
}

bool integral_8bit(const ImageGrid& g) {
    for (double v : g.data)
        if (v < 0.0 || v > 255.0 || v != std::floor(v)) return false;
    return true;
}

// Shared core of both baselines: per output pixel, walk the known sites
// inside the truncation window and accumulate the kernel-weighted ratio.
// `guidance` toggles the bilateral range term; null means spatial-only.
ImageGrid kernel_interpolate(const SparseField& sparse, const ImageGrid* guidance,
                             const FilterParams& params) {
    if (guidance &&
        (sparse.width() != guidance->width || sparse.height() != guidance->height))
        throw DomainError("sparse field and guidance dimensions differ");

    detail::KnownStats st = detail::collect_known(sparse);
    if (st.sites.empty())
        throw DomainError("no confident samples to interpolate from");
    if (st.sites.size() == 1)
        return detail::constant_fill(sparse, st.sites.front());

    const int w = sparse.width(), h = sparse.height(), ch = sparse.channels();
    // clamp keeps x +/- radius inside int range for absurd sigma_s
    const int radius = static_cast<int>(std::min(std::ceil(8.0 * params.sigma_s), 1e8));
    const double inv_2ss = 1.0 / (2.0 * params.sigma_s * params.sigma_s);
    const double inv_2sr = 1.0 / (2.0 * params.sigma_r * params.sigma_r);

    // spatial factor is separable: exp(-(dx^2+dy^2)/2ss) = ex[dx]*ex[dy]
    const int max_off = std::min(radius, std::max(w, h) - 1);
    std::vector<double> ex(max_off + 1);
    for (int k = 0; k <= max_off; ++k)
        ex[k] = std::exp(-static_cast<double>(k) * k * inv_2ss);

    // 8-bit guidance keeps ||I_p - I_q||^2 integral, so the range factor can
    // come from a lookup table instead of an exp call per pair.
    std::vector<double> range_table;
    if (guidance && integral_8bit(*guidance)) {
        std::size_t n = static_cast<std::size_t>(guidance->channels) * 255 * 255 + 1;
        range_table.resize(n);
        for (std::size_t k = 0; k < n; ++k)
            range_table[k] = std::exp(-static_cast<double>(k) * inv_2sr);
    }

    // bucket sites by row (already raster-sorted, so x grows within a row)
    std::vector<std::vector<const SparseSite*>> rows(h);
    for (const SparseSite& s : st.sites) rows[s.y].push_back(&s);

    ImageGrid out(w, h, ch);
    std::vector<double> num(ch);
    for (int y = 0; y < h; ++y) {
        int y_lo = std::max(0, y - radius), y_hi = std::min(h - 1, y + radius);
        for (int x = 0; x < w; ++x) {
            std::fill(num.begin(), num.end(), 0.0);
            double den = 0.0;
            for (int yy = y_lo; yy <= y_hi; ++yy) {
                const auto& row = rows[yy];
                auto it = std::lower_bound(row.begin(), row.end(), x - radius,
                                           [](const SparseSite* s, int xmin) {
                                               return s->x < xmin;
                                           });
                double ey = ex[std::abs(yy - y)];
                for (; it != row.end() && (*it)->x <= x + radius; ++it) {
                    const SparseSite& s = **it;
                    double wgt = ex[std::abs(s.x - x)] * ey;
                    if (guidance) {
                        double d2 = color_dist2(*guidance, x, y, s.x, s.y);
                        wgt *= range_table.empty()
                                   ? std::exp(-d2 * inv_2sr)
                                   : range_table[static_cast<std::size_t>(std::llround(d2))];
                    }
                    den += wgt;
                    for (int c = 0; c < ch; ++c) num[c] += wgt * s.values[c];
                }
            }
            if (den == 0.0) {
                // empty window (or all weights underflowed): nearest sample
                const SparseSite& s = detail::nearest_site(st.sites, x, y, /*l1=*/false);
                for (int c = 0; c < ch; ++c) out.at(x, y, c) = s.values[c];
            } else {
                for (int c = 0; c < ch; ++c) out.at(x, y, c) = num[c] / den;
            }
        }
    }
    detail::clamp_to_hull(out, st);
    out.value_scale = sparse.values.value_scale;
    return out;
}

}  // namespace

ImageGrid nadaraya_watson(const SparseField& sparse, const FilterParams& params) {
    if (!(params.sigma_r > 0.0) || !(params.sigma_s > 0.0))
        throw DomainError("filter parameters must come from derive_params");
    return kernel_interpolate(sparse, nullptr, params);
}

ImageGrid bilateral_interpolate(const SparseField& sparse, const ImageGrid& guidance,
                                const FilterParams& params) {
    if (!(params.sigma_r > 0.0) || !(params.sigma_s > 0.0))
        throw DomainError("filter parameters must come from derive_params");
    return kernel_interpolate(sparse, &guidance, params);
}

}  // namespace geofill
