#include "geofill/geodesic_filter.hpp"

#include <cmath>
#include <limits>

#include "filter_internals.hpp"

namespace geofill {

namespace {

// exp(-a * (color distance + delta)), nudged to stay strictly inside (0,1):
// extreme parameters can round the factor to 0 or 1 and a zero factor would
// make downstream products degenerate.
double edge_factor(double color_dist, const FilterParams& params) {
    double f = std::exp(-params.a * (color_dist + params.delta));
    if (f <= 0.0) return std::numeric_limits<double>::min();
    if (f >= 1.0) return std::nextafter(1.0, 0.0);
    return f;
}

void require_matching_grid(const ImageGrid& z, const EdgeWeights& weights) {
    if (z.width != weights.width || z.height != weights.height)
        throw DomainError("field dimensions do not match the edge-weight grid");
}

}  // namespace

EdgeWeights compute_edge_weights(const ImageGrid& guidance, const FilterParams& params) {
    if (guidance.channels != 1 && guidance.channels != 3)
        throw DomainError("guidance image must have 1 or 3 channels");
    if (!(params.sigma_r > 0.0) || !(params.sigma_s > 0.0))
        throw DomainError("filter parameters must come from derive_params");
    const int w = guidance.width, h = guidance.height, ch = guidance.channels;

    EdgeWeights ew;
    ew.width = w;
    ew.height = h;
    ew.horizontal.resize(static_cast<std::size_t>(w > 0 ? w - 1 : 0) * h);
    ew.vertical.resize(static_cast<std::size_t>(w) * (h > 0 ? h - 1 : 0));

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x + 1 < w; ++x) {
            double d2 = 0.0;
            for (int c = 0; c < ch; ++c) {
                double d = guidance.at(x + 1, y, c) - guidance.at(x, y, c);
                d2 += d * d;
            }
            ew.horizontal[static_cast<std::size_t>(y) * (w - 1) + x] =
                edge_factor(std::sqrt(d2), params);
        }
    }
    for (int y = 0; y + 1 < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double d2 = 0.0;
            for (int c = 0; c < ch; ++c) {
                double d = guidance.at(x, y + 1, c) - guidance.at(x, y, c);
                d2 += d * d;
            }
            ew.vertical[static_cast<std::size_t>(y) * w + x] =
                edge_factor(std::sqrt(d2), params);
        }
    }
    return ew;
}

ImageGrid directional_pass(const ImageGrid& z, const EdgeWeights& weights,
                           Direction direction) {
    require_matching_grid(z, weights);
    const int w = z.width, h = z.height, ch = z.channels;
    ImageGrid out = z;  // scan-line starts keep their plain z value

    switch (direction) {
        case Direction::left_to_right:
            for (int y = 0; y < h; ++y)
                for (int x = 1; x < w; ++x) {
                    double g = weights.horizontal_at(x - 1, y);
                    for (int c = 0; c < ch; ++c)
                        out.at(x, y, c) = z.at(x, y, c) + g * out.at(x - 1, y, c);
                }
            break;
        case Direction::right_to_left:
            for (int y = 0; y < h; ++y)
                for (int x = w - 2; x >= 0; --x) {
                    double g = weights.horizontal_at(x, y);
                    for (int c = 0; c < ch; ++c)
                        out.at(x, y, c) = z.at(x, y, c) + g * out.at(x + 1, y, c);
                }
            break;
        case Direction::top_to_bottom:
            for (int y = 1; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    double g = weights.vertical_at(x, y - 1);
                    for (int c = 0; c < ch; ++c)
                        out.at(x, y, c) = z.at(x, y, c) + g * out.at(x, y - 1, c);
                }
            break;
        case Direction::bottom_to_top:
            for (int y = h - 2; y >= 0; --y)
                for (int x = 0; x < w; ++x) {
                    double g = weights.vertical_at(x, y);
                    for (int c = 0; c < ch; ++c)
                        out.at(x, y, c) = z.at(x, y, c) + g * out.at(x, y + 1, c);
                }
            break;
    }
    return out;
}

ImageGrid quadrant_accumulate(const ImageGrid& z, const EdgeWeights& weights,
                              Quadrant quadrant) {
    // horizontal causal sum within the row, then vertical causal sum down
    // (or up) the column: an impulse at q reaches p along the bent path
    // q -> (p.x, q.y) -> p.
    switch (quadrant) {
        case Quadrant::top_left:
            return directional_pass(directional_pass(z, weights, Direction::left_to_right),
                                    weights, Direction::top_to_bottom);
        case Quadrant::top_right:
            return directional_pass(directional_pass(z, weights, Direction::right_to_left),
                                    weights, Direction::top_to_bottom);
        case Quadrant::bottom_left:
            return directional_pass(directional_pass(z, weights, Direction::left_to_right),
                                    weights, Direction::bottom_to_top);
        case Quadrant::bottom_right:
            return directional_pass(directional_pass(z, weights, Direction::right_to_left),
                                    weights, Direction::bottom_to_top);
    }
    throw DomainError("invalid quadrant");
}

ImageGrid combine_quadrants(const ImageGrid& a_tl, const ImageGrid& a_tr,
                            const ImageGrid& a_bl, const ImageGrid& a_br,
                            const ImageGrid& b_lr, const ImageGrid& b_rl,
                            const ImageGrid& b_tb, const ImageGrid& b_bt,
                            const ImageGrid& z) {
    for (const ImageGrid* g : {&a_tl, &a_tr, &a_bl, &a_br, &b_lr, &b_rl, &b_tb, &b_bt})
        if (!g->same_shape(z))
            throw DomainError("combine_quadrants requires same-shape fields");

    ImageGrid out(z.width, z.height, z.channels);
    // Each directional sum is paired with a quadrant sum it is a subset of,
    // so an isolated impulse cancels exactly and the center value survives
    // bit-for-bit.
    for (std::size_t i = 0; i < z.data.size(); ++i)
        out.data[i] = ((a_tl.data[i] - b_lr.data[i]) + (a_tr.data[i] - b_rl.data[i])) +
                      ((a_bl.data[i] - b_tb.data[i]) + (a_br.data[i] - b_bt.data[i])) +
                      z.data[i];
    out.value_scale = z.value_scale;
    return out;
}

ImageGrid interpolate(const SparseField& sparse, const ImageGrid& guidance,
                      const FilterParams& params) {
    if (sparse.width() != guidance.width || sparse.height() != guidance.height)
        throw DomainError("sparse field and guidance dimensions differ");
    if (guidance.channels != 1 && guidance.channels != 3)
        throw DomainError("guidance image must have 1 or 3 channels");
    if (!(params.sigma_r > 0.0) || !(params.sigma_s > 0.0))
        throw DomainError("filter parameters must come from derive_params");

    detail::KnownSummary st = detail::summarize_known(sparse);
    if (st.count == 0)
        throw DomainError("no confident samples to interpolate from");
    if (st.count == 1)
        return detail::constant_fill_at(sparse, st.first_x, st.first_y);

    const int w = sparse.width(), h = sparse.height(), ch = sparse.channels();

    // Data channels and confidence ride through the passes together: both
    // sums of the ratio see exactly the same weights.
    ImageGrid z(w, h, ch + 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < ch; ++c)
                z.at(x, y, c) = sparse.values.at(x, y, c);
            z.at(x, y, ch) = sparse.confidence.at(x, y);
        }

    EdgeWeights weights = compute_edge_weights(guidance, params);

    ImageGrid b_lr = directional_pass(z, weights, Direction::left_to_right);
    ImageGrid b_rl = directional_pass(z, weights, Direction::right_to_left);
    ImageGrid b_tb = directional_pass(z, weights, Direction::top_to_bottom);
    ImageGrid b_bt = directional_pass(z, weights, Direction::bottom_to_top);
    ImageGrid a_tl = directional_pass(b_lr, weights, Direction::top_to_bottom);
    ImageGrid a_tr = directional_pass(b_rl, weights, Direction::top_to_bottom);
    ImageGrid a_bl = directional_pass(b_lr, weights, Direction::bottom_to_top);
    ImageGrid a_br = directional_pass(b_rl, weights, Direction::bottom_to_top);

    ImageGrid total = combine_quadrants(a_tl, a_tr, a_bl, a_br,
                                        b_lr, b_rl, b_tb, b_bt, z);

    ImageGrid out(w, h, ch);
    std::vector<SparseSite> fallback_sites;  // built only if a pixel needs it
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double den = total.at(x, y, ch);
            if (den < 1e-300) {
                // every sample's weight underflowed; take the closest one
                if (fallback_sites.empty()) fallback_sites = sparse.sites();
                const SparseSite& s =
                    detail::nearest_site(fallback_sites, x, y, /*l1=*/true);
                for (int c = 0; c < ch; ++c)
                    out.at(x, y, c) = s.values[c];
            } else {
                for (int c = 0; c < ch; ++c)
                    out.at(x, y, c) = total.at(x, y, c) / den;
            }
        }
    detail::clamp_to_hull(out, st.lo, st.hi);
    out.value_scale = sparse.values.value_scale;
    return out;
}

}  // namespace geofill
