#include "geofill/exact_oracle.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "filter_internals.hpp"

namespace geofill {

GeodesicDistanceMap geodesic_distance_map(const ImageGrid& guidance,
                                          int source_x, int source_y,
                                          const FilterParams& params) {
    if (!guidance.in_bounds(source_x, source_y))
        throw DomainError("distance-map source pixel out of bounds");

    const int w = guidance.width, h = guidance.height, ch = guidance.channels;
    const double inf = std::numeric_limits<double>::infinity();

    GeodesicDistanceMap map;
    map.source_x = source_x;
    map.source_y = source_y;
    map.distances = ImageGrid(w, h, 1, inf);

    auto edge_cost = [&](int x0, int y0, int x1, int y1) {
        double d2 = 0.0;
        for (int c = 0; c < ch; ++c) {
            double d = guidance.at(x1, y1, c) - guidance.at(x0, y0, c);
            d2 += d * d;
        }
        return std::sqrt(d2) + params.delta;
    };

    using Item = std::pair<double, int>;  // (distance, y*w + x)
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    map.distances.at(source_x, source_y) = 0.0;
    queue.push({0.0, source_y * w + source_x});

    static const int step_x[4] = {1, -1, 0, 0};
    static const int step_y[4] = {0, 0, 1, -1};
    while (!queue.empty()) {
        auto [dist, idx] = queue.top();
        queue.pop();
        int x = idx % w, y = idx / w;
        if (dist > map.distances.at(x, y)) continue;  // stale entry
        for (int k = 0; k < 4; ++k) {
            int nx = x + step_x[k], ny = y + step_y[k];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            double nd = dist + edge_cost(x, y, nx, ny);
            if (nd < map.distances.at(nx, ny)) {
                map.distances.at(nx, ny) = nd;
                queue.push({nd, ny * w + nx});
            }
        }
    }
    return map;
}

double exact_weight(const ImageGrid& guidance, int px, int py, int qx, int qy,
                    const FilterParams& params) {
    if (!guidance.in_bounds(qx, qy))
        throw DomainError("weight query pixel out of bounds");
    GeodesicDistanceMap map = geodesic_distance_map(guidance, px, py, params);
    return std::exp(-params.a * map.distances.at(qx, qy));
}

ImageGrid exact_filter(const SparseField& sparse, const ImageGrid& guidance,
                       const FilterParams& params) {
    if (sparse.width() != guidance.width || sparse.height() != guidance.height)
        throw DomainError("sparse field and guidance dimensions differ");
    if (guidance.pixel_count() > 65536)
        throw DomainError("exact filter is limited to 65536 pixels (all-pairs cost)");

    detail::KnownStats st = detail::collect_known(sparse);
    if (st.sites.empty())
        throw DomainError("no confident samples to interpolate from");
    if (st.sites.size() == 1)
        return detail::constant_fill(sparse, st.sites.front());

    const int w = sparse.width(), h = sparse.height(), ch = sparse.channels();
    ImageGrid num(w, h, ch, 0.0);
    ImageGrid den(w, h, 1, 0.0);

    for (const SparseSite& s : st.sites) {
        GeodesicDistanceMap map = geodesic_distance_map(guidance, s.x, s.y, params);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double wgt = std::exp(-params.a * map.distances.at(x, y));
                den.at(x, y) += wgt;
                for (int c = 0; c < ch; ++c)
                    num.at(x, y, c) += wgt * s.values[c];
            }
    }

    ImageGrid out(w, h, ch);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (den.at(x, y) < 1e-300) {
                // same total-output fallback as the fast filter
                const SparseSite& s = detail::nearest_site(st.sites, x, y, /*l1=*/true);
                for (int c = 0; c < ch; ++c)
                    out.at(x, y, c) = s.values[c];
            } else {
                for (int c = 0; c < ch; ++c)
                    out.at(x, y, c) = num.at(x, y, c) / den.at(x, y);
            }
        }
    detail::clamp_to_hull(out, st);
    out.value_scale = sparse.values.value_scale;
    return out;
}

}  // namespace geofill
