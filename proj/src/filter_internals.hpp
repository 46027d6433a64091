#ifndef GEOFILL_FILTER_INTERNALS_HPP
#define GEOFILL_FILTER_INTERNALS_HPP

// Shared plumbing for the interpolators: known-sample bookkeeping, the
// single-sample shortcut, nearest-sample fallbacks and the hull clamp.

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <vector>

#include "geofill/core.hpp"

namespace geofill::detail {

struct KnownStats {
    std::vector<SparseSite> sites;  // raster order
    std::vector<double> lo, hi;     // per data channel, over known sites
};

inline KnownStats collect_known(const SparseField& sparse) {
    KnownStats st;
    st.sites = sparse.sites();
    const int c = sparse.channels();
    st.lo.assign(c, std::numeric_limits<double>::infinity());
    st.hi.assign(c, -std::numeric_limits<double>::infinity());
    for (const SparseSite& s : st.sites) {
        for (int i = 0; i < c; ++i) {
            st.lo[i] = std::min(st.lo[i], s.values[i]);
            st.hi[i] = std::max(st.hi[i], s.values[i]);
        }
    }
    return st;
}

// Count / first site / per-channel range in one scan, without materializing
// a site list; keeps the constant-time interpolator's setup cost independent
// of how many samples are known.
struct KnownSummary {
    std::size_t count = 0;
    int first_x = 0, first_y = 0;  // raster-first known site
    std::vector<double> lo, hi;    // per data channel, over known sites
};

inline KnownSummary summarize_known(const SparseField& sparse) {
    KnownSummary st;
    const int w = sparse.width(), h = sparse.height(), c = sparse.channels();
    st.lo.assign(c, std::numeric_limits<double>::infinity());
    st.hi.assign(c, -std::numeric_limits<double>::infinity());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (sparse.confidence.at(x, y) == 0.0) continue;
            if (st.count == 0) {
                st.first_x = x;
                st.first_y = y;
            }
            ++st.count;
            for (int i = 0; i < c; ++i) {
                double v = sparse.values.at(x, y, i);
                st.lo[i] = std::min(st.lo[i], v);
                st.hi[i] = std::max(st.hi[i], v);
            }
        }
    return st;
}

// With one known sample the weighted ratio collapses to that sample at every
// pixel; filling directly keeps the collapse exact instead of leaving it to
// floating-point cancellation in (w*v)/w.
inline ImageGrid constant_fill(const SparseField& sparse, const SparseSite& site) {
    ImageGrid out(sparse.width(), sparse.height(), sparse.channels());
    std::size_t i = 0;
    for (std::size_t p = 0; p < out.pixel_count(); ++p)
        for (int c = 0; c < out.channels; ++c)
            out.data[i++] = site.values[c];
    out.value_scale = sparse.values.value_scale;
    return out;
}

inline ImageGrid constant_fill_at(const SparseField& sparse, int x, int y) {
    ImageGrid out(sparse.width(), sparse.height(), sparse.channels());
    std::size_t i = 0;
    for (std::size_t p = 0; p < out.pixel_count(); ++p)
        for (int c = 0; c < out.channels; ++c)
            out.data[i++] = sparse.values.at(x, y, c);
    out.value_scale = sparse.values.value_scale;
    return out;
}

// Nearest known site, by L1 grid distance or squared Euclidean distance.
// Scanning raster-ordered sites with strict improvement resolves ties toward
// the smallest row, then the smallest column.
inline const SparseSite& nearest_site(const std::vector<SparseSite>& sites,
                                      int x, int y, bool l1) {
    const SparseSite* best = &sites.front();
    long long best_d = std::numeric_limits<long long>::max();
    for (const SparseSite& s : sites) {
        long long dx = std::llabs(static_cast<long long>(s.x) - x);
        long long dy = std::llabs(static_cast<long long>(s.y) - y);
        long long d = l1 ? dx + dy : dx * dx + dy * dy;
        if (d < best_d) {
            best_d = d;
            best = &s;
        }
    }
    return *best;
}

// All four interpolators emit convex combinations of known values; clamping
// to the per-channel range of the samples removes the last-ulp excursions
// rounding can introduce.
inline void clamp_to_hull(ImageGrid& img, const std::vector<double>& lo,
                          const std::vector<double>& hi) {
    std::size_t i = 0;
    for (std::size_t p = 0; p < img.pixel_count(); ++p)
        for (int c = 0; c < img.channels; ++c, ++i)
            img.data[i] = std::clamp(img.data[i], lo[c], hi[c]);
}

inline void clamp_to_hull(ImageGrid& img, const KnownStats& st) {
    clamp_to_hull(img, st.lo, st.hi);
}

}  // namespace geofill::detail

#endif  // GEOFILL_FILTER_INTERNALS_HPP
