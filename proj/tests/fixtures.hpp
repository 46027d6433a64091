#ifndef GEOFILL_TEST_FIXTURES_HPP
#define GEOFILL_TEST_FIXTURES_HPP

// Synthetic evaluation scene: piecewise-constant disparity with gray-level
// region boundaries in the guidance that coincide with the disparity edges.
// The guidance carries strong per-pixel texture so path costs accumulate
// inside regions, and two same-gray region pairs (split only by a narrow
// spacer strip of different gray) that a pointwise color comparison cannot
// tell apart.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "geofill/core.hpp"

namespace testutil {

struct Fixture {
    geofill::ImageGrid guidance;  // 1 channel, integer values in [0,255]
    geofill::ImageGrid gt;        // 1 channel disparity
};

inline std::uint32_t hash2d(std::uint32_t x, std::uint32_t y) {
    std::uint32_t h = x * 0x9E3779B1u ^ (y + 0x7F4A7C15u) * 0x85EBCA77u;
    h ^= h >> 15;
    h *= 0x2C1B3C6Du;
    h ^= h >> 13;
    h *= 0x297A2D39u;
    h ^= h >> 16;
    return h;
}

inline Fixture make_region_fixture(int texture_amp = 80) {
    const int n = 256;
    Fixture f{geofill::ImageGrid(n, n, 1), geofill::ImageGrid(n, n, 1)};
    f.guidance.value_scale = 255.0;

    struct Region {
        int x0, y0, x1, y1;
        double gray, disp;
    };
    // Every region is at least 16 px in both directions so even the coarsest
    // regular sweep lattice lands a sample in each one, and the boundary
    // coordinates avoid sharing residues mod the sweep steps (keeps lattice
    // phase effects from piling up at one step).
    std::vector<Region> regions = {
        // top-left quarter: 2x2 checkerboard, strong gray contrast
        {0, 0, 64, 64, 60, 8},
        {64, 0, 128, 64, 200, 24},
        {0, 64, 64, 128, 200, 24},
        {64, 64, 128, 128, 60, 8},
        // top-right quarter: same-gray pair split by a bright spacer
        {128, 0, 185, 128, 120, 12},
        {185, 0, 203, 128, 230, 12},
        {203, 0, 256, 128, 120, 36},
        // bottom-right quarter: same-gray pair split by a dark spacer,
        // plus one contrasting block
        {128, 128, 167, 256, 100, 44},
        {167, 128, 191, 256, 30, 44},
        {191, 128, 213, 256, 100, 14},
        {213, 128, 256, 256, 210, 30},
    };
    // bottom-left quarter: horizontal bars
    {
        const int heights[] = {23, 22, 17, 24, 21, 21};
        int y = 128;
        int i = 0;
        for (int hgt : heights) {
            double gray = (i % 2 == 0) ? 85.0 : 170.0;
            double disp = (i % 2 == 0) ? 10.0 : 30.0;
            regions.push_back({0, y, 128, y + hgt, gray, disp});
            y += hgt;
            ++i;
        }
    }

    for (const Region& r : regions)
        for (int y = r.y0; y < r.y1; ++y)
            for (int x = r.x0; x < r.x1; ++x) {
                int noise = static_cast<int>(hash2d(x, y) % (2 * texture_amp + 1)) -
                            texture_amp;
                double g = std::clamp(r.gray + noise, 0.0, 255.0);
                f.guidance.at(x, y) = g;
                f.gt.at(x, y) = r.disp;
            }
    return f;
}

}  // namespace testutil

#endif  // GEOFILL_TEST_FIXTURES_HPP
