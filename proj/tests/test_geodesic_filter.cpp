#include <cmath>
#include <random>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace geofill;
using namespace testutil;

static EdgeWeights uniform_weights(int w, int h, double g) {
    EdgeWeights ew;
    ew.width = w;
    ew.height = h;
    ew.horizontal.assign(static_cast<std::size_t>(w - 1) * h, g);
    ew.vertical.assign(static_cast<std::size_t>(w) * (h - 1), g);
    return ew;
}

static ImageGrid impulse(int w, int h, int x, int y) {
    ImageGrid z(w, h, 1, 0.0);
    z.at(x, y) = 1.0;
    return z;
}

static ImageGrid mirror_x(const ImageGrid& img) {
    ImageGrid out(img.width, img.height, img.channels);
    out.value_scale = img.value_scale;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c)
                out.at(img.width - 1 - x, y, c) = img.at(x, y, c);
    return out;
}

static ImageGrid mirror_y(const ImageGrid& img) {
    ImageGrid out(img.width, img.height, img.channels);
    out.value_scale = img.value_scale;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c)
                out.at(x, img.height - 1 - y, c) = img.at(x, y, c);
    return out;
}

TEST_CASE("edge weights on a two-pixel gray step") {
    ImageGrid g(2, 1, 1);
    g.at(0, 0) = 0.0;
    g.at(1, 0) = 50.0;
    FilterParams p = derive_params(50.0, 100.0);
    EdgeWeights w = compute_edge_weights(g, p);
    REQUIRE(w.horizontal.size() == 1);
    REQUIRE(w.vertical.size() == 0);
    CHECK(w.horizontal_at(0, 0) == std::exp(-p.a * (50.0 + p.delta)));
}

TEST_CASE("edge weight hits exp(-2) at unit bandwidths") {
    // identical neighbors, sigma_r = sigma_s = 1: cost = delta = 1, a = 2
    ImageGrid g(2, 1, 1, 37.0);
    EdgeWeights w = compute_edge_weights(g, derive_params(1.0, 1.0));
    CHECK(w.horizontal_at(0, 0) == std::exp(-2.0));
}

TEST_CASE("constant guidance gives every edge the pure spatial factor") {
    ImageGrid g(5, 4, 3, 123.0);
    FilterParams p = derive_params(50.0, 100.0);
    EdgeWeights w = compute_edge_weights(g, p);
    double expected = std::exp(-p.a * p.delta);
    for (double v : w.horizontal) CHECK(v == expected);
    for (double v : w.vertical) CHECK(v == expected);
    REQUIRE(w.horizontal.size() == 4 * 4);
    REQUIRE(w.vertical.size() == 5 * 3);
}

TEST_CASE("edge weights use the L2 color difference") {
    ImageGrid g(1, 2, 3);
    g.at(0, 0, 0) = 10.0; g.at(0, 0, 1) = 20.0; g.at(0, 0, 2) = 30.0;
    g.at(0, 1, 0) = 13.0; g.at(0, 1, 1) = 24.0; g.at(0, 1, 2) = 30.0;  // diff (3,4,0) -> 5
    FilterParams p = derive_params(50.0, 100.0);
    EdgeWeights w = compute_edge_weights(g, p);
    CHECK(w.vertical_at(0, 0) == std::exp(-p.a * (5.0 + p.delta)));
}

TEST_CASE("edge weights stay inside (0,1) even for extreme bandwidths") {
    ImageGrid g(3, 1, 1);
    g.at(0, 0) = 0.0; g.at(1, 0) = 255.0; g.at(2, 0) = 255.0;
    EdgeWeights w = compute_edge_weights(g, derive_params(1e-6, 1.0));
    CHECK(w.horizontal_at(0, 0) > 0.0);
    CHECK(w.horizontal_at(1, 0) > 0.0);
    CHECK(w.horizontal_at(1, 0) < 1.0);
    EdgeWeights w2 = compute_edge_weights(g, derive_params(1e9, 1e9));
    for (double v : w2.horizontal) CHECK(v < 1.0);
}

TEST_CASE("edge weights reject unsupported channel counts and bad params") {
    ImageGrid g2(3, 3, 2, 0.0);
    CHECK_THROWS_AS(compute_edge_weights(g2, derive_params(50.0, 100.0)), DomainError);
    ImageGrid g1(3, 3, 1, 0.0);
    FilterParams bad;  // all zero
    CHECK_THROWS_AS(compute_edge_weights(g1, bad), DomainError);
}

TEST_CASE("causal pass on a three-pixel row with factor one half") {
    EdgeWeights w = uniform_weights(3, 1, 0.5);
    ImageGrid z = impulse(3, 1, 0, 0);
    ImageGrid lr = directional_pass(z, w, Direction::left_to_right);
    CHECK(lr.at(0, 0) == 1.0);
    CHECK(lr.at(1, 0) == 0.5);
    CHECK(lr.at(2, 0) == 0.25);
    // the same impulse seen from the other direction decays nowhere
    ImageGrid rl = directional_pass(z, w, Direction::right_to_left);
    CHECK(rl.at(0, 0) == 1.0);
    CHECK(rl.at(1, 0) == 0.0);
    CHECK(rl.at(2, 0) == 0.0);
    ImageGrid z2 = impulse(3, 1, 2, 0);
    ImageGrid rl2 = directional_pass(z2, w, Direction::right_to_left);
    CHECK(rl2.at(0, 0) == 0.25);
    CHECK(rl2.at(1, 0) == 0.5);
    CHECK(rl2.at(2, 0) == 1.0);
}

TEST_CASE("quadrant accumulation decays with bent-path length") {
    EdgeWeights w = uniform_weights(3, 3, 0.5);
    ImageGrid z = impulse(3, 3, 0, 0);
    ImageGrid a = quadrant_accumulate(z, w, Quadrant::top_left);
    CHECK(a.at(0, 0) == 1.0);
    CHECK(a.at(2, 0) == 0.25);
    CHECK(a.at(0, 2) == 0.25);
    CHECK(a.at(1, 1) == 0.25);
    CHECK(a.at(2, 2) == 0.0625);  // two right, two down: 0.5^4
    // the source sits outside every other quadrant's footprint except at p=(0,0)
    ImageGrid b = quadrant_accumulate(z, w, Quadrant::bottom_right);
    CHECK(b.at(0, 0) == 1.0);
    CHECK(b.at(1, 1) == 0.0);
    CHECK(b.at(2, 2) == 0.0);
}

TEST_CASE("zero edge factors stop all propagation") {
    EdgeWeights w = uniform_weights(4, 3, 0.0);
    std::mt19937 gen(3);
    ImageGrid z = random_guidance(gen, 4, 3, 2, false);
    for (Direction d : {Direction::left_to_right, Direction::right_to_left,
                        Direction::top_to_bottom, Direction::bottom_to_top}) {
        ImageGrid out = directional_pass(z, w, d);
        CHECK(max_abs_err(out, z) == 0.0);
    }
    for (Quadrant q : {Quadrant::top_left, Quadrant::top_right,
                       Quadrant::bottom_left, Quadrant::bottom_right}) {
        ImageGrid out = quadrant_accumulate(z, w, q);
        CHECK(max_abs_err(out, z) == 0.0);
    }
}

TEST_CASE("directional passes match the explicit per-line sums") {
    std::mt19937 gen(17);
    for (auto [w, h] : {std::pair{7, 5}, {1, 6}, {6, 1}, {1, 1}, {12, 9}}) {
        ImageGrid g = random_guidance(gen, w, h, 1);
        EdgeWeights ew = compute_edge_weights(g, derive_params(50.0, 100.0));
        ImageGrid z = random_guidance(gen, w, h, 2, false);
        for (Direction d : {Direction::left_to_right, Direction::right_to_left,
                            Direction::top_to_bottom, Direction::bottom_to_top}) {
            ImageGrid fast = directional_pass(z, ew, d);
            ImageGrid ref = brute_directional(z, ew, d);
            CHECK(max_rel_err(fast, ref) < 1e-12);
        }
    }
}

TEST_CASE("quadrant sums match the explicit bent-path sums") {
    std::mt19937 gen(19);
    for (auto [w, h] : {std::pair{6, 5}, {1, 4}, {4, 1}, {9, 8}}) {
        ImageGrid g = random_guidance(gen, w, h, 3);
        EdgeWeights ew = compute_edge_weights(g, derive_params(30.0, 8.0));
        ImageGrid z = random_guidance(gen, w, h, 1, false);
        for (Quadrant q : {Quadrant::top_left, Quadrant::top_right,
                           Quadrant::bottom_left, Quadrant::bottom_right}) {
            ImageGrid fast = quadrant_accumulate(z, ew, q);
            ImageGrid ref = brute_quadrant(z, ew, q);
            CHECK(max_rel_err(fast, ref) < 1e-12);
        }
    }
}

TEST_CASE("combined response to an impulse is the bent-path weight") {
    std::mt19937 gen(23);
    ImageGrid g = random_guidance(gen, 6, 5, 1);
    EdgeWeights ew = compute_edge_weights(g, derive_params(50.0, 100.0));
    for (int sy = 0; sy < 5; ++sy)
        for (int sx = 0; sx < 6; ++sx) {
            ImageGrid z = impulse(6, 5, sx, sy);
            ImageGrid total = fast_total(z, ew);
            // the impulse never double-counts: its own pixel comes back exactly
            CHECK(total.at(sx, sy) == 1.0);
            for (int y = 0; y < 5; ++y)
                for (int x = 0; x < 6; ++x) {
                    double expect = lpath_weight(ew, sx, sy, x, y);
                    double got = total.at(x, y);
                    double denom = std::max(expect, 1e-300);
                    CHECK(std::fabs(got - expect) / denom < 1e-13);
                }
        }
}

TEST_CASE("combined response matches the all-pairs bent-path sum") {
    std::mt19937 gen(29);
    for (auto [w, h] : {std::pair{4, 4}, {5, 3}, {1, 5}}) {
        ImageGrid g = random_guidance(gen, w, h, 3);
        EdgeWeights ew = compute_edge_weights(g, derive_params(40.0, 6.0));
        ImageGrid z = random_guidance(gen, w, h, 2, false);
        CHECK(max_rel_err(fast_total(z, ew), brute_total(z, ew)) < 1e-12);
    }
}

TEST_CASE("combine_quadrants checks shapes") {
    ImageGrid a(3, 3, 1, 0.0), bad(2, 3, 1, 0.0);
    CHECK_THROWS_AS(combine_quadrants(a, a, a, a, a, a, a, bad, a), DomainError);
}

TEST_CASE("interpolating a single sample floods its value everywhere") {
    std::mt19937 gen(31);
    ImageGrid g = random_guidance(gen, 9, 7, 3);
    SparseField sp = extend_sparse({{4, 2, {42.5}}}, 9, 7, 1);
    ImageGrid out = interpolate(sp, g, derive_params(50.0, 100.0));
    for (double v : out.data) CHECK(v == 42.5);
}

TEST_CASE("sites sharing one value reproduce it exactly") {
    std::mt19937 gen(37);
    ImageGrid g = random_guidance(gen, 12, 9, 1);
    std::vector<SparseSite> sites;
    for (int i = 0; i < 30; ++i) {
        int x = static_cast<int>(gen() % 12), y = static_cast<int>(gen() % 9);
        bool dup = false;
        for (const SparseSite& s : sites) dup |= (s.x == x && s.y == y);
        if (dup) continue;
        sites.push_back({x, y, {7.25, -3.5}});
    }
    SparseField sp = extend_sparse(sites, 12, 9, 2);
    ImageGrid out = interpolate(sp, g, derive_params(50.0, 100.0));
    for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 12; ++x) {
            CHECK(out.at(x, y, 0) == 7.25);
            CHECK(out.at(x, y, 1) == -3.5);
        }
}

TEST_CASE("on a single row the scan filter equals the exact one") {
    std::mt19937 gen(41);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 2 + static_cast<int>(gen() % 199);
        int k = 1 + static_cast<int>(gen() % std::min(n, 8));
        ImageGrid g = random_guidance(gen, n, 1, 1);
        SparseField sp = random_sparse(gen, n, 1, 1, k);
        FilterParams p = derive_params(50.0, 5.0);
        CHECK(max_rel_err(interpolate(sp, g, p), exact_filter(sp, g, p)) < 1e-9);
    }
    // and the same for a single column
    for (int trial = 0; trial < 4; ++trial) {
        int n = 2 + static_cast<int>(gen() % 199);
        int k = 1 + static_cast<int>(gen() % std::min(n, 8));
        ImageGrid g = random_guidance(gen, 1, n, 3);
        SparseField sp = random_sparse(gen, 1, n, 1, k);
        FilterParams p = derive_params(50.0, 5.0);
        CHECK(max_rel_err(interpolate(sp, g, p), exact_filter(sp, g, p)) < 1e-9);
    }
}

TEST_CASE("on constant guidance the scan filter equals the exact one") {
    // with all edges equal, every bent path is already a shortest path
    std::mt19937 gen(43);
    for (int trial = 0; trial < 6; ++trial) {
        int w = 2 + static_cast<int>(gen() % 15);
        int h = 2 + static_cast<int>(gen() % 15);
        int k = 2 + static_cast<int>(gen() % 7);
        ImageGrid g(w, h, 1, 37.0);
        g.value_scale = 255.0;
        SparseField sp = random_sparse(gen, w, h, 2, k);
        FilterParams p = derive_params(50.0, 5.0);
        CHECK(max_rel_err(interpolate(sp, g, p), exact_filter(sp, g, p)) < 1e-9);
    }
}

TEST_CASE("interpolation commutes with mirroring") {
    std::mt19937 gen(47);
    ImageGrid g = random_guidance(gen, 11, 6, 3);
    SparseField sp = random_sparse(gen, 11, 6, 1, 9);
    FilterParams p = derive_params(50.0, 5.0);
    ImageGrid out = interpolate(sp, g, p);

    SparseField spx{mirror_x(sp.values), mirror_x(sp.confidence)};
    ImageGrid outx = interpolate(spx, mirror_x(g), p);
    CHECK(max_rel_err(outx, mirror_x(out)) < 1e-12);

    SparseField spy{mirror_y(sp.values), mirror_y(sp.confidence)};
    ImageGrid outy = interpolate(spy, mirror_y(g), p);
    CHECK(max_rel_err(outy, mirror_y(out)) < 1e-12);
}

TEST_CASE("output values never leave the sample hull") {
    std::mt19937 gen(53);
    for (int trial = 0; trial < 10; ++trial) {
        int w = 2 + static_cast<int>(gen() % 12);
        int h = 2 + static_cast<int>(gen() % 12);
        int k = 1 + static_cast<int>(gen() % 10);
        ImageGrid g = random_guidance(gen, w, h, 1);
        SparseField sp = random_sparse(gen, w, h, 1, k, -50.0, 50.0);
        double lo = 1e300, hi = -1e300;
        for (const SparseSite& s : sp.sites()) {
            lo = std::min(lo, s.values[0]);
            hi = std::max(hi, s.values[0]);
        }
        ImageGrid out = interpolate(sp, g, derive_params(25.0, 3.0));
        for (double v : out.data) {
            CHECK(v >= lo);
            CHECK(v <= hi);
        }
    }
}

TEST_CASE("interpolate validates its inputs") {
    ImageGrid g(4, 4, 1, 0.0);
    SparseField empty = extend_sparse({}, 4, 4, 1);
    CHECK_THROWS_AS(interpolate(empty, g, derive_params(50.0, 100.0)), DomainError);

    SparseField sp = extend_sparse({{0, 0, {1.0}}}, 4, 4, 1);
    ImageGrid wrong(5, 4, 1, 0.0);
    CHECK_THROWS_AS(interpolate(sp, wrong, derive_params(50.0, 100.0)), DomainError);

    ImageGrid two_ch(4, 4, 2, 0.0);
    CHECK_THROWS_AS(interpolate(sp, two_ch, derive_params(50.0, 100.0)), DomainError);

    FilterParams bad;
    CHECK_THROWS_AS(interpolate(sp, g, bad), DomainError);
}

TEST_CASE("vanishing weights fall back to the nearest sample by grid distance") {
    // sigma_r = 0.01 makes every textured edge factor underflow, so the
    // denominator dies away from the samples and the nearest one must win
    ImageGrid g(8, 8, 1);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) g.at(x, y) = 10.0 * (x + y);
    SparseField sp = extend_sparse({{0, 0, {5.0}}, {7, 7, {9.0}}}, 8, 8, 1);
    ImageGrid out = interpolate(sp, g, derive_params(0.01, 1.0));
    CHECK(out.at(0, 0) == 5.0);
    CHECK(out.at(7, 7) == 9.0);
    CHECK(out.at(3, 3) == 5.0);  // 6 steps vs 8
    CHECK(out.at(4, 4) == 9.0);  // 8 steps vs 6
    CHECK(out.at(3, 4) == 5.0);  // 7 vs 7: earlier site in raster order wins
    CHECK(out.at(4, 3) == 5.0);
}

TEST_CASE("interpolate keeps the data value_scale") {
    std::mt19937 gen(59);
    ImageGrid g = random_guidance(gen, 5, 5, 1);
    SparseField sp = random_sparse(gen, 5, 5, 1, 3);
    sp.values.value_scale = 0.0;
    ImageGrid out = interpolate(sp, g, derive_params(50.0, 100.0));
    CHECK(out.width == 5);
    CHECK(out.height == 5);
    CHECK(out.channels == 1);
    CHECK(out.value_scale == sp.values.value_scale);
}
