#include "doctest.h"

#include <set>

#include "ordtest/imageboundary.hpp"
#include "ordtest/properties.hpp"
#include "ordtest/rng.hpp"

using namespace ordtest;

namespace {

BWImage from_rows(const std::vector<std::string>& rows) {
    BWImage img = all_white(int(rows.size()));
    for (int r = 0; r < img.n; ++r)
        for (int c = 0; c < img.n; ++c)
            if (rows[std::size_t(r)][std::size_t(c)] == '1') img.set(r, c, true);
    return img;
}

// concentric black ring with a white hole in a 7x7 framed grid
BWImage ring7() {
    return from_rows({
        "0000000",
        "0111110",
        "0100010",
        "0100010",
        "0100010",
        "0111110",
        "0000000",
    });
}

const Shape& shape_containing(const std::vector<Shape>& ss, int pixel) {
    for (const Shape& s : ss)
        if (std::find(s.pixels.begin(), s.pixels.end(), pixel) != s.pixels.end()) return s;
    throw std::runtime_error("pixel not found");
}

BWImage random_framed(int n, Rng& rng, int denom = 2) {
    BWImage img = all_white(n);
    for (int r = 1; r + 1 < n; ++r)
        for (int c = 1; c + 1 < n; ++c) img.set(r, c, rng.below(std::uint64_t(denom)) == 0);
    return img;
}

} // namespace

TEST_CASE("shape decomposition examples") {
    BWImage white = all_white(5);
    auto s1 = shapes(white);
    CHECK(s1.size() == 1);
    CHECK(s1[0].is_outer);

    BWImage dot = all_white(5);
    dot.set(2, 2, true);
    auto s2 = shapes(dot);
    CHECK(s2.size() == 2);

    auto s3 = shapes(ring7());
    CHECK(s3.size() == 3); // outer white, black ring, white center column pattern
}

TEST_CASE("shapes partition the grid into maximal monochromatic components") {
    Rng rng(3);
    for (int it = 0; it < 20; ++it) {
        BWImage img = random_framed(10, rng);
        auto ss = shapes(img);
        std::size_t total = 0;
        for (const Shape& s : ss) {
            total += s.pixels.size();
            for (int p : s.pixels)
                CHECK(img.black(p / img.n, p % img.n) == s.color);
        }
        CHECK(total == std::size_t(img.n) * img.n);
    }
}

TEST_CASE("outer boundary of a solid square is its perimeter") {
    for (int r = 1; r <= 4; ++r) {
        int n = r + 4;
        BWImage img = all_white(n);
        for (int i = 2; i < 2 + r; ++i)
            for (int j = 2; j < 2 + r; ++j) img.set(i, j, true);
        auto ss = shapes(img);
        const Shape& sq = shape_containing(ss, 2 * n + 2);
        std::vector<int> b = outer_boundary(sq, img);
        // perimeter pixels of an r x r square
        std::set<int> want;
        for (int i = 2; i < 2 + r; ++i)
            for (int j = 2; j < 2 + r; ++j)
                if (i == 2 || j == 2 || i == r + 1 || j == r + 1) want.insert(i * n + j);
        CHECK(std::set<int>(b.begin(), b.end()) == want);
        // definition-level oracle agrees
        CHECK(outer_boundary_bruteforce(sq, img) == b);
    }
}

TEST_CASE("single pixel: boundary and encircled set are the pixel itself") {
    BWImage img = all_white(5);
    img.set(2, 3, true);
    auto ss = shapes(img);
    const Shape& dot = shape_containing(ss, 2 * 5 + 3);
    std::vector<int> b = outer_boundary(dot, img);
    CHECK(b == std::vector<int>{13});
    std::vector<int> enc = encircled(dot, img);
    CHECK(enc == std::vector<int>{13});
    CHECK(std::int64_t(enc.size()) <= std::int64_t(b.size()) * std::int64_t(b.size()));
}

TEST_CASE("the ring encircles its hole") {
    BWImage img = ring7();
    auto ss = shapes(img);
    const Shape& ring = shape_containing(ss, 1 * 7 + 1);
    const Shape& hole = shape_containing(ss, 3 * 7 + 3);
    CHECK(ring.color);
    CHECK(!hole.color);
    CHECK(!hole.is_outer);

    // paths avoid only the shape itself, so they may cross the ring: the
    // hole's outer boundary is its border ring (all but the center pixel)
    std::vector<int> hb = outer_boundary(hole, img);
    CHECK(hb.size() == 8);
    CHECK(std::find(hb.begin(), hb.end(), 3 * 7 + 3) == hb.end());
    CHECK(outer_boundary_bruteforce(hole, img) == hb);

    // the ring's boundary is only its outer perimeter: its inner pixels are
    // unreachable without crossing the rest of the ring
    std::vector<int> rb = outer_boundary(ring, img);
    CHECK(rb.size() == 16);

    // the encircled set of the ring is the full 5x5 block including the hole
    std::vector<int> enc = encircled(ring, img);
    CHECK(enc.size() == 25);
    CHECK(std::find(enc.begin(), enc.end(), 3 * 7 + 3) != enc.end());
    CHECK(encircled_bruteforce(ring, img) == enc);

    // the hole encircles nothing beyond itself
    CHECK(encircled(hole, img).size() == hole.pixels.size());
}

TEST_CASE("windowed flood equals the full-grid oracle on random images") {
    Rng rng(7);
    for (int it = 0; it < 50; ++it) {
        BWImage img = random_framed(12, rng, 2 + int(it % 3));
        auto ss = shapes(img);
        for (const Shape& s : ss) {
            if (s.is_outer) continue;
            CHECK(outer_boundary(s, img) == outer_boundary_bruteforce(s, img));
            CHECK(encircled(s, img) == encircled_bruteforce(s, img));
        }
    }
}

TEST_CASE("outer boundary rejects the outer shape") {
    BWImage img = all_white(4);
    auto ss = shapes(img);
    CHECK_THROWS_AS(outer_boundary(ss[0], img), parameter_error);
    CHECK_THROWS_AS(encircled(ss[0], img), parameter_error);
}

TEST_CASE("encircled set of a solid square matches the arithmetic bound") {
    for (int k = 2; k <= 4; ++k) {
        int n = k + 4;
        BWImage img = all_white(n);
        for (int i = 2; i < 2 + k; ++i)
            for (int j = 2; j < 2 + k; ++j) img.set(i, j, true);
        auto ss = shapes(img);
        const Shape& sq = shape_containing(ss, 2 * n + 2);
        std::vector<int> enc = encircled(sq, img);
        std::vector<int> b = outer_boundary(sq, img);
        CHECK(std::int64_t(enc.size()) == std::int64_t(k) * k);
        CHECK(std::int64_t(b.size()) == 4 * k - 4);
        CHECK(std::int64_t(enc.size()) <= std::int64_t(b.size()) * std::int64_t(b.size()));
    }
}

TEST_CASE("boundary report: all-white, convexity bound, random lemma check") {
    BoundaryReport empty = boundary_report(all_white(8));
    CHECK(empty.global_boundary.empty());
    CHECK(empty.sparsity == Rat(0));

    // a convex black shape has |B(I)| <= 4n
    BWImage disk = disk_image(32);
    BoundaryReport dr = boundary_report(disk);
    CHECK(std::int64_t(dr.global_boundary.size()) <= 4 * dr.n);
    CHECK(dr.boundary_pixel_lemma_holds);
    CHECK(dr.outer_boundary_sum_bound_holds);

    Rng rng(11);
    for (int it = 0; it < 200; ++it) {
        BWImage img = random_framed(16, rng, 2 + (it % 3));
        BoundaryReport rep = boundary_report(img);
        CHECK(rep.boundary_pixel_lemma_holds);
        CHECK(rep.outer_boundary_sum_bound_holds);
    }
}

TEST_CASE("auto-framing is reported") {
    BWImage unframed = all_white(4);
    unframed.set(0, 0, true); // black corner forces the frame
    unframed.set(0, 1, true);
    BoundaryReport rep = boundary_report(unframed);
    CHECK(rep.auto_framed);
    CHECK(rep.n == 6);
    CHECK(rep.boundary_pixel_lemma_holds);
}

TEST_CASE("regularize: fixed points and single-pixel cleanup") {
    // all shapes large: nothing to do
    BWImage disk = disk_image(24);
    RegularizeResult keep = regularize(disk, 0.0004); // threshold sqrt(delta)*n = 0.48
    CHECK(keep.iterations == 0);
    CHECK(keep.modified_pixels == 0);
    CHECK(keep.j.px == ensure_framed(disk).px);

    // single black pixel vanishes once the threshold reaches 1
    BWImage dot = all_white(6);
    dot.set(3, 3, true);
    RegularizeResult gone = regularize(dot, 0.25); // sqrt(delta)*n = 3
    CHECK(gone.iterations == 1);
    CHECK(gone.modified_pixels == 1);
    CHECK(gone.j.black_count() == 0);
    CHECK(gone.strictly_decreasing);

    CHECK_THROWS_AS(regularize(dot, 0.0), parameter_error);
}

TEST_CASE("regularize terminates with strictly decreasing boundary on random images") {
    Rng rng(13);
    for (int it = 0; it < 25; ++it) {
        BWImage img = random_framed(20, rng);
        auto ss = shapes(img);
        std::int64_t non_outer = 0;
        for (const Shape& s : ss)
            if (!s.is_outer) ++non_outer;
        RegularizeResult res = regularize(img, 0.04);
        CHECK(res.strictly_decreasing);
        CHECK(res.iterations <= non_outer);
    }
}

TEST_CASE("path cover: single pixel and squares") {
    BWImage dot = all_white(5);
    dot.set(2, 2, true);
    auto ss = shapes(dot);
    PathCover pc = boundary_path_cover(shape_containing(ss, 12), dot);
    CHECK(pc.covers_boundary);
    CHECK(pc.path.size() <= 4);

    for (int r = 2; r <= 6; ++r) {
        int n = r + 4;
        BWImage img = all_white(n);
        for (int i = 2; i < 2 + r; ++i)
            for (int j = 2; j < 2 + r; ++j) img.set(i, j, true);
        auto sq = shapes(img);
        PathCover cover = boundary_path_cover(shape_containing(sq, 2 * n + 2), img);
        CHECK(cover.covers_boundary);
        CHECK(cover.boundary_size == 4 * r - 4);
    }
}

TEST_CASE("path cover on random shapes") {
    Rng rng(17);
    int covered_shapes = 0;
    double worst_ratio = 0;
    for (int it = 0; it < 40 && covered_shapes < 200; ++it) {
        BWImage img = random_framed(14, rng, 2 + (it % 2));
        auto ss = shapes(img);
        for (const Shape& s : ss) {
            if (s.is_outer) continue;
            PathCover pc = boundary_path_cover(s, img);
            CHECK(pc.covers_boundary);
            worst_ratio = std::max(worst_ratio, pc.length_ratio);
            ++covered_shapes;
        }
    }
    CHECK(covered_shapes >= 200);
    CHECK(worst_ratio < 8.0); // measured constant stays small
}

TEST_CASE("boundary distance census") {
    BWImage white = all_white(8);
    for (int d : {0, 2, 20}) CHECK(boundary_distance_census(white, d).census == 0);

    BWImage disk = disk_image(16);
    CensusResult c0 = boundary_distance_census(disk, 0);
    CHECK(c0.census == c0.boundary);
    std::int64_t prev = -1;
    for (int d : {0, 1, 2, 4, 8}) {
        CensusResult c = boundary_distance_census(disk, d);
        CHECK(c.census >= prev);
        prev = c.census;
    }
    CensusResult all = boundary_distance_census(disk, 2 * 16);
    CHECK(all.census == std::int64_t(16) * 16);
    CHECK_THROWS_AS(boundary_distance_census(disk, -1), parameter_error);
}

TEST_CASE("er experiment: zero budget means zero distance") {
    BWImage disk = disk_image(16);
    ERExperimentResult r = er_experiment(disk, 1e-6, 5, 3);
    CHECK(r.budget_moves == 0);
    CHECK(r.worst == 0.0);
}

TEST_CASE("er experiment reports a positive ratio under a real budget") {
    BWImage disk = disk_image(32);
    ERExperimentResult r = er_experiment(disk, 0.01, 50, 9);
    CHECK(r.budget_moves == std::int64_t(0.01 * double(binom2(64))));
    CHECK(r.worst > 0.0);
    CHECK(r.worst_adversarial > 0.0);
    CHECK(r.ratio > 0.0);
    CHECK(r.sparsity_c > Rat(0));
}
