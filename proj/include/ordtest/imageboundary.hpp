#ifndef ORDTEST_IMAGEBOUNDARY_HPP
#define ORDTEST_IMAGEBOUNDARY_HPP

#include <cstdint>
#include <vector>

#include "ordtest/rational.hpp"
#include "ordtest/rng.hpp"
#include "ordtest/structures.hpp"

namespace ordtest {

// Square black/white image; the outer pixel is (1,1) in 1-based coordinates,
// stored 0-based as (0,0). Most operations expect a framed image (all border
// pixels white) and auto-frame when necessary.
struct BWImage {
    int n = 0;
    std::vector<std::uint8_t> px; // 0 white, 1 black, row-major

    bool black(int r, int c) const { return px[std::size_t(r) * n + c] != 0; }
    void set(int r, int c, bool b) { px[std::size_t(r) * n + c] = b ? 1 : 0; }
    std::int64_t black_count() const {
        std::int64_t s = 0;
        for (auto v : px) s += v;
        return s;
    }
};

BWImage bw_from_image(const Image& img);
Image bw_to_image(const BWImage& img);
BWImage all_white(int n);
bool is_framed(const BWImage& img);
// Adds a one-pixel white border ((n+2) x (n+2)); identity when already framed.
BWImage ensure_framed(const BWImage& img);

// Maximal 4-connected monochromatic component.
struct Shape {
    bool color = false; // true = black
    std::vector<int> pixels; // linear indices, sorted
    bool is_outer = false;   // contains the outer pixel (1,1)
};

std::vector<Shape> shapes(const BWImage& img);

// Pixels of S reachable from the outer pixel by a path meeting S only at the
// endpoint; computed by flood fill over the complement of S, restricted to
// the inflated bounding box of S (sound for non-outer shapes of a framed
// image). Requires a framed image.
std::vector<int> outer_boundary(const Shape& s, const BWImage& img);

// All pixels every path from the outer pixel must cross S to reach
// (includes S itself).
std::vector<int> encircled(const Shape& s, const BWImage& img);

// Definition-level oracles: full-grid flood fill from the outer pixel.
std::vector<int> outer_boundary_bruteforce(const Shape& s, const BWImage& img);
std::vector<int> encircled_bruteforce(const Shape& s, const BWImage& img);

struct BoundaryReport {
    bool auto_framed = false;
    int n = 0;
    std::vector<Shape> all_shapes;
    std::vector<std::vector<int>> per_shape_boundary; // aligned with all_shapes
    std::vector<int> global_boundary;                 // B(I), sorted
    Rat sparsity;                                     // |B(I)| / n
    std::int64_t def_boundary_size = 0;               // black pixels with a white neighbor
    bool boundary_pixel_lemma_holds = true;
    bool outer_boundary_sum_bound_holds = true;       // |B(I)| <= 4 * def boundary
};

// use_8_neighbors affects only the definition-level sparsity count, not the
// shape decomposition.
BoundaryReport boundary_report(const BWImage& img, bool use_8_neighbors = false);

struct RegularizeResult {
    BWImage j;
    std::int64_t modified_pixels = 0;
    int iterations = 0;
    std::vector<std::int64_t> boundary_sizes; // |B(J)| before each iteration + final
    bool strictly_decreasing = true;
};

// While some non-outer shape has |B(S)| <= sqrt(delta)*n, recolor its
// encircled set to the opposite color (smallest boundary first).
RegularizeResult regularize(const BWImage& img, double delta);

struct PathCover {
    std::vector<int> path; // pixel sequence along the clockwise contour walk
    std::int64_t boundary_size = 0;
    bool covers_boundary = true;
    double length_ratio = 0.0; // |path| / |B(S)|
};

PathCover boundary_path_cover(const Shape& s, const BWImage& img);

struct CensusResult {
    std::int64_t census = 0;     // pixels with boundary distance <= d
    std::int64_t boundary = 0;   // |B(I)|
    std::int64_t shape_count = 0; // non-outer shapes
    double constant = 0.0;       // census / (d*|B| + d^2*shapes), d >= 1
};

CensusResult boundary_distance_census(const BWImage& img, int d);

struct ERExperimentResult {
    std::int64_t budget_moves = 0;
    double worst_random = 0.0;      // max d_H(I, I') over random schedules
    double worst_adversarial = 0.0; // max over the displacement schedules
    double worst = 0.0;
    Rat sparsity_c;                 // definition-level c = |B|/n
    double ratio = 0.0;             // worst / (c * sqrt(delta))
    double worst_regularized = 0.0; // same schedules applied to regularize(I).j
};

// Applies random and adversarial basic-move schedules within the budget
// floor(delta * C(2n,2)) and measures the worst Hamming change.
ERExperimentResult er_experiment(const BWImage& img, double delta, int trials,
                                 std::uint64_t seed);

// Disk of radius ~0.4n centered in the grid; the convex workhorse of the
// scaling experiment.
BWImage disk_image(int n);
BWImage ring_image(int n);

} // namespace ordtest

#endif
