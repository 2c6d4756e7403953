#include "ordtest/imageboundary.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

namespace ordtest {

namespace {
constexpr int dr4[4] = {-1, 1, 0, 0};
constexpr int dc4[4] = {0, 0, -1, 1};
}

BWImage bw_from_image(const Image& img) {
    if (img.rows != img.cols) throw parameter_error("BWImage requires a square image");
    if (img.alphabet.size() != 2) throw parameter_error("BWImage requires a binary alphabet");
    BWImage out;
    out.n = img.rows;
    out.px.resize(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.px[i] = std::uint8_t(img.pixels[i]);
    return out;
}

Image bw_to_image(const BWImage& img) {
    std::vector<int> pixels(img.px.begin(), img.px.end());
    return make_image(Alphabet::binary(), img.n, img.n, std::move(pixels));
}

BWImage all_white(int n) {
    if (n < 1) throw parameter_error("image side must be >= 1");
    BWImage out;
    out.n = n;
    out.px.assign(std::size_t(n) * n, 0);
    return out;
}

bool is_framed(const BWImage& img) {
    int n = img.n;
    if (n < 2) return false;
    for (int i = 0; i < n; ++i)
        if (img.black(0, i) || img.black(n - 1, i) || img.black(i, 0) || img.black(i, n - 1))
            return false;
    return true;
}

BWImage ensure_framed(const BWImage& img) {
    if (is_framed(img)) return img;
    BWImage out = all_white(img.n + 2);
    for (int r = 0; r < img.n; ++r)
        for (int c = 0; c < img.n; ++c)
            out.set(r + 1, c + 1, img.black(r, c));
    return out;
}

std::vector<Shape> shapes(const BWImage& img) {
    int n = img.n;
    std::vector<int> comp(std::size_t(n) * n, -1);
    std::vector<Shape> out;
    std::vector<int> stack;
    for (int start = 0; start < n * n; ++start) {
        if (comp[std::size_t(start)] >= 0) continue;
        int id = int(out.size());
        bool color = img.px[std::size_t(start)] != 0;
        Shape s;
        s.color = color;
        comp[std::size_t(start)] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            s.pixels.push_back(cur);
            int r = cur / n, c = cur % n;
            for (int d = 0; d < 4; ++d) {
                int nr = r + dr4[d], nc = c + dc4[d];
                if (nr < 0 || nc < 0 || nr >= n || nc >= n) continue;
                int ni = nr * n + nc;
                if (comp[std::size_t(ni)] >= 0) continue;
                if ((img.px[std::size_t(ni)] != 0) != color) continue;
                comp[std::size_t(ni)] = id;
                stack.push_back(ni);
            }
        }
        std::sort(s.pixels.begin(), s.pixels.end());
        s.is_outer = comp[0] == id;
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

// Reachable set of the complement of S from the outer pixel (0,0).
std::vector<std::uint8_t> complement_flood(const Shape& s, const BWImage& img) {
    int n = img.n;
    std::vector<std::uint8_t> blocked(std::size_t(n) * n, 0);
    for (int p : s.pixels) blocked[std::size_t(p)] = 1;
    std::vector<std::uint8_t> seen(std::size_t(n) * n, 0);
    if (blocked[0]) return seen; // outer pixel inside S: S is the outer shape
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        int r = cur / n, c = cur % n;
        for (int d = 0; d < 4; ++d) {
            int nr = r + dr4[d], nc = c + dc4[d];
            if (nr < 0 || nc < 0 || nr >= n || nc >= n) continue;
            int ni = nr * n + nc;
            if (seen[std::size_t(ni)] || blocked[std::size_t(ni)]) continue;
            seen[std::size_t(ni)] = 1;
            stack.push_back(ni);
        }
    }
    return seen;
}

// Flood within the inflated bounding box of S. In a framed image a non-outer
// shape never touches the border, so the inflated box ring avoids S and is
// connected to the outer pixel around the shape. Cell marks: 1 in S,
// 2 outer-reachable, 3 enclosed.
struct LocalFlood {
    int r0, c0, rows, cols; // window
    std::vector<std::uint8_t> mark;

    int idx(int r, int c) const { return (r - r0) * cols + (c - c0); }
};

LocalFlood local_flood(const Shape& s, const BWImage& img) {
    int n = img.n;
    int minr = n, maxr = -1, minc = n, maxc = -1;
    for (int p : s.pixels) {
        int r = p / n, c = p % n;
        minr = std::min(minr, r);
        maxr = std::max(maxr, r);
        minc = std::min(minc, c);
        maxc = std::max(maxc, c);
    }
    if (minr == 0 || minc == 0 || maxr == n - 1 || maxc == n - 1)
        throw parameter_error("shape touches the border; frame the image first");

    LocalFlood lf;
    lf.r0 = minr - 1;
    lf.c0 = minc - 1;
    lf.rows = maxr - minr + 3;
    lf.cols = maxc - minc + 3;
    lf.mark.assign(std::size_t(lf.rows) * lf.cols, 0);
    for (int p : s.pixels) lf.mark[std::size_t(lf.idx(p / n, p % n))] = 1;

    std::vector<int> stack;
    auto push = [&](int r, int c) {
        int i = lf.idx(r, c);
        if (lf.mark[std::size_t(i)] == 0) {
            lf.mark[std::size_t(i)] = 2;
            stack.push_back(i);
        }
    };
    for (int c = lf.c0; c < lf.c0 + lf.cols; ++c) {
        push(lf.r0, c);
        push(lf.r0 + lf.rows - 1, c);
    }
    for (int r = lf.r0; r < lf.r0 + lf.rows; ++r) {
        push(r, lf.c0);
        push(r, lf.c0 + lf.cols - 1);
    }
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        int r = cur / lf.cols + lf.r0, c = cur % lf.cols + lf.c0;
        for (int d = 0; d < 4; ++d) {
            int nr = r + dr4[d], nc = c + dc4[d];
            if (nr < lf.r0 || nc < lf.c0 || nr >= lf.r0 + lf.rows || nc >= lf.c0 + lf.cols)
                continue;
            push(nr, nc);
        }
    }
    for (auto& m : lf.mark)
        if (m == 0) m = 3;
    return lf;
}

} // namespace

std::vector<int> outer_boundary(const Shape& s, const BWImage& img) {
    if (s.is_outer) throw parameter_error("outer_boundary is undefined for the outer shape");
    if (!is_framed(img)) throw parameter_error("outer_boundary expects a framed image");
    int n = img.n;
    LocalFlood lf = local_flood(s, img);
    std::vector<int> out;
    for (int p : s.pixels) {
        int r = p / n, c = p % n;
        for (int d = 0; d < 4; ++d) {
            if (lf.mark[std::size_t(lf.idx(r + dr4[d], c + dc4[d]))] == 2) {
                out.push_back(p);
                break;
            }
        }
    }
    return out;
}

std::vector<int> encircled(const Shape& s, const BWImage& img) {
    if (s.is_outer) throw parameter_error("encircled is undefined for the outer shape");
    if (!is_framed(img)) throw parameter_error("encircled expects a framed image");
    int n = img.n;
    LocalFlood lf = local_flood(s, img);
    std::vector<int> out;
    for (int r = lf.r0; r < lf.r0 + lf.rows; ++r)
        for (int c = lf.c0; c < lf.c0 + lf.cols; ++c)
            if (lf.mark[std::size_t(lf.idx(r, c))] != 2) out.push_back(r * n + c);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> outer_boundary_bruteforce(const Shape& s, const BWImage& img) {
    if (s.is_outer) throw parameter_error("outer_boundary is undefined for the outer shape");
    int n = img.n;
    std::vector<std::uint8_t> seen = complement_flood(s, img);
    std::vector<int> out;
    for (int p : s.pixels) {
        int r = p / n, c = p % n;
        for (int d = 0; d < 4; ++d) {
            int nr = r + dr4[d], nc = c + dc4[d];
            if (nr < 0 || nc < 0 || nr >= n || nc >= n) continue;
            if (seen[std::size_t(nr * n + nc)]) {
                out.push_back(p);
                break;
            }
        }
    }
    return out;
}

std::vector<int> encircled_bruteforce(const Shape& s, const BWImage& img) {
    if (s.is_outer) throw parameter_error("encircled is undefined for the outer shape");
    int n = img.n;
    std::vector<std::uint8_t> seen = complement_flood(s, img);
    std::vector<int> out;
    for (int p = 0; p < n * n; ++p)
        if (!seen[std::size_t(p)]) out.push_back(p);
    return out;
}

BoundaryReport boundary_report(const BWImage& input, bool use_8_neighbors) {
    BoundaryReport rep;
    BWImage img = ensure_framed(input);
    rep.auto_framed = img.n != input.n;
    rep.n = img.n;
    int n = img.n;

    rep.all_shapes = shapes(img);
    std::vector<int> shape_of(std::size_t(n) * n, -1);
    for (std::size_t si = 0; si < rep.all_shapes.size(); ++si)
        for (int p : rep.all_shapes[si].pixels) shape_of[std::size_t(p)] = int(si);

    std::set<int> global;
    rep.per_shape_boundary.resize(rep.all_shapes.size());
    std::vector<std::set<int>> bset(rep.all_shapes.size());
    for (std::size_t si = 0; si < rep.all_shapes.size(); ++si) {
        if (rep.all_shapes[si].is_outer) continue;
        rep.per_shape_boundary[si] = outer_boundary(rep.all_shapes[si], img);
        bset[si].insert(rep.per_shape_boundary[si].begin(), rep.per_shape_boundary[si].end());
        global.insert(rep.per_shape_boundary[si].begin(), rep.per_shape_boundary[si].end());
    }
    rep.global_boundary.assign(global.begin(), global.end());
    rep.sparsity = Rat(std::int64_t(rep.global_boundary.size()), n);

    // definition-level boundary: black pixels with a white neighbor
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (!img.black(r, c)) continue;
            bool white_neighbor = false;
            if (use_8_neighbors) {
                for (int dr = -1; dr <= 1 && !white_neighbor; ++dr)
                    for (int dc = -1; dc <= 1 && !white_neighbor; ++dc) {
                        if (dr == 0 && dc == 0) continue;
                        int nr = r + dr, nc = c + dc;
                        if (nr < 0 || nc < 0 || nr >= n || nc >= n) continue;
                        if (!img.black(nr, nc)) white_neighbor = true;
                    }
            } else {
                for (int d = 0; d < 4 && !white_neighbor; ++d) {
                    int nr = r + dr4[d], nc = c + dc4[d];
                    if (nr < 0 || nc < 0 || nr >= n || nc >= n) continue;
                    if (!img.black(nr, nc)) white_neighbor = true;
                }
            }
            if (white_neighbor) ++rep.def_boundary_size;
        }

    // boundary-pixel lemma: one endpoint of every bichromatic pair lies in
    // its shape's outer boundary
    for (int r = 0; r < n && rep.boundary_pixel_lemma_holds; ++r)
        for (int c = 0; c < n && rep.boundary_pixel_lemma_holds; ++c) {
            for (int d = 1; d < 4; d += 2) { // right and down once per pair
                int nr = r + dr4[d], nc = c + dc4[d];
                if (nr >= n || nc >= n) continue;
                if (img.black(r, c) == img.black(nr, nc)) continue;
                int p1 = r * n + c, p2 = nr * n + nc;
                int s1 = shape_of[std::size_t(p1)], s2 = shape_of[std::size_t(p2)];
                bool ok = false;
                if (!rep.all_shapes[std::size_t(s1)].is_outer && bset[std::size_t(s1)].count(p1))
                    ok = true;
                if (!ok && !rep.all_shapes[std::size_t(s2)].is_outer &&
                    bset[std::size_t(s2)].count(p2))
                    ok = true;
                if (!ok) rep.boundary_pixel_lemma_holds = false;
            }
        }

    rep.outer_boundary_sum_bound_holds =
        std::int64_t(rep.global_boundary.size()) <= 4 * rep.def_boundary_size;
    return rep;
}

RegularizeResult regularize(const BWImage& input, double delta) {
    if (!(delta > 0 && delta < 1)) throw parameter_error("regularize needs delta in (0,1)");
    RegularizeResult res;
    res.j = ensure_framed(input);
    int n = res.j.n;
    double threshold = std::sqrt(delta) * double(n);

    for (;;) {
        std::vector<Shape> ss = shapes(res.j);
        std::int64_t total_boundary = 0;
        int pick = -1;
        std::size_t pick_size = 0;
        std::vector<std::vector<int>> bounds(ss.size());
        for (std::size_t i = 0; i < ss.size(); ++i) {
            if (ss[i].is_outer) continue;
            bounds[i] = outer_boundary(ss[i], res.j);
            total_boundary += std::int64_t(bounds[i].size());
            if (double(bounds[i].size()) <= threshold) {
                if (pick < 0 || bounds[i].size() < pick_size) {
                    pick = int(i);
                    pick_size = bounds[i].size();
                }
            }
        }
        res.boundary_sizes.push_back(total_boundary);
        if (pick < 0) break;

        bool new_color = !ss[std::size_t(pick)].color;
        for (int p : encircled(ss[std::size_t(pick)], res.j)) {
            if ((res.j.px[std::size_t(p)] != 0) != new_color) {
                res.j.px[std::size_t(p)] = new_color ? 1 : 0;
                ++res.modified_pixels;
            }
        }
        ++res.iterations;
    }
    for (std::size_t i = 1; i < res.boundary_sizes.size(); ++i)
        if (res.boundary_sizes[i] >= res.boundary_sizes[i - 1]) res.strictly_decreasing = false;
    return res;
}

PathCover boundary_path_cover(const Shape& s, const BWImage& img) {
    if (s.is_outer) throw parameter_error("path cover is undefined for the outer shape");
    int n = img.n;
    std::vector<std::uint8_t> in_s(std::size_t(n) * n, 0);
    for (int p : s.pixels) in_s[std::size_t(p)] = 1;
    auto member = [&](int r, int c) {
        return r >= 0 && c >= 0 && r < n && c < n && in_s[std::size_t(r) * n + c] != 0;
    };

    // directions: 0=E,1=S,2=W,3=N over lattice corners; pixel to the right of
    // a directed edge starting at corner (r,c)
    auto right_pixel = [](int r, int c, int dir, int& pr, int& pc) {
        switch (dir) {
            case 0: pr = r; pc = c; break;
            case 1: pr = r; pc = c - 1; break;
            case 2: pr = r - 1; pc = c - 1; break;
            default: pr = r - 1; pc = c; break;
        }
    };
    auto left_pixel = [](int r, int c, int dir, int& pr, int& pc) {
        switch (dir) {
            case 0: pr = r - 1; pc = c; break;
            case 1: pr = r; pc = c; break;
            case 2: pr = r; pc = c - 1; break;
            default: pr = r - 1; pc = c - 1; break;
        }
    };
    auto valid_edge = [&](int r, int c, int dir) {
        int rr, rc, lr, lc;
        right_pixel(r, c, dir, rr, rc);
        left_pixel(r, c, dir, lr, lc);
        return member(rr, rc) && !member(lr, lc);
    };
    const int drow[4] = {0, 1, 0, -1};
    const int dcol[4] = {1, 0, -1, 0};

    int start = s.pixels.front(); // scan order: topmost, then leftmost
    int sr = start / n, sc = start % n;
    int r = sr, c = sc, dir = 0; // east along the top edge; S on the right

    PathCover cover;
    std::set<int> covered;
    int guard = 16 * n * n + 8;
    do {
        int pr, pc;
        right_pixel(r, c, dir, pr, pc);
        int pixel = pr * n + pc;
        if (cover.path.empty() || cover.path.back() != pixel) cover.path.push_back(pixel);
        covered.insert(pixel);
        r += drow[dir];
        c += dcol[dir];
        int next = -1;
        for (int turn : {3, 0, 1, 2}) { // right turn, straight, left, reverse
            int cand = (dir + turn) % 4;
            if (valid_edge(r, c, cand)) { next = cand; break; }
        }
        if (next < 0) throw error("contour walk stuck"); // cannot happen on a component
        dir = next;
        if (--guard <= 0) throw error("contour walk exceeded its bound");
    } while (!(r == sr && c == sc && dir == 0));

    std::vector<int> boundary = outer_boundary(s, img);
    cover.boundary_size = std::int64_t(boundary.size());
    for (int p : boundary)
        if (!covered.count(p)) cover.covers_boundary = false;
    cover.length_ratio = boundary.empty()
                             ? 0.0
                             : double(cover.path.size()) / double(boundary.size());
    return cover;
}

CensusResult boundary_distance_census(const BWImage& input, int d) {
    if (d < 0) throw parameter_error("census distance must be >= 0");
    BWImage img = ensure_framed(input);
    int n = img.n;
    BoundaryReport rep = boundary_report(img);

    CensusResult res;
    res.boundary = std::int64_t(rep.global_boundary.size());
    for (const Shape& s : rep.all_shapes)
        if (!s.is_outer) ++res.shape_count;

    if (res.boundary == 0) return res;

    std::vector<int> dist(std::size_t(n) * n, -1);
    std::deque<int> queue;
    for (int p : rep.global_boundary) {
        dist[std::size_t(p)] = 0;
        queue.push_back(p);
    }
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        int r = cur / n, c = cur % n;
        for (int dd = 0; dd < 4; ++dd) {
            int nr = r + dr4[dd], nc = c + dc4[dd];
            if (nr < 0 || nc < 0 || nr >= n || nc >= n) continue;
            int ni = nr * n + nc;
            if (dist[std::size_t(ni)] >= 0) continue;
            dist[std::size_t(ni)] = dist[std::size_t(cur)] + 1;
            queue.push_back(ni);
        }
    }
    for (int v : dist)
        if (v >= 0 && v <= d) ++res.census;
    if (d >= 1)
        res.constant = double(res.census) /
                       (double(d) * double(res.boundary) +
                        double(d) * double(d) * double(res.shape_count));
    return res;
}

namespace {

// Hamming distance after permuting rows and columns, relative to n^2.
double schedule_distance(const BWImage& img, const std::vector<int>& rowpos,
                         const std::vector<int>& colpos) {
    int n = img.n;
    std::int64_t diff = 0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (img.black(rowpos[std::size_t(r)], colpos[std::size_t(c)]) != img.black(r, c))
                ++diff;
    return double(diff) / (double(n) * double(n));
}

// rotate positions [a, a+2m) by m (m^2 adjacent swaps)
void block_shift(std::vector<int>& pos, int a, int m) {
    std::rotate(pos.begin() + a, pos.begin() + a + m, pos.begin() + a + 2 * m);
}

} // namespace

ERExperimentResult er_experiment(const BWImage& input, double delta, int trials,
                                 std::uint64_t seed) {
    if (!(delta > 0 && delta < 1)) throw parameter_error("er_experiment needs delta in (0,1)");
    const BWImage img = input;
    int n = img.n;
    ERExperimentResult res;
    res.budget_moves = std::int64_t(delta * double(binom2(2 * std::int64_t(n))));

    BoundaryReport rep = boundary_report(img);
    res.sparsity_c = Rat(rep.def_boundary_size, n);

    BWImage reg = regularize(img, delta).j;
    // regularize may have framed; compare on the same grid
    BWImage base = reg.n == n ? img : ensure_framed(img);
    int m = base.n;

    std::vector<int> id(static_cast<std::size_t>(m));
    std::iota(id.begin(), id.end(), 0);

    auto run_schedule = [&](const std::vector<int>& rowpos, const std::vector<int>& colpos) {
        double draw = schedule_distance(base, rowpos, colpos);
        double drew = schedule_distance(reg, rowpos, colpos);
        res.worst_regularized = std::max(res.worst_regularized, drew);
        return draw;
    };

    // random schedules
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(Rng::derive(seed, std::uint64_t(trial)));
        std::vector<int> rowpos = id, colpos = id;
        for (std::int64_t mv = 0; mv < res.budget_moves; ++mv) {
            int x = 1 + int(rng.below(std::uint64_t(2 * m - 1)));
            if (x == m) continue; // stay inside the image encoding
            if (x < m) std::swap(rowpos[std::size_t(x - 1)], rowpos[std::size_t(x)]);
            else std::swap(colpos[std::size_t(x - m - 1)], colpos[std::size_t(x - m)]);
        }
        res.worst_random = std::max(res.worst_random, run_schedule(rowpos, colpos));
    }

    // Adversarial displacement schedules: rotate disjoint blocks of 2D
    // rows/columns by D, placing blocks greedily where rows D apart differ
    // the most. With D proportional to n the normalized effect is
    // scale-invariant, which is what the stability check measures.
    {
        // absolute pixel difference between lines i and i+D (axis 0 rows,
        // 1 columns)
        auto line_diff = [&](int axis, int D, std::vector<std::int64_t>& diff) {
            diff.assign(std::size_t(m), 0);
            for (int i = 0; i + D < m; ++i) {
                std::int64_t d = 0;
                for (int t = 0; t < m; ++t) {
                    bool p = axis == 0 ? base.black(i, t) : base.black(t, i);
                    bool q = axis == 0 ? base.black(i + D, t) : base.black(t, i + D);
                    if (p != q) ++d;
                }
                diff[std::size_t(i)] = d;
            }
        };
        auto greedy_blocks = [&](int axis, int D, std::int64_t budget,
                                 std::vector<int>& pos) -> std::int64_t {
            std::int64_t cost_each = std::int64_t(D) * D;
            if (cost_each > budget || 2 * D > m) return 0;
            std::vector<std::int64_t> diff;
            line_diff(axis, D, diff);
            std::vector<std::int64_t> window(std::size_t(m), 0);
            for (int a = 0; a + 2 * D <= m; ++a) {
                std::int64_t g = 0;
                for (int i = a; i < a + D; ++i) g += diff[std::size_t(i)];
                window[std::size_t(a)] = g;
            }
            std::vector<std::uint8_t> taken(std::size_t(m), 0);
            std::int64_t used = 0;
            while (used + cost_each <= budget) {
                int best = -1;
                std::int64_t best_gain = 0;
                for (int a = 0; a + 2 * D <= m; ++a) {
                    bool free = true;
                    for (int i = a; i < a + 2 * D && free; ++i)
                        if (taken[std::size_t(i)]) free = false;
                    if (free && window[std::size_t(a)] > best_gain) {
                        best = a;
                        best_gain = window[std::size_t(a)];
                    }
                }
                if (best < 0) break;
                for (int i = best; i < best + 2 * D; ++i) taken[std::size_t(i)] = 1;
                block_shift(pos, best, D);
                used += cost_each;
            }
            return used;
        };

        std::vector<int> displacements;
        for (int denom : {64, 32, 16, 8}) {
            int D = std::max(1, (m + denom / 2) / denom);
            if (2 * D <= m) displacements.push_back(D);
        }
        int Dsqrt = int(std::sqrt(delta) * double(m));
        if (Dsqrt >= 1 && 2 * Dsqrt <= m) displacements.push_back(Dsqrt);
        std::sort(displacements.begin(), displacements.end());
        displacements.erase(std::unique(displacements.begin(), displacements.end()),
                            displacements.end());

        for (int D : displacements) {
            for (int mode = 0; mode < 3; ++mode) { // rows, columns, both
                std::vector<int> rowpos = id, colpos = id;
                std::int64_t budget = res.budget_moves;
                std::int64_t used = 0;
                if (mode == 0) used = greedy_blocks(0, D, budget, rowpos);
                else if (mode == 1) used = greedy_blocks(1, D, budget, colpos);
                else {
                    used = greedy_blocks(0, D, budget / 2, rowpos);
                    used += greedy_blocks(1, D, budget - used, colpos);
                }
                if (used > 0)
                    res.worst_adversarial =
                        std::max(res.worst_adversarial, run_schedule(rowpos, colpos));
            }
        }
    }

    res.worst = std::max(res.worst_random, res.worst_adversarial);
    double c = res.sparsity_c.to_double();
    if (c > 0) res.ratio = res.worst / (c * std::sqrt(delta));
    return res;
}

BWImage disk_image(int n) {
    BWImage img = all_white(n);
    double cx = (n - 1) / 2.0, cy = (n - 1) / 2.0;
    double rad = 0.4 * n;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if ((r - cx) * (r - cx) + (c - cy) * (c - cy) <= rad * rad) img.set(r, c, true);
    return img;
}

BWImage ring_image(int n) {
    BWImage img = all_white(n);
    double cx = (n - 1) / 2.0, cy = (n - 1) / 2.0;
    double outer = 0.4 * n, inner = 0.2 * n;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            double d2 = (r - cx) * (r - cx) + (c - cy) * (c - cy);
            if (d2 <= outer * outer && d2 >= inner * inner) img.set(r, c, true);
        }
    return img;
}

} // namespace ordtest
