#include "ordtest/properties.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace ordtest {

Image bw_image(int n, const std::vector<int>& pixels) {
    return make_image(Alphabet::binary(), n, n, pixels);
}

bool is_black(const Image& img, int r, int c) { return img.at(r, c) == 1; }

// ---- exact integer 2D hull machinery ----

namespace {

struct Pt {
    std::int64_t x, y;
    friend bool operator<(const Pt& a, const Pt& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
    friend bool operator==(const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }
};

std::int64_t cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Convex hull, counter-clockwise, collinear points dropped. Handles the
// degenerate point/segment cases by returning 1 or 2 vertices.
std::vector<Pt> convex_hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Pt> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
        h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    return h;
}

bool on_segment(const Pt& a, const Pt& b, const Pt& p) {
    return cross(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool point_in_hull(const std::vector<Pt>& hull, const Pt& p) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return hull[0] == p;
    if (hull.size() == 2) return on_segment(hull[0], hull[1], p);
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Pt& a = hull[i];
        const Pt& b = hull[(i + 1) % hull.size()];
        if (cross(a, b, p) < 0) return false;
    }
    return true;
}

int sign(std::int64_t v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

bool segments_touch(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
    int d1 = sign(cross(a, b, c));
    int d2 = sign(cross(a, b, d));
    int d3 = sign(cross(c, d, a));
    int d4 = sign(cross(c, d, b));
    if (d1 != d2 && d3 != d4) return true;
    return on_segment(a, b, c) || on_segment(a, b, d) ||
           on_segment(c, d, a) || on_segment(c, d, b);
}

// Whether two hulls share at least one point (vertex containment or edge
// contact covers all convex cases).
bool hulls_intersect(const std::vector<Pt>& A, const std::vector<Pt>& B) {
    if (A.empty() || B.empty()) return false;
    for (const Pt& p : A)
        if (point_in_hull(B, p)) return true;
    for (const Pt& p : B)
        if (point_in_hull(A, p)) return true;
    auto edges = [](const std::vector<Pt>& h) {
        std::vector<std::pair<Pt, Pt>> e;
        if (h.size() == 2) e.emplace_back(h[0], h[1]);
        else
            for (std::size_t i = 0; i < h.size(); ++i)
                e.emplace_back(h[i], h[(i + 1) % h.size()]);
        return e;
    };
    for (const auto& [a, b] : edges(A))
        for (const auto& [c, d] : edges(B))
            if (segments_touch(a, b, c, d)) return true;
    return false;
}

std::vector<Pt> black_points(const Image& img) {
    std::vector<Pt> pts;
    for (int r = 0; r < img.rows; ++r)
        for (int c = 0; c < img.cols; ++c)
            if (img.at(r, c) == 1) pts.push_back({r, c});
    return pts;
}

bool discretely_convex(const Image& img) {
    std::vector<Pt> black = black_points(img);
    if (black.size() <= 1) return true;
    std::vector<Pt> hull = convex_hull(black);
    for (int r = 0; r < img.rows; ++r)
        for (int c = 0; c < img.cols; ++c)
            if (img.at(r, c) == 0 && point_in_hull(hull, {r, c})) return false;
    return true;
}

const Image& as_image(const OrderedStructure& f) {
    if (const auto* img = std::get_if<Image>(&f)) return *img;
    throw parameter_error("property expects an image");
}

const OrderedString& as_string(const OrderedStructure& f) {
    if (const auto* s = std::get_if<OrderedString>(&f)) return *s;
    throw parameter_error("property expects a string");
}

const OrderedGraph& as_graph(const OrderedStructure& f) {
    if (const auto* g = std::get_if<OrderedGraph>(&f)) return *g;
    throw parameter_error("property expects an ordered graph");
}

// 4-connected monochromatic components; returns component id per pixel.
std::pair<std::vector<int>, int> components4(const Image& img) {
    int n = img.rows, m = img.cols;
    std::vector<int> comp(std::size_t(n) * m, -1);
    int next = 0;
    std::vector<std::pair<int, int>> stack;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < m; ++c) {
            if (comp[std::size_t(r) * m + c] >= 0) continue;
            int color = img.at(r, c);
            comp[std::size_t(r) * m + c] = next;
            stack.push_back({r, c});
            while (!stack.empty()) {
                auto [i, j] = stack.back();
                stack.pop_back();
                const int dr[4] = {-1, 1, 0, 0};
                const int dc[4] = {0, 0, -1, 1};
                for (int d = 0; d < 4; ++d) {
                    int ni = i + dr[d], nj = j + dc[d];
                    if (ni < 0 || nj < 0 || ni >= n || nj >= m) continue;
                    if (comp[std::size_t(ni) * m + nj] >= 0) continue;
                    if (img.at(ni, nj) != color) continue;
                    comp[std::size_t(ni) * m + nj] = next;
                    stack.push_back({ni, nj});
                }
            }
            ++next;
        }
    return {comp, next};
}

} // namespace

// ---- p111 ----

namespace {

bool p111_contains(const OrderedString& s) {
    int run = 0;
    for (int e : s.entries) {
        run = (e == 1) ? run + 1 : 0;
        if (run >= 3) return false;
    }
    return true;
}

std::int64_t p111_abs_distance(const OrderedString& s) {
    // dp[r]: min changes for the processed prefix ending in a run of r ones
    constexpr std::int64_t kInf = INT64_MAX / 4;
    std::array<std::int64_t, 3> dp = {0, kInf, kInf};
    for (int e : s.entries) {
        std::array<std::int64_t, 3> nx = {kInf, kInf, kInf};
        std::int64_t best = std::min({dp[0], dp[1], dp[2]});
        nx[0] = best + (e == 1 ? 1 : 0);
        nx[1] = dp[0] + (e == 0 ? 1 : 0);
        nx[2] = dp[1] + (e == 0 ? 1 : 0);
        dp = nx;
    }
    return std::min({dp[0], dp[1], dp[2]});
}

} // namespace

Property p111() {
    Property p;
    p.name = "p111";
    p.kind = StructureKind::string_kind;
    p.contains = [](const OrderedStructure& f) { return p111_contains(as_string(f)); };
    p.distance_oracle = [](const OrderedStructure& f) {
        const OrderedString& s = as_string(f);
        return Rat(p111_abs_distance(s), s.n());
    };
    p.sampler = [](int n, Rng& rng) -> OrderedStructure {
        for (int attempt = 0; attempt < 20000; ++attempt) {
            std::vector<int> e(static_cast<std::size_t>(n));
            for (int& v : e) v = int(rng.below(2));
            OrderedString s = make_string(Alphabet::binary(), std::move(e));
            if (p111_contains(s)) return s;
        }
        throw capability_error("p111 rejection sampler gave up; n too large");
    };
    return p;
}

// ---- monotone strings ----

namespace {

bool monotone_contains(const OrderedString& s) {
    return std::is_sorted(s.entries.begin(), s.entries.end());
}

std::int64_t longest_nondecreasing(const OrderedString& s) {
    std::vector<std::int64_t> best(std::size_t(s.alphabet.size()), 0);
    for (int e : s.entries) {
        std::int64_t take = 0;
        for (int c = 0; c <= e; ++c) take = std::max(take, best[std::size_t(c)]);
        best[std::size_t(e)] = take + 1;
    }
    return *std::max_element(best.begin(), best.end());
}

// Binary case: members are 0^a 1^(n-a); walk the cut incrementally.
Rat monotone_binary_histogram_min(int n, const IntervalPartition& parts,
                                  const std::vector<DistributionVector>& target) {
    int t = parts.k();
    std::vector<std::int64_t> ones(std::size_t(t), 0);
    auto term = [&](int i) {
        Rat member_density(ones[std::size_t(i)], parts.size(i));
        return (target[std::size_t(i)].densities[1] - member_density).abs() *
               Rat(parts.size(i), n);
    };
    std::vector<Rat> terms(static_cast<std::size_t>(t));
    Rat sum(0);
    for (int i = 0; i < t; ++i) {
        terms[std::size_t(i)] = term(i);
        sum += terms[std::size_t(i)];
    }
    Rat best = sum; // cut a = n: all zeros
    for (int a = n - 1; a >= 0; --a) {
        int i = parts.part_of(a);
        ++ones[std::size_t(i)];
        Rat fresh = term(i);
        sum += fresh - terms[std::size_t(i)];
        terms[std::size_t(i)] = fresh;
        if (sum < best) best = sum;
    }
    return best;
}

} // namespace

Property monotone_string(int alphabet_size) {
    if (alphabet_size < 2) throw parameter_error("monotone_string needs |Sigma| >= 2");
    std::vector<std::string> syms;
    for (int i = 0; i < alphabet_size; ++i) syms.push_back(std::to_string(i));
    Alphabet alpha(syms);

    Property p;
    p.name = alphabet_size == 2 ? "monotone" : "monotone" + std::to_string(alphabet_size);
    p.kind = StructureKind::string_kind;
    p.contains = [](const OrderedStructure& f) { return monotone_contains(as_string(f)); };
    p.distance_oracle = [](const OrderedStructure& f) {
        const OrderedString& s = as_string(f);
        return Rat(s.n() - longest_nondecreasing(s), s.n());
    };
    if (alphabet_size == 2) {
        p.histogram_oracle = [](int n, const IntervalPartition& parts,
                                const std::vector<DistributionVector>& target) {
            return monotone_binary_histogram_min(n, parts, target);
        };
    }
    p.sampler = [alpha](int n, Rng& rng) -> OrderedStructure {
        std::vector<int> e(static_cast<std::size_t>(n));
        for (int& v : e) v = int(rng.below(std::uint64_t(alpha.size())));
        std::sort(e.begin(), e.end());
        return make_string(alpha, std::move(e));
    };
    // Validated modulus: a move budget of delta*C(n,2) creates at most that
    // many value inversions, and the distance to monotone is at most
    // sqrt(|Sigma|*inversions)/n (checked exhaustively in the test suite;
    // alternating strings are the extremal case).
    p.er_bound = [alphabet_size](double eps) {
        return 2.0 * eps * eps / double(alphabet_size);
    };
    return p;
}

// ---- convexity / half plane / unions ----

Property convex_image() {
    Property p;
    p.name = "convex";
    p.kind = StructureKind::image_kind;
    p.contains = [](const OrderedStructure& f) { return discretely_convex(as_image(f)); };
    p.sampler = [](int n, Rng& rng) -> OrderedStructure {
        for (int attempt = 0; attempt < 64; ++attempt) {
            double cx = n / 2.0 + (rng.uniform01() - 0.5) * n / 4.0;
            double cy = n / 2.0 + (rng.uniform01() - 0.5) * n / 4.0;
            int planes = 3 + int(rng.below(4));
            std::vector<std::array<double, 3>> hs;
            for (int i = 0; i < planes; ++i) {
                double ang = rng.uniform01() * 2 * 3.14159265358979;
                double a = std::cos(ang), b = std::sin(ang);
                double r = n / 8.0 + rng.uniform01() * n / 2.5;
                hs.push_back({a, b, a * cx + b * cy + r});
            }
            std::vector<int> pix(std::size_t(n) * n, 0);
            int black = 0;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    bool in = true;
                    for (const auto& h : hs)
                        if (h[0] * r + h[1] * c > h[2]) { in = false; break; }
                    if (in) { pix[std::size_t(r) * n + c] = 1; ++black; }
                }
            if (black == 0 && attempt + 1 < 64) continue;
            Image img = bw_image(n, pix);
            if (discretely_convex(img)) return img;
        }
        throw capability_error("convex sampler failed to produce a convex image");
    };
    return p;
}

Property half_plane() {
    Property p;
    p.name = "half-plane";
    p.kind = StructureKind::image_kind;
    p.contains = [](const OrderedStructure& f) {
        const Image& img = as_image(f);
        std::vector<Pt> black, white;
        for (int r = 0; r < img.rows; ++r)
            for (int c = 0; c < img.cols; ++c)
                (img.at(r, c) == 1 ? black : white).push_back({r, c});
        return !hulls_intersect(convex_hull(black), convex_hull(white));
    };
    p.sampler = [](int n, Rng& rng) -> OrderedStructure {
        double ang = rng.uniform01() * 2 * 3.14159265358979;
        double a = std::cos(ang), b = std::sin(ang);
        double lo = -double(n), hi = 2.0 * n;
        double c = lo + rng.uniform01() * (hi - lo);
        std::vector<int> pix(std::size_t(n) * n, 0);
        for (int r = 0; r < n; ++r)
            for (int col = 0; col < n; ++col)
                if (a * r + b * col <= c) pix[std::size_t(r) * n + col] = 1;
        return bw_image(n, pix);
    };
    return p;
}

Property union_of_convex(int t) {
    if (t < 1) throw parameter_error("union_of_convex needs t >= 1");
    Property p;
    p.name = "union-of-convex-" + std::to_string(t);
    p.kind = StructureKind::image_kind;
    // Desk-scale variant: at most t components, each discretely convex.
    // (A general union could overlap; the disjoint form keeps membership
    // decidable and has the same 4t-sparse boundary.)
    p.contains = [t](const OrderedStructure& f) {
        const Image& img = as_image(f);
        auto [comp, count] = components4(img);
        std::vector<std::vector<Pt>> pts(static_cast<std::size_t>(count));
        std::vector<bool> black_comp(std::size_t(count), false);
        for (int r = 0; r < img.rows; ++r)
            for (int c = 0; c < img.cols; ++c) {
                int id = comp[std::size_t(r) * img.cols + c];
                if (img.at(r, c) == 1) {
                    black_comp[std::size_t(id)] = true;
                    pts[std::size_t(id)].push_back({r, c});
                }
            }
        int blacks = 0;
        for (int id = 0; id < count; ++id) {
            if (!black_comp[std::size_t(id)]) continue;
            ++blacks;
            if (blacks > t) return false;
            std::vector<Pt> hull = convex_hull(pts[std::size_t(id)]);
            for (int r = 0; r < img.rows; ++r)
                for (int c = 0; c < img.cols; ++c)
                    if (img.at(r, c) == 0 && point_in_hull(hull, {r, c})) return false;
        }
        return true;
    };
    Property convex = convex_image();
    p.sampler = [t, convex](int n, Rng& rng) -> OrderedStructure {
        for (int attempt = 0; attempt < 200; ++attempt) {
            std::vector<int> pix(std::size_t(n) * n, 0);
            int blobs = 1 + int(rng.below(std::uint64_t(t)));
            for (int b = 0; b < blobs; ++b) {
                int m = std::max(2, n / 3);
                Image blob = std::get<Image>(convex.sampler(m, rng));
                int offr = int(rng.below(std::uint64_t(n - m + 1)));
                int offc = int(rng.below(std::uint64_t(n - m + 1)));
                for (int r = 0; r < m; ++r)
                    for (int c = 0; c < m; ++c)
                        if (blob.at(r, c) == 1) pix[std::size_t(offr + r) * n + offc + c] = 1;
            }
            OrderedStructure f = bw_image(n, pix);
            // overlapping blobs can merge into a non-convex component
            if (union_of_convex(t).contains(f)) return f;
        }
        throw capability_error("union_of_convex sampler failed");
    };
    return p;
}

// ---- no two consecutive horizontal black pixels ----

namespace {

bool no_horiz_pair_contains(const Image& img) {
    for (int r = 0; r < img.rows; ++r)
        for (int c = 0; c + 1 < img.cols; ++c)
            if (img.at(r, c) == 1 && img.at(r, c + 1) == 1) return false;
    return true;
}

std::int64_t no_horiz_pair_row_cost(const Image& img, int r) {
    // min changes so the row has no two adjacent blacks
    constexpr std::int64_t kInf = INT64_MAX / 4;
    std::int64_t dpw = 0, dpb = kInf; // previous pixel white/black
    for (int c = 0; c < img.cols; ++c) {
        int v = img.at(r, c);
        std::int64_t w = std::min(dpw, dpb) + (v == 1 ? 1 : 0);
        std::int64_t b = dpw + (v == 0 ? 1 : 0);
        dpw = w;
        dpb = b;
    }
    return std::min(dpw, dpb);
}

} // namespace

Property no_horiz_pair() {
    Property p;
    p.name = "no-horiz-pair";
    p.kind = StructureKind::image_kind;
    p.contains = [](const OrderedStructure& f) { return no_horiz_pair_contains(as_image(f)); };
    p.distance_oracle = [](const OrderedStructure& f) {
        const Image& img = as_image(f);
        std::int64_t total = 0;
        for (int r = 0; r < img.rows; ++r) total += no_horiz_pair_row_cost(img, r);
        return Rat(total, std::int64_t(img.rows) * img.cols);
    };
    p.sampler = [](int n, Rng& rng) -> OrderedStructure {
        // per-row uniform sampling over valid rows via suffix counts
        std::vector<std::int64_t> vw(std::size_t(n) + 1), vb(std::size_t(n) + 1);
        vw[std::size_t(n)] = vb[std::size_t(n)] = 1;
        for (int i = n - 1; i >= 0; --i) {
            vw[std::size_t(i)] = vw[std::size_t(i) + 1] + vb[std::size_t(i) + 1];
            vb[std::size_t(i)] = vw[std::size_t(i) + 1];
        }
        std::vector<int> pix(std::size_t(n) * n, 0);
        for (int r = 0; r < n; ++r) {
            bool prev_black = false;
            for (int c = 0; c < n; ++c) {
                std::int64_t total = prev_black ? vw[std::size_t(c) + 1]
                                                : vw[std::size_t(c) + 1] + vb[std::size_t(c) + 1];
                std::int64_t pick = std::int64_t(rng.below(std::uint64_t(total)));
                bool black = !prev_black && pick >= vw[std::size_t(c) + 1];
                pix[std::size_t(r) * n + c] = black ? 1 : 0;
                prev_black = black;
            }
        }
        return bw_image(n, pix);
    };
    return p;
}

// ---- forbidden patterns ----

std::int64_t count_ordered_subgraph_copies(const OrderedGraph& g, const OrderedGraph& pattern) {
    int h = pattern.n;
    if (h > g.n) return 0;
    if (binom(g.n, h) > 2000000) throw capacity_error("copy counting above enumeration cap");
    std::vector<int> all(static_cast<std::size_t>(h));
    std::iota(all.begin(), all.end(), 0);
    const std::vector<int> want = induced_key(pattern, all);
    std::int64_t count = 0;
    for_each_subset(g.n, h, [&](const std::vector<int>& subset) {
        if (induced_key(g, subset) == want) ++count;
        return true;
    });
    return count;
}

std::int64_t count_submatrix_copies(const Image& img, const Image& pattern) {
    int hr = pattern.rows, hc = pattern.cols;
    if (hr > img.rows || hc > img.cols) return 0;
    std::int64_t count = 0;
    for_each_subset(img.rows, hr, [&](const std::vector<int>& rows) {
        for_each_subset(img.cols, hc, [&](const std::vector<int>& cols) {
            bool match = true;
            for (int i = 0; i < hr && match; ++i)
                for (int j = 0; j < hc && match; ++j)
                    if (img.at(rows[std::size_t(i)], cols[std::size_t(j)]) !=
                        pattern.at(i, j))
                        match = false;
            if (match) ++count;
            return true;
        });
        return true;
    });
    return count;
}

Property forbidden_ordered_subgraph(const OrderedGraph& pattern) {
    Property p;
    p.name = "no-subgraph-h" + std::to_string(pattern.n);
    p.kind = StructureKind::graph_kind;
    p.contains = [pattern](const OrderedStructure& f) {
        return count_ordered_subgraph_copies(as_graph(f), pattern) == 0;
    };
    p.sampler = [pattern](int n, Rng& rng) -> OrderedStructure {
        for (int attempt = 0; attempt < 20000; ++attempt) {
            std::vector<int> colors(std::size_t(n) * (n - 1) / 2);
            for (int& c : colors) c = int(rng.below(std::uint64_t(pattern.alphabet.size())));
            OrderedGraph g = make_graph(pattern.alphabet, n, std::move(colors));
            if (count_ordered_subgraph_copies(g, pattern) == 0) return g;
        }
        throw capability_error("forbidden-subgraph rejection sampler gave up");
    };
    return p;
}

Property forbidden_submatrix(const Image& pattern) {
    Property p;
    p.name = "no-submatrix-" + std::to_string(pattern.rows) + "x" + std::to_string(pattern.cols);
    p.kind = StructureKind::image_kind;
    p.contains = [pattern](const OrderedStructure& f) {
        return count_submatrix_copies(as_image(f), pattern) == 0;
    };
    p.sampler = [pattern](int n, Rng& rng) -> OrderedStructure {
        for (int attempt = 0; attempt < 20000; ++attempt) {
            std::vector<int> pix(std::size_t(n) * n);
            for (int& v : pix) v = int(rng.below(std::uint64_t(pattern.alphabet.size())));
            Image img = make_image(pattern.alphabet, n, n, std::move(pix));
            if (count_submatrix_copies(img, pattern) == 0) return img;
        }
        throw capability_error("forbidden-submatrix rejection sampler gave up");
    };
    return p;
}

// ---- catalog ----

std::vector<Property> catalog() {
    std::vector<Property> out;
    out.push_back(p111());
    out.push_back(monotone_string());
    out.push_back(convex_image());
    out.push_back(half_plane());
    out.push_back(union_of_convex(2));
    out.push_back(no_horiz_pair());
    {
        // default forbidden patterns: a monochromatic ordered triangle and a
        // 2x2 all-black submatrix
        Alphabet bin = Alphabet::binary();
        out.push_back(forbidden_ordered_subgraph(make_graph(bin, 3, {1, 1, 1})));
        out.push_back(forbidden_submatrix(make_image(bin, 2, 2, {1, 1, 1, 1})));
    }
    return out;
}

Property find_property(const std::string& name) {
    for (Property& p : catalog())
        if (p.name == name) return p;
    throw parameter_error("unknown property: " + name);
}

// ---- distance entry points declared in metrics.hpp ----

Rat distance_to_property(const OrderedStructure& f, const Property& p, const ExactCaps& caps) {
    if (p.contains && p.contains(f)) return Rat(0);
    if (p.distance_oracle) return p.distance_oracle(f);
    if (!p.contains) throw capability_error("property lacks a membership predicate");
    return exhaustive_distance(f, p.contains, caps);
}

Rat aggregated_distance_to_property(const OrderedString& s, const Property& p, int t,
                                    const ExactCaps& caps) {
    IntervalPartition parts(s.n(), t);
    std::vector<DistributionVector> target;
    target.reserve(std::size_t(t));
    for (int i = 0; i < t; ++i)
        target.push_back(distribution_vector(s, parts.begin(i), parts.end(i)));
    if (p.histogram_oracle) return p.histogram_oracle(s.n(), parts, target);

    // exhaustive: minimize d_A over all same-shape members
    double bits = double(s.n()) * std::log2(double(s.alphabet.size()));
    if (bits > double(caps.exhaustive_bits))
        throw capacity_error("aggregated distance: exhaustive search above the bit cap");
    std::optional<Rat> best;
    OrderedString probe = s;
    std::vector<int> cur(std::size_t(s.n()), 0);
    for (;;) {
        probe.entries = cur;
        if (p.contains(OrderedStructure(probe))) {
            Rat d = aggregated_distance(s, probe, t);
            if (!best || d < *best) best = d;
        }
        std::size_t pos = 0;
        while (pos < cur.size() && cur[pos] == s.alphabet.size() - 1) cur[pos++] = 0;
        if (pos == cur.size()) break;
        ++cur[pos];
    }
    if (!best) throw parameter_error("property is empty on this shape");
    return *best;
}

// ---- ER profiling ----

ERProfile er_profile(const Property& p, int n, const std::vector<double>& budgets,
                     int trials, std::uint64_t seed, const ExactCaps& caps) {
    if (!p.sampler) throw capability_error("er_profile needs a sampler");
    ERProfile prof;
    prof.budgets = budgets;
    prof.trials = trials;
    prof.seed = seed;

    for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
        Rat worst(0);
        Rat total(0);
        for (int trial = 0; trial < trials; ++trial) {
            Rng rng(Rng::derive(seed, bi * 1000003ULL + std::uint64_t(trial)));
            OrderedStructure f = p.sampler(n, rng);
            int base = base_element_count(f);
            std::int64_t moves = std::int64_t(budgets[bi] * double(binom2(base)));
            OrderedStructure cur = f;
            for (std::int64_t m = 0; m < moves; ++m) {
                int x = 1 + int(rng.below(std::uint64_t(base - 1)));
                // keep images inside the image encoding: x = n mixes blocks
                if (std::holds_alternative<Image>(cur) && x == base / 2)
                    x = (x > 1) ? x - 1 : x + 1;
                cur = apply_basic_move(cur, x);
            }
            Rat d = distance_to_property(cur, p, caps);
            if (d > worst) worst = d;
            total += d;
        }
        prof.worst_dh.push_back(worst);
        prof.mean_dh.push_back(trials > 0 ? total / Rat(trials) : Rat(0));
    }
    // Reachable sets are nested in the budget, so the profile is reported as
    // a running maximum.
    for (std::size_t i = 1; i < prof.worst_dh.size(); ++i)
        if (prof.worst_dh[i] < prof.worst_dh[i - 1]) prof.worst_dh[i] = prof.worst_dh[i - 1];
    return prof;
}

HereditaryERReport check_hereditary_er(const OrderedStructure& pattern, int n,
                                       int trials, std::uint64_t seed) {
    const auto* gp = std::get_if<OrderedGraph>(&pattern);
    const auto* ip = std::get_if<Image>(&pattern);
    if (!gp && !ip) throw parameter_error("check_hereditary_er expects a graph or image pattern");

    int h = gp ? gp->n : (ip->rows + ip->cols);
    if (h > 4) throw capacity_error("check_hereditary_er caps pattern size at 4");
    if (n > 30) throw capacity_error("check_hereditary_er caps n at 30");

    HereditaryERReport rep;
    rep.pattern_size = h;

    auto copies = [&](const OrderedStructure& f) -> std::int64_t {
        if (gp) return count_ordered_subgraph_copies(std::get<OrderedGraph>(f), *gp);
        return count_submatrix_copies(std::get<Image>(f), *ip);
    };
    auto random_structure = [&](Rng& rng) -> OrderedStructure {
        if (gp) {
            std::vector<int> colors(std::size_t(n) * (n - 1) / 2);
            for (int& c : colors) c = int(rng.below(std::uint64_t(gp->alphabet.size())));
            return make_graph(gp->alphabet, n, std::move(colors));
        }
        std::vector<int> pix(std::size_t(n) * n);
        for (int& v : pix) v = int(rng.below(std::uint64_t(ip->alphabet.size())));
        return make_image(ip->alphabet, n, n, std::move(pix));
    };

    int base = gp ? n : 2 * n;
    std::int64_t bound = 1;
    for (int i = 0; i < h - 2; ++i) bound *= base;
    rep.move_delta_bound = bound;

    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(Rng::derive(seed, std::uint64_t(trial)));
        OrderedStructure f = random_structure(rng);
        std::int64_t base_copies = copies(f);
        for (int x = 1; x < base; ++x) {
            if (ip && x == n) continue; // row/column crossing leaves the image
            std::int64_t delta = std::abs(copies(apply_basic_move(f, x)) - base_copies);
            rep.max_copy_delta = std::max(rep.max_copy_delta, delta);
            if (delta > bound) rep.delta_bound_holds = false;
        }
    }

    // exhaustive destroy-all search on tiny instances
    if (n <= 8 && gp) {
        for (int trial = 0; trial < std::min(trials, 5); ++trial) {
            Rng rng(Rng::derive(seed ^ 0x9e37ULL, std::uint64_t(trial)));
            OrderedStructure f = random_structure(rng);
            std::int64_t c0 = copies(f);
            if (c0 == 0) continue;
            std::int64_t best_moves = -1;
            auto dist = structure_orbit_distances(f);
            for (const auto& [key, d] : dist) {
                OrderedGraph g = make_graph(gp->alphabet, n, key);
                if (count_ordered_subgraph_copies(g, *gp) == 0) {
                    if (best_moves < 0 || d < best_moves) best_moves = d;
                }
            }
            if (best_moves >= 0) {
                rep.destroy_results.emplace_back(c0, best_moves);
                if (best_moves * bound < c0) rep.destroy_bound_holds = false;
            }
        }
    }
    return rep;
}

Image chessboard_image(int n) {
    std::vector<int> pix(std::size_t(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) pix[std::size_t(r) * n + c] = (r + c) % 2 == 0 ? 1 : 0;
    return bw_image(n, pix);
}

std::vector<int> chessboard_swap_schedule(int n) {
    if (n % 4 != 0) throw parameter_error("chessboard schedule needs 4 | n");
    std::vector<int> moves;
    for (int q = 0; q < n / 4; ++q)
        moves.push_back(n + 4 * q + 2); // swap columns 4q+2 and 4q+3 (1-based)
    return moves;
}

} // namespace ordtest
