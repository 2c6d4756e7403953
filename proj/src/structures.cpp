#include "ordtest/structures.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ordtest {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw parameter_error("alphabet must be non-empty");
    std::set<std::string> seen(symbols_.begin(), symbols_.end());
    if (seen.size() != symbols_.size())
        throw parameter_error("alphabet labels must be distinct");
}

const std::string& Alphabet::label(int index) const {
    if (index < 0 || index >= size()) throw parameter_error("alphabet index out of range");
    return symbols_[std::size_t(index)];
}

int Alphabet::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (symbols_[std::size_t(i)] == label) return i;
    return -1;
}

Alphabet Alphabet::with_fresh_symbol(const std::string& base_label) const {
    std::string label = base_label;
    while (index_of(label) >= 0) label += "'";
    std::vector<std::string> out = symbols_;
    out.push_back(label);
    return Alphabet(out);
}

std::size_t OrderedGraph::pair_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n || i == j) throw parameter_error("vertex pair out of range");
    // pairs (0,1),(0,2),...,(0,n-1),(1,2),... row-major
    return std::size_t(i) * n - std::size_t(i) * (i + 1) / 2 + std::size_t(j - i - 1);
}

OrderedString make_string(const Alphabet& a, std::vector<int> entries) {
    if (entries.empty()) throw parameter_error("string length must be >= 1");
    for (int e : entries)
        if (e < 0 || e >= a.size()) throw parameter_error("string entry outside alphabet");
    return OrderedString{a, std::move(entries)};
}

Image make_image(const Alphabet& a, int rows, int cols, std::vector<int> pixels) {
    if (rows < 1 || cols < 1) throw parameter_error("image dimensions must be >= 1");
    if (pixels.size() != std::size_t(rows) * std::size_t(cols))
        throw parameter_error("pixel count does not match dimensions");
    for (int p : pixels)
        if (p < 0 || p >= a.size()) throw parameter_error("pixel outside alphabet");
    return Image{a, rows, cols, std::move(pixels)};
}

OrderedGraph make_graph(const Alphabet& a, int n, std::vector<int> colors) {
    if (n < 1) throw parameter_error("graph needs at least one vertex");
    if (colors.size() != std::size_t(n) * (n - 1) / 2)
        throw parameter_error("graph needs exactly C(n,2) colors");
    for (int c : colors)
        if (c < 0 || c >= a.size()) throw parameter_error("edge color outside alphabet");
    return OrderedGraph{a, n, std::move(colors)};
}

OrderedString binary_string(const std::string& bits) {
    std::vector<int> e;
    e.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') throw parameter_error("binary string expects 0/1");
        e.push_back(c - '0');
    }
    return make_string(Alphabet::binary(), std::move(e));
}

Permutation::Permutation(int n) {
    if (n < 1) throw parameter_error("permutation needs n >= 1");
    map_.resize(std::size_t(n));
    std::iota(map_.begin(), map_.end(), 0);
}

Permutation Permutation::from_one_based(const std::vector<int>& image) {
    std::vector<int> m;
    m.reserve(image.size());
    for (int v : image) m.push_back(v - 1);
    return from_zero_based(std::move(m));
}

Permutation Permutation::from_zero_based(std::vector<int> image) {
    int n = int(image.size());
    if (n < 1) throw parameter_error("permutation needs n >= 1");
    std::vector<bool> seen(std::size_t(n), false);
    for (int v : image) {
        if (v < 0 || v >= n || seen[std::size_t(v)])
            throw parameter_error("permutation image is not a bijection on [n]");
        seen[std::size_t(v)] = true;
    }
    return Permutation(std::move(image), true);
}

Permutation Permutation::adjacent_transposition(int n, int x) {
    if (x < 1 || x >= n) throw parameter_error("basic move position out of range");
    Permutation p(n);
    std::swap(p.map_[std::size_t(x - 1)], p.map_[std::size_t(x)]);
    return p;
}

std::vector<int> Permutation::one_based() const {
    std::vector<int> out;
    out.reserve(map_.size());
    for (int v : map_) out.push_back(v + 1);
    return out;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(map_.size());
    for (int i = 0; i < n(); ++i) inv[std::size_t(map_[std::size_t(i)])] = i;
    return Permutation(std::move(inv), true);
}

Permutation Permutation::compose(const Permutation& other) const {
    if (n() != other.n()) throw parameter_error("composing permutations of different sizes");
    std::vector<int> out(map_.size());
    for (int i = 0; i < n(); ++i) out[std::size_t(i)] = of(other.of(i));
    return Permutation(std::move(out), true);
}

bool Permutation::is_identity() const {
    for (int i = 0; i < n(); ++i)
        if (map_[std::size_t(i)] != i) return false;
    return true;
}

IntervalPartition::IntervalPartition(int n, int k) : n_(n), k_(k) {
    if (k < 1 || k > n) throw parameter_error("interval partition needs 1 <= k <= n");
    bounds_.resize(std::size_t(k) + 1);
    bounds_[0] = 0;
    int q = n / k, r = n % k;
    for (int i = 0; i < k; ++i)
        bounds_[std::size_t(i) + 1] = bounds_[std::size_t(i)] + q + (i < r ? 1 : 0);
}

int IntervalPartition::part_of(int x) const {
    if (x < 0 || x >= n_) throw parameter_error("element out of range");
    int lo = 0, hi = k_ - 1;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (x < end(mid)) hi = mid; else lo = mid + 1;
    }
    return lo;
}

OrderedGraph image_to_ordered_graph(const Image& img) {
    if (img.rows != img.cols)
        throw parameter_error("image encoding requires a square image");
    int n = img.rows;
    Alphabet ext = img.alphabet.with_fresh_symbol("_");
    int noedge = ext.size() - 1;
    std::vector<int> colors(std::size_t(2 * n) * (2 * n - 1) / 2, noedge);
    OrderedGraph g = make_graph(ext, 2 * n, std::move(colors));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            g.color(x, n + y) = img.at(x, y);
    return g;
}

Image ordered_graph_to_image(const OrderedGraph& g) {
    if (g.n % 2 != 0)
        throw parameter_error("graph does not encode an image: odd vertex count");
    int n = g.n / 2;
    int noedge = g.alphabet.size() - 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (g.color(i, j) != noedge || g.color(n + i, n + j) != noedge)
                throw parameter_error("graph does not encode an image: same-side pair is colored");
        }
    std::vector<int> pixels(std::size_t(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int c = g.color(x, n + y);
            if (c == noedge)
                throw parameter_error("graph does not encode an image: cross pair is uncolored");
            pixels[std::size_t(x) * n + y] = c;
        }
    std::vector<std::string> base(g.alphabet.labels().begin(), g.alphabet.labels().end() - 1);
    return make_image(Alphabet(std::move(base)), n, n, std::move(pixels));
}

int base_element_count(const OrderedStructure& f) {
    if (const auto* s = std::get_if<OrderedString>(&f)) return s->n();
    if (const auto* g = std::get_if<OrderedGraph>(&f)) return g->n;
    const Image& img = std::get<Image>(f);
    if (img.rows != img.cols)
        throw parameter_error("basic moves on images require a square image");
    return 2 * img.rows;
}

OrderedString apply_basic_move(const OrderedString& s, int x) {
    if (x < 1 || x >= s.n()) throw parameter_error("basic move position out of range");
    OrderedString out = s;
    std::swap(out.entries[std::size_t(x - 1)], out.entries[std::size_t(x)]);
    return out;
}

OrderedGraph apply_basic_move(const OrderedGraph& g, int x) {
    return apply_permutation(g, Permutation::adjacent_transposition(g.n, x));
}

std::string basic_move_warning(const Image& img, int x) {
    if (x == img.rows)
        return "basic move at x=n mixes row " + std::to_string(x) +
               " with column 1; result leaves the image encoding";
    return "";
}

OrderedStructure apply_basic_move(const OrderedStructure& f, int x) {
    if (const auto* s = std::get_if<OrderedString>(&f)) return apply_basic_move(*s, x);
    if (const auto* g = std::get_if<OrderedGraph>(&f)) return apply_basic_move(*g, x);

    const Image& img = std::get<Image>(f);
    int n2 = base_element_count(f);
    if (x < 1 || x >= n2) throw parameter_error("basic move position out of range");
    int n = img.rows;
    Image out = img;
    if (x < n) { // swap rows x, x+1 (1-based)
        for (int c = 0; c < n; ++c)
            std::swap(out.at(x - 1, c), out.at(x, c));
        return out;
    }
    if (x > n) { // swap columns x-n, x-n+1
        int c = x - n;
        for (int r = 0; r < n; ++r)
            std::swap(out.at(r, c - 1), out.at(r, c));
        return out;
    }
    // x == n: legal under the encoding, but the result is no longer an image.
    return apply_basic_move(image_to_ordered_graph(img), x);
}

OrderedString apply_permutation(const OrderedString& s, const Permutation& sigma) {
    if (sigma.n() != s.n()) throw parameter_error("permutation size mismatch");
    OrderedString out = s;
    for (int i = 0; i < s.n(); ++i)
        out.entries[std::size_t(sigma.of(i))] = s.entries[std::size_t(i)];
    return out;
}

OrderedGraph apply_permutation(const OrderedGraph& g, const Permutation& sigma) {
    if (sigma.n() != g.n) throw parameter_error("permutation size mismatch");
    OrderedGraph out = g;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            out.color(sigma.of(i), sigma.of(j)) = g.color(i, j);
    return out;
}

OrderedStructure apply_permutation(const OrderedStructure& f, const Permutation& sigma) {
    if (const auto* s = std::get_if<OrderedString>(&f)) return apply_permutation(*s, sigma);
    if (const auto* g = std::get_if<OrderedGraph>(&f)) return apply_permutation(*g, sigma);

    const Image& img = std::get<Image>(f);
    if (sigma.n() != base_element_count(f)) throw parameter_error("permutation size mismatch");
    int n = img.rows;
    bool block_preserving = true;
    for (int i = 0; i < n && block_preserving; ++i)
        if (sigma.of(i) >= n) block_preserving = false;
    if (!block_preserving)
        return apply_permutation(image_to_ordered_graph(img), sigma);
    Image out = img;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            out.at(sigma.of(r), sigma.of(n + c) - n) = img.at(r, c);
    return out;
}

bool same_shape(const OrderedStructure& a, const OrderedStructure& b) {
    if (a.index() != b.index()) return false;
    if (const auto* s = std::get_if<OrderedString>(&a)) {
        const auto& t = std::get<OrderedString>(b);
        return s->n() == t.n() && s->alphabet == t.alphabet;
    }
    if (const auto* g = std::get_if<OrderedGraph>(&a)) {
        const auto& h = std::get<OrderedGraph>(b);
        return g->n == h.n && g->alphabet == h.alphabet;
    }
    const auto& x = std::get<Image>(a);
    const auto& y = std::get<Image>(b);
    return x.rows == y.rows && x.cols == y.cols && x.alphabet == y.alphabet;
}

bool structures_equal(const OrderedStructure& a, const OrderedStructure& b) {
    return same_shape(a, b) && entries_of(a) == entries_of(b);
}

const std::vector<int>& entries_of(const OrderedStructure& f) {
    if (const auto* s = std::get_if<OrderedString>(&f)) return s->entries;
    if (const auto* g = std::get_if<OrderedGraph>(&f)) return g->colors;
    return std::get<Image>(f).pixels;
}

} // namespace ordtest
