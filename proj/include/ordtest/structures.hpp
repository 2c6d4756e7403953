#ifndef ORDTEST_STRUCTURES_HPP
#define ORDTEST_STRUCTURES_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ordtest/errors.hpp"

namespace ordtest {

// Finite ordered alphabet. Symbols carry display labels; structures store
// indices into it. Values are immutable after construction.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> symbols);

    static Alphabet binary() { return Alphabet({"0", "1"}); }

    int size() const { return int(symbols_.size()); }
    const std::string& label(int index) const;
    int index_of(const std::string& label) const; // -1 when absent
    const std::vector<std::string>& labels() const { return symbols_; }

    // Same alphabet plus a fresh trailing symbol (used as the "no edge"
    // marker of the image encoding). The label is decorated until distinct.
    Alphabet with_fresh_symbol(const std::string& base_label) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.symbols_ == b.symbols_;
    }

private:
    std::vector<std::string> symbols_;
};

struct OrderedString {
    Alphabet alphabet;
    std::vector<int> entries; // one alphabet index per position

    int n() const { return int(entries.size()); }
};

struct Image {
    Alphabet alphabet;
    int rows = 0;
    int cols = 0;
    std::vector<int> pixels; // row-major

    int at(int r, int c) const { return pixels[std::size_t(r) * cols + c]; }
    int& at(int r, int c) { return pixels[std::size_t(r) * cols + c]; }
};

struct OrderedGraph {
    Alphabet alphabet;
    int n = 0;
    std::vector<int> colors; // C(n,2) entries in pair order (1,2),(1,3),...,(n-1,n)

    // 0-based vertex pair -> index into colors.
    static std::size_t pair_index(int n, int i, int j);
    int color(int i, int j) const { return colors[pair_index(n, i, j)]; }
    int& color(int i, int j) { return colors[pair_index(n, i, j)]; }
};

using OrderedStructure = std::variant<OrderedString, Image, OrderedGraph>;

OrderedString make_string(const Alphabet& a, std::vector<int> entries);
Image make_image(const Alphabet& a, int rows, int cols, std::vector<int> pixels);
OrderedGraph make_graph(const Alphabet& a, int n, std::vector<int> colors);

// Convenience for binary strings written as "0110...".
OrderedString binary_string(const std::string& bits);

// Bijection on [n]. Stored 0-based; constructors accept 1-based
// one-line notation.
class Permutation {
public:
    explicit Permutation(int n); // identity
    static Permutation from_one_based(const std::vector<int>& image);
    static Permutation from_zero_based(std::vector<int> image);
    // sigma_x: swaps x and x+1 (x is 1-based, 1 <= x <= n-1).
    static Permutation adjacent_transposition(int n, int x);

    int n() const { return int(map_.size()); }
    int of(int i) const { return map_[std::size_t(i)]; } // 0-based
    const std::vector<int>& zero_based() const { return map_; }
    std::vector<int> one_based() const;

    Permutation inverse() const;
    // (this ∘ other)(i) = this(other(i))
    Permutation compose(const Permutation& other) const;
    bool is_identity() const;

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.map_ == b.map_;
    }
    friend bool operator<(const Permutation& a, const Permutation& b) {
        return a.map_ < b.map_;
    }

private:
    explicit Permutation(std::vector<int> m, bool) : map_(std::move(m)) {}
    std::vector<int> map_;
};

// The unique k-interval equipartition of [n]: contiguous parts, earlier parts
// are the larger ones, sizes differ by at most 1.
class IntervalPartition {
public:
    IntervalPartition(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    // Half-open 0-based range of part i (0 <= i < k).
    int begin(int i) const { return bounds_[std::size_t(i)]; }
    int end(int i) const { return bounds_[std::size_t(i) + 1]; }
    int size(int i) const { return end(i) - begin(i); }
    int part_of(int x) const; // 0-based element -> part index
    const std::vector<int>& boundaries() const { return bounds_; }

private:
    int n_;
    int k_;
    std::vector<int> bounds_; // k+1 cut points, bounds_[0]=0, bounds_[k]=n
};

// ---- operations ----

// Encodes a square n x n image as an ordered graph on 2n vertices over the
// image alphabet plus a fresh trailing "no edge" symbol: same-side pairs get
// the marker, cross pairs carry the pixel colors.
OrderedGraph image_to_ordered_graph(const Image& img);

// Exact inverse on the range of image_to_ordered_graph. The trailing alphabet
// symbol is taken as the "no edge" marker and the same-side pattern is
// validated.
Image ordered_graph_to_image(const OrderedGraph& g);

// Number of base elements moved by basic moves: n for strings and graphs,
// 2n for square images (rows then columns, via the graph encoding).
int base_element_count(const OrderedStructure& f);

// f ∘ sigma_x^k, with x 1-based in [1, base_element_count-1]. For images,
// x < n swaps adjacent rows, x > n adjacent columns; x = n is legal under
// the encoding but mixes a row with a column, so the result is returned as
// an OrderedGraph (see basic_move_warning).
OrderedStructure apply_basic_move(const OrderedStructure& f, int x);
OrderedString apply_basic_move(const OrderedString& s, int x);
OrderedGraph apply_basic_move(const OrderedGraph& g, int x);

// Non-empty when the move mixes the row block with the column block.
std::string basic_move_warning(const Image& img, int x);

// Output H with H(sigma(i)sigma(j)) = G(ij) (strings: H(sigma(i)) = G(i)).
OrderedString apply_permutation(const OrderedString& s, const Permutation& sigma);
OrderedGraph apply_permutation(const OrderedGraph& g, const Permutation& sigma);
// Images go through the encoding; the result decodes back to an image exactly
// when sigma maps the row block to itself.
OrderedStructure apply_permutation(const OrderedStructure& f, const Permutation& sigma);

bool same_shape(const OrderedStructure& a, const OrderedStructure& b);
bool structures_equal(const OrderedStructure& a, const OrderedStructure& b);

// Flat entry vector (string entries / pixels / pair colors); shape-agnostic
// payload used for Hamming counts and as a map key in search oracles.
const std::vector<int>& entries_of(const OrderedStructure& f);

} // namespace ordtest

#endif
