#ifndef ORDTEST_PROPERTIES_HPP
#define ORDTEST_PROPERTIES_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ordtest/metrics.hpp"

namespace ordtest {

enum class StructureKind { string_kind, image_kind, graph_kind };

// Capability record: membership is mandatory, everything else optional so
// testers can degrade gracefully. All members are pure given their inputs.
struct Property {
    std::string name;
    StructureKind kind = StructureKind::string_kind;

    std::function<bool(const OrderedStructure&)> contains;

    // Exact relative Hamming distance d_H(f, P).
    std::function<Rat(const OrderedStructure&)> distance_oracle;

    // Exact min over members S' of sum_i |target_i - T(S'_i)| * |S_i|/|S|,
    // given per-interval target histograms (strings only).
    std::function<Rat(int n, const IntervalPartition&,
                      const std::vector<DistributionVector>&)> histogram_oracle;

    // Generator of satisfying structures of size n.
    std::function<OrderedStructure(int n, Rng&)> sampler;

    // Earthmover-resilience modulus delta(eps), when one is known.
    std::function<double(double)> er_bound;
};

struct ERProfile {
    std::vector<double> budgets;  // earthmover budgets (fractions of C(n,2))
    std::vector<Rat> worst_dh;    // per-budget max observed d_H(f', P)
    std::vector<Rat> mean_dh;
    int trials = 0;
    std::uint64_t seed = 0;
};

struct HereditaryERReport {
    std::int64_t pattern_size = 0;
    std::int64_t max_copy_delta = 0;    // max |copies(f) - copies(move(f))| seen
    std::int64_t move_delta_bound = 0;  // n^(h-2)
    bool delta_bound_holds = true;
    // BFS search (n <= 8): moves needed to reach a copy-free structure.
    std::vector<std::pair<std::int64_t, std::int64_t>> destroy_results; // (copies, moves)
    bool destroy_bound_holds = true;
};

// Built-in properties. Parameterized families also have factories below.
std::vector<Property> catalog();
Property find_property(const std::string& name);

Property p111();
Property monotone_string(int alphabet_size = 2);
Property convex_image();
Property half_plane();
Property union_of_convex(int t);
Property no_horiz_pair();
Property forbidden_ordered_subgraph(const OrderedGraph& pattern);
Property forbidden_submatrix(const Image& pattern);

// For each budget beta: sample f in P, apply floor(beta*C(N,2)) random basic
// moves, record the worst d_H(f', P). Deterministic given the seed.
ERProfile er_profile(const Property& p, int n, const std::vector<double>& budgets,
                     int trials, std::uint64_t seed,
                     const ExactCaps& caps = kDefaultCaps);

// Copy-count checks behind the hereditary=>ER argument: a basic move changes
// the number of pattern copies by at most n^(h-2), so destroying all copies
// needs at least copies/n^(h-2) moves.
HereditaryERReport check_hereditary_er(const OrderedStructure& pattern, int n,
                                       int trials, std::uint64_t seed);

// Exact number of induced ordered copies of the pattern.
std::int64_t count_ordered_subgraph_copies(const OrderedGraph& g, const OrderedGraph& pattern);
std::int64_t count_submatrix_copies(const Image& img, const Image& pattern);

// The chessboard counterexample: the board itself and the column-swap
// schedule (basic-move positions over the 2n base elements) that makes it
// 1/4-far in Hamming distance at an O(1/n) earthmover budget.
Image chessboard_image(int n);
std::vector<int> chessboard_swap_schedule(int n);

// Black/white helpers shared by image properties (alphabet {"0","1"}, 1=black).
Image bw_image(int n, const std::vector<int>& pixels);
bool is_black(const Image& img, int r, int c);

} // namespace ordtest

#endif
