#ifndef ORDTEST_METRICS_HPP
#define ORDTEST_METRICS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ordtest/rational.hpp"
#include "ordtest/rng.hpp"
#include "ordtest/structures.hpp"

namespace ordtest {

struct Property; // defined in properties.hpp

// Exact-mode caps. Compile-visible defaults, overridable per call.
struct ExactCaps {
    int perm_enum_max = 8;           // n! isomorphism enumeration
    int bfs_perm_max = 8;            // basic-move BFS over permutations
    long long exhaustive_bits = 24;  // |X| * log2|Sigma| for property search
    long long subgraph_enum_max = 3000; // C(n,q) subgraph enumeration
};
inline constexpr ExactCaps kDefaultCaps{};

// Absolute count plus its normalization. The infinite state covers pairs with
// no unordered isomorphism.
struct DistanceResult {
    bool finite = true;
    std::int64_t absolute = 0;
    std::int64_t normalizer = 1;
    Rat relative;

    static DistanceResult of(std::int64_t abs, std::int64_t norm) {
        return DistanceResult{true, abs, norm, Rat(abs, norm)};
    }
    static DistanceResult infinity(std::int64_t norm) {
        return DistanceResult{false, 0, norm, Rat(0)};
    }
};

struct DistributionVector {
    std::vector<Rat> densities; // one per alphabet symbol, sum == 1

    Rat sum() const {
        Rat s(0);
        for (const Rat& d : densities) s += d;
        return s;
    }
};

// Distribution over canonical q-substructure keys. For ordered graphs a key
// is the induced color sequence in pair order (0,1),(0,2),...,(q-2,q-1); for
// strings it is the induced symbol tuple. Exact weights are rationals; the
// sampled mode also carries a standard-error estimate.
struct QStatistic {
    int q = 0;
    std::map<std::vector<int>, Rat> weights;
    bool exact = true;
    std::int64_t trials = 0;       // sampled mode
    double std_error = 0.0;        // sampled mode: max per-key binomial SE

    Rat total() const {
        Rat s(0);
        for (const auto& [k, w] : weights) s += w;
        return s;
    }
};

struct MixingSetResult {
    std::vector<std::pair<int, int>> inverted_pairs; // 1-based (i,j), i<j
    std::int64_t count = 0;                          // D_m
    Rat normalized;                                  // d_m
};

struct EarthmoverResult {
    DistanceResult distance;
    std::optional<Permutation> witness; // lexicographically least minimizer
    bool exact = true;                  // false for the labeled heuristic
};

// ---- operations ----

DistanceResult hamming(const OrderedStructure& f, const OrderedStructure& g);

MixingSetResult mixing_set(const Permutation& sigma);
std::int64_t inversions(const Permutation& sigma);

// Exact b(sigma) by breadth-first search over permutations; the independent
// oracle for the mixingness identity. Above the cap the error message points
// at mixing_set, which is valid by that identity.
std::int64_t min_basic_moves(const Permutation& sigma,
                             const ExactCaps& caps = kDefaultCaps);

// d(id, sigma) for every sigma in S_n at once (single BFS from the identity).
std::map<std::vector<int>, std::int64_t> basic_move_distances(int n);

// Exact earthmover distance: minimum D_m over all unordered isomorphisms,
// enumerated over n! permutations. Infinite when no isomorphism exists.
EarthmoverResult earthmover_distance(const OrderedStructure& f,
                                     const OrderedStructure& g,
                                     const ExactCaps& caps = kDefaultCaps);

// Greedy heuristic upper bound (clearly labeled non-exact in the result).
EarthmoverResult earthmover_heuristic(const OrderedStructure& f,
                                      const OrderedStructure& g,
                                      std::uint64_t seed, int restarts = 32);

// Exact minimum adjacent-swap count between strings with equal symbol
// multisets: inversion count of the order-preserving occurrence matching.
// Agrees with earthmover_distance (verified against the n! route in tests)
// and stays exact at any length.
DistanceResult string_earthmover(const OrderedString& a, const OrderedString& b);

// BFS over structure space (basic moves as edges); the definition-level
// oracle for earthmover distances. Returns distances to every structure in
// the orbit of f, keyed by entry vector.
std::map<std::vector<int>, std::int64_t>
structure_orbit_distances(const OrderedStructure& f, std::size_t max_states = 200000);

Rat variation_distance(const DistributionVector& mu, const DistributionVector& eta);
Rat variation_distance(const QStatistic& mu, const QStatistic& eta);

enum class QStatMode { plain, k_separated };

QStatistic q_statistic(const OrderedGraph& g, int q,
                       QStatMode mode = QStatMode::plain, int k = 0,
                       const ExactCaps& caps = kDefaultCaps);
QStatistic q_statistic_sampled(const OrderedGraph& g, int q, std::int64_t trials,
                               std::uint64_t seed,
                               QStatMode mode = QStatMode::plain, int k = 0);

// Number of k-separated q-subsets of [n] (no two elements in one interval).
std::int64_t k_separated_count(int n, int q, int k);

// Induced substructure as a canonical key.
std::vector<int> induced_key(const OrderedGraph& g, const std::vector<int>& vertices);
std::vector<int> induced_key(const OrderedString& s, const std::vector<int>& positions);
std::vector<int> induced_key(const OrderedStructure& f, const std::vector<int>& elements);

// Exact relative Hamming distance to a property via its oracle, falling back
// to exhaustive search over all |Sigma|^|X| same-shape structures under the
// caps. Defined in properties.cpp.
Rat distance_to_property(const OrderedStructure& f, const Property& p,
                         const ExactCaps& caps = kDefaultCaps);

// Exhaustive-search oracle used by distance_to_property and by tests.
Rat exhaustive_distance(const OrderedStructure& f,
                        const std::function<bool(const OrderedStructure&)>& contains,
                        const ExactCaps& caps = kDefaultCaps);

// Letter distribution of a string segment [begin, end).
DistributionVector distribution_vector(const OrderedString& s, int begin, int end);
DistributionVector distribution_vector(const OrderedString& s);

// t-aggregated distance between equal-length strings.
Rat aggregated_distance(const OrderedString& a, const OrderedString& b, int t);

// d_A(S, P): minimum aggregated distance to a member, via the property's
// histogram oracle or exhaustive search. Defined in properties.cpp.
Rat aggregated_distance_to_property(const OrderedString& s, const Property& p, int t,
                                    const ExactCaps& caps = kDefaultCaps);

// Enumerates sorted q-subsets of {0..n-1}; fn may return false to stop.
void for_each_subset(int n, int q, const std::function<bool(const std::vector<int>&)>& fn);
void for_each_permutation(int n, const std::function<bool(const Permutation&)>& fn);

} // namespace ordtest

#endif
