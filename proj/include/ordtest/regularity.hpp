#ifndef ORDTEST_REGULARITY_HPP
#define ORDTEST_REGULARITY_HPP

#include <array>
#include <optional>
#include <vector>

#include "ordtest/metrics.hpp"
#include "ordtest/structures.hpp"

namespace ordtest {

// Ordered regularity instance: gamma, r interval parts, k refinement parts,
// a density per (i < i', j, j', sigma) and an exception set of index tuples.
class RegularityInstance {
public:
    RegularityInstance(Rat gamma, int r, int k, int alphabet_size,
                       std::vector<Rat> densities,
                       std::vector<std::array<int, 4>> exceptions);

    Rat gamma() const { return gamma_; }
    int r() const { return r_; }
    int k() const { return k_; }
    int alphabet_size() const { return sigma_; }
    std::int64_t table_size() const { return binom2(r_) * k_ * k_ * sigma_; } // K
    Rat complexity() const;

    // i < i' in [0, r), j, j' in [0, k), s in [0, sigma)
    const Rat& density(int i, int j, int i2, int j2, int s) const;
    bool excepted(int i, int j, int i2, int j2) const;
    const std::vector<std::array<int, 4>>& exceptions() const { return exceptions_; }
    const std::vector<Rat>& raw_densities() const { return densities_; }

    RegularityInstance with_density(int i, int j, int i2, int j2, int s, Rat value) const;

private:
    std::size_t index(int i, int j, int i2, int j2, int s) const;

    Rat gamma_;
    int r_, k_, sigma_;
    std::vector<Rat> densities_;
    std::vector<std::array<int, 4>> exceptions_;
};

// Lower/upper density bounds per (i < i', j, j', sigma).
class PhiInstance {
public:
    PhiInstance(int r, int k, int alphabet_size, std::vector<Rat> lower,
                std::vector<Rat> upper);

    int r() const { return r_; }
    int k() const { return k_; }
    int alphabet_size() const { return sigma_; }
    const Rat& lower(int i, int j, int i2, int j2, int s) const;
    const Rat& upper(int i, int j, int i2, int j2, int s) const;

private:
    std::size_t index(int i, int j, int i2, int j2, int s) const;

    int r_, k_, sigma_;
    std::vector<Rat> lower_, upper_;
};

// Nested equitable refinement: parts[i*k + j] = V_{ij} subseteq I_i.
struct KRefinement {
    int r = 0;
    int k = 0;
    std::vector<std::vector<int>> parts;

    const std::vector<int>& part(int i, int j) const {
        return parts[std::size_t(i) * std::size_t(k) + std::size_t(j)];
    }
};

Rat sigma_density(const OrderedGraph& g, const std::vector<int>& a,
                  const std::vector<int>& b, int color);

struct RegularPairWitness {
    std::vector<int> a_subset;
    std::vector<int> b_subset;
    int color = 0;
    Rat deviation;
};

struct RegularPairVerdict {
    bool regular = true;
    std::optional<RegularPairWitness> witness; // worst deviation when irregular
};

// Exact verdict enumerates every qualifying subset pair (|A|,|B| <= 14).
RegularPairVerdict is_regular_pair(const OrderedGraph& g, const std::vector<int>& a,
                                   const std::vector<int>& b, const Rat& gamma);

// One-sided sampled mode: can only certify irregularity.
RegularPairVerdict is_regular_pair_sampled(const OrderedGraph& g, const std::vector<int>& a,
                                           const std::vector<int>& b, const Rat& gamma,
                                           int trials, std::uint64_t seed);

struct RegularPartitionVerdict {
    bool regular = true;
    Rat irregular_fraction;
    std::int64_t irregular_pairs = 0;
    std::int64_t cross_pairs = 0;
};

// Counts irregular cross-interval pairs only; same-interval pairs are
// ignored by definition.
RegularPartitionVerdict is_regular_partition(const OrderedGraph& g,
                                             const KRefinement& refinement,
                                             const Rat& gamma);

struct InstanceVerdict {
    bool satisfied = false;
    std::optional<KRefinement> witness;
};

// Brute-force search over all equitable nested refinements (n <= 16,
// r*k <= 8). Density matching uses the floor/ceil rounding slack.
InstanceVerdict satisfies_instance(const OrderedGraph& g, const RegularityInstance& inst);

// Brute-force search over disjoint nested part selections of size
// floor(n/rk) (n <= 16).
InstanceVerdict satisfies_phi(const OrderedGraph& g, const PhiInstance& phi);

// Enumerates nested equitable refinements, lexicographically; fn returns
// false to stop. Exposed for the relabeling-invariance tests.
void for_each_equitable_refinement(int n, int r, int k,
                                   const std::function<bool(const KRefinement&)>& fn);

} // namespace ordtest

#endif
