#ifndef ORDTEST_TESTERS_HPP
#define ORDTEST_TESTERS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ordtest/metrics.hpp"
#include "ordtest/properties.hpp"

namespace ordtest {

// Calibrated constant of the histogram-estimation sample bound
// m = ceil(C * |Sigma|^2 * ln(1/tau) / zeta^2). With C = 1/2 the binary case
// carries a Hoeffding certificate (failure <= 2*tau^2) and the Monte Carlo
// calibration test keeps it honest.
inline constexpr double kEstimateDistC = 0.5;

// Canonical test: samples an ordered q-subset, decides from the induced
// substructure key alone. Probabilistic decisions return an accept
// probability in [0,1]; deterministic tables return exactly 0 or 1.
struct CanonicalTest {
    int q = 0;
    bool deterministic = true;
    std::function<double(const std::vector<int>& key)> accept_probability;
};

// Deterministic table over explicit accepted keys.
CanonicalTest canonical_table(int q, std::vector<std::vector<int>> accepted_keys);

// Accepts iff the induced q-substructure itself satisfies the property.
CanonicalTest canonical_test_for_property(const Property& p, int q, const Alphabet& alpha);

struct PiecewiseQueryPlan {
    std::vector<int> q_per_part; // one count per interval
    // Opaque payload a plan chooser may thread to its decision step (for
    // example the original tolerant tester's query tuple). Distributionally
    // this stays a randomized function of the counts.
    std::vector<int> payload;

    int k() const { return int(q_per_part.size()); }
    int total() const {
        int s = 0;
        for (int v : q_per_part) s += v;
        return s;
    }
};

enum class KeyKind { string_key, graph_key };

// Piecewise-canonical test: a (possibly random) plan chooser plus a decision
// on the plan and the induced key of the per-interval uniform sample. The
// decision may randomize internally through the supplied generator but sees
// nothing beyond (plan, key).
struct PiecewiseTester {
    int k = 1;
    int q = 0;
    bool deterministic = false;
    KeyKind key_kind = KeyKind::graph_key;
    std::function<PiecewiseQueryPlan(int n, Rng&)> draw_plan;
    std::function<double(const PiecewiseQueryPlan&, const std::vector<int>& key, Rng&)>
        accept_probability;
};

struct TesterReport {
    std::int64_t trials = 0;
    std::int64_t accepts = 0;
    double rate = 0.0;
    double wilson_lo = 0.0; // 95% Wilson interval
    double wilson_hi = 1.0;
    std::uint64_t seed = 0;
};

TesterReport make_report(std::int64_t trials, std::int64_t accepts, std::uint64_t seed);

// ---- execution harnesses ----

TesterReport run_canonical(const OrderedStructure& f, const CanonicalTest& test,
                           std::int64_t trials, std::uint64_t seed);

TesterReport run_piecewise(const OrderedStructure& f, const PiecewiseTester& tester,
                           std::int64_t trials, std::uint64_t seed);

// Exact acceptance probability of a deterministic canonical test (enumerates
// all C(n,q) subsets).
Rat exact_acceptance(const OrderedStructure& f, const CanonicalTest& test,
                     const ExactCaps& caps = kDefaultCaps);

// ---- transformations ----

// 9-fold majority vote plus the resilience bound delta(eps) = 1/(20*C(q,2)).
struct TolerantWrapper {
    CanonicalTest base;
    int repetitions = 9;
    int query_vertices = 0; // 9q
    std::function<double(double)> delta;
};

TolerantWrapper canonical_to_tolerant(const CanonicalTest& test);

// Majority-of-reps acceptance probability for a per-run acceptance p, exact.
Rat majority_acceptance(const Rat& p, int reps = 9);

// Non-adaptive tolerant tester exposed for the piecewise construction: a
// query-tuple distribution plus a decision on (positions, induced key).
struct TolerantTester {
    int q = 0;
    KeyKind key_kind = KeyKind::graph_key;
    std::function<std::vector<int>(int n, Rng&)> draw_queries; // sorted tuple
    std::function<double(const std::vector<int>& xs, const std::vector<int>& key)>
        accept_probability;
};

// Exact maximum normalized mixingness of a within-interval shuffle on the
// k-interval partition of [n]; the runtime form of the "< 2/k for large
// enough n" step.
Rat interval_shuffle_mixing_bound(int n, int k);

// Lemma construction: k = ceil(2/delta(eta(eps/2))) intervals; draw X from
// p_T, take per-interval counts, sample that many uniform vertices per
// interval, permute uniformly within each block, feed T's decision.
PiecewiseTester tolerant_to_piecewise(const TolerantTester& t,
                                      const std::function<double(double)>& delta,
                                      const std::function<double(double)>& eta,
                                      double eps);

// Reference process for the equivalence test: shuffle within intervals, then
// run T directly.
TesterReport shuffle_then_run(const OrderedStructure& f, const TolerantTester& t,
                              int k, std::int64_t trials, std::uint64_t seed);

// ---- piecewise sampling and the simulation lemma ----

std::vector<int> piecewise_sample(int n, const PiecewiseQueryPlan& plan, Rng& rng);
std::vector<int> simulated_piecewise_sample(int n, const PiecewiseQueryPlan& plan,
                                            std::int64_t t, Rng& rng);

struct VariationEstimate {
    bool exact = false;
    Rat exact_value;      // exact mode
    double estimate = 0;  // sampled mode
    double sigma = 0;     // sampled mode: delta-method std error
    std::int64_t trials = 0;
    std::int64_t t_effective = 0;
};

// Exact variation distance between the two sampling processes by full
// enumeration (n <= 16, q <= 3).
VariationEstimate simupiece_variation_exact(int n, const PiecewiseQueryPlan& plan,
                                            std::int64_t t);

// Monte Carlo estimate over a coarsened event algebra (per-index buckets).
// A t with t*k > n is capped at floor(n/k), where the simulated process
// coincides with the piecewise one; the effective t is reported.
VariationEstimate simupiece_variation_sampled(int n, const PiecewiseQueryPlan& plan,
                                              std::int64_t t, std::int64_t trials,
                                              std::uint64_t seed, int buckets = 16);

// ---- piecewise to canonical ----

struct SimulatedCanonicalTester {
    PiecewiseTester base;
    std::int64_t t = 0;            // block size of the simulation
    std::int64_t query_vertices = 0; // k*t
    std::int64_t min_n = 0;        // runs only when n >= min_n (10*t*k)
};

// Default block size t = 600 k^4 q^2 delta^-3 at delta = 1/12. The overrides
// exist for the exact-enumeration tests at tiny n.
SimulatedCanonicalTester piecewise_to_canonical(const PiecewiseTester& tester,
                                                std::optional<std::int64_t> t_override = {},
                                                std::optional<std::int64_t> min_n_override = {});

TesterReport run_simulated_canonical(const OrderedStructure& f,
                                     const SimulatedCanonicalTester& tester,
                                     std::int64_t trials, std::uint64_t seed);

// ---- the concrete string test ----

struct StringERReport {
    bool accept = false;
    Rat r;               // estimated aggregated distance to P
    int t = 0;           // interval count
    std::int64_t samples_per_interval = 0;
    std::uint64_t seed = 0;
};

// Draws m = ceil(C*|Sigma|^2*ln(1/tau)/zeta^2) uniform samples with
// replacement from [begin, end) and returns the empirical histogram.
DistributionVector estimate_distribution(const OrderedString& s, int begin, int end,
                                         double zeta, double tau, Rng& rng);
std::int64_t estimate_distribution_samples(int alphabet_size, double zeta, double tau);

// The piecewise-canonical string test: estimates each interval histogram
// with zeta = eps/6 and tau = 1/(3t), minimizes the aggregated distance over
// members through the histogram oracle, accepts iff r <= eps/4.
StringERReport string_er_test(const OrderedString& s, const Property& p, const Rat& eps,
                              std::uint64_t seed);

// Deterministic core used by the tests: r from explicitly supplied interval
// histograms.
Rat string_er_value(const OrderedString& s, const Property& p, int t,
                    const std::vector<DistributionVector>& estimates);

int string_er_interval_count(const Property& p, const Rat& eps);

} // namespace ordtest

#endif
