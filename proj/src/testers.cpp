#include "ordtest/testers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace ordtest {

namespace {

std::vector<int> permute_key(KeyKind kind, int q, const std::vector<int>& key,
                             const std::vector<int>& pi) {
    std::vector<int> out(key.size());
    if (kind == KeyKind::string_key) {
        for (int a = 0; a < q; ++a)
            out[std::size_t(a)] = key[std::size_t(pi[std::size_t(a)])];
        return out;
    }
    for (int a = 0; a < q; ++a)
        for (int b = a + 1; b < q; ++b)
            out[OrderedGraph::pair_index(q, a, b)] =
                key[OrderedGraph::pair_index(q, pi[std::size_t(a)], pi[std::size_t(b)])];
    return out;
}

} // namespace

CanonicalTest canonical_table(int q, std::vector<std::vector<int>> accepted_keys) {
    std::sort(accepted_keys.begin(), accepted_keys.end());
    CanonicalTest t;
    t.q = q;
    t.deterministic = true;
    t.accept_probability = [keys = std::move(accepted_keys)](const std::vector<int>& key) {
        return std::binary_search(keys.begin(), keys.end(), key) ? 1.0 : 0.0;
    };
    return t;
}

CanonicalTest canonical_test_for_property(const Property& p, int q, const Alphabet& alpha) {
    CanonicalTest t;
    t.q = q;
    t.deterministic = true;
    if (p.kind == StructureKind::string_kind) {
        t.accept_probability = [p, alpha](const std::vector<int>& key) {
            return p.contains(make_string(alpha, key)) ? 1.0 : 0.0;
        };
    } else if (p.kind == StructureKind::graph_kind) {
        t.accept_probability = [p, alpha, q](const std::vector<int>& key) {
            return p.contains(make_graph(alpha, q, key)) ? 1.0 : 0.0;
        };
    } else {
        throw capability_error("canonical_test_for_property: images go through the "
                               "graph encoding");
    }
    return t;
}

TesterReport make_report(std::int64_t trials, std::int64_t accepts, std::uint64_t seed) {
    TesterReport r;
    r.trials = trials;
    r.accepts = accepts;
    r.seed = seed;
    if (trials > 0) {
        double p = double(accepts) / double(trials);
        r.rate = p;
        const double z = 1.959963985;
        double nn = double(trials);
        double denom = 1.0 + z * z / nn;
        double center = (p + z * z / (2 * nn)) / denom;
        double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
        r.wilson_lo = std::max(0.0, center - half);
        r.wilson_hi = std::min(1.0, center + half);
    }
    return r;
}

TesterReport run_canonical(const OrderedStructure& f, const CanonicalTest& test,
                           std::int64_t trials, std::uint64_t seed) {
    int n = base_element_count(f);
    if (test.q < 1 || test.q > n) throw parameter_error("run_canonical: q out of range");
    std::int64_t accepts = 0;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        Rng rng(Rng::derive(seed, std::uint64_t(trial)));
        std::vector<int> subset = rng.sorted_subset(n, test.q);
        double p = test.accept_probability(induced_key(f, subset));
        if (p >= 1.0 || (p > 0.0 && rng.bernoulli(p))) ++accepts;
    }
    return make_report(trials, accepts, seed);
}

Rat exact_acceptance(const OrderedStructure& f, const CanonicalTest& test,
                     const ExactCaps& caps) {
    if (!test.deterministic)
        throw parameter_error("exact_acceptance needs a deterministic decision table");
    int n = base_element_count(f);
    if (test.q < 1 || test.q > n) throw parameter_error("exact_acceptance: q out of range");
    if (binom(n, test.q) > caps.subgraph_enum_max)
        throw capacity_error("exact_acceptance: C(n,q) above enumeration cap");
    std::int64_t total = 0, accepted = 0;
    for_each_subset(n, test.q, [&](const std::vector<int>& subset) {
        ++total;
        if (test.accept_probability(induced_key(f, subset)) >= 1.0) ++accepted;
        return true;
    });
    return Rat(accepted, total);
}

TolerantWrapper canonical_to_tolerant(const CanonicalTest& test) {
    if (!test.deterministic)
        throw parameter_error("canonical_to_tolerant expects a deterministic test");
    if (test.q < 2)
        throw parameter_error("canonical_to_tolerant needs q >= 2");
    TolerantWrapper w;
    w.base = test;
    w.repetitions = 9;
    w.query_vertices = 9 * test.q;
    std::int64_t pairs = binom2(test.q);
    w.delta = [pairs](double) { return 1.0 / (20.0 * double(pairs)); };
    return w;
}

Rat majority_acceptance(const Rat& p, int reps) {
    Rat q = Rat(1) - p;
    Rat sum(0);
    for (int j = reps / 2 + 1; j <= reps; ++j) {
        Rat term(binom(reps, j));
        for (int i = 0; i < j; ++i) term *= p;
        for (int i = 0; i < reps - j; ++i) term *= q;
        sum += term;
    }
    return sum;
}

Rat interval_shuffle_mixing_bound(int n, int k) {
    IntervalPartition parts(n, k);
    std::int64_t s = 0;
    for (int i = 0; i < k; ++i) s += binom2(parts.size(i));
    return Rat(s, binom2(n));
}

std::vector<int> piecewise_sample(int n, const PiecewiseQueryPlan& plan, Rng& rng) {
    IntervalPartition parts(n, plan.k());
    std::vector<int> out;
    out.reserve(std::size_t(plan.total()));
    for (int j = 0; j < plan.k(); ++j) {
        int qj = plan.q_per_part[std::size_t(j)];
        if (qj < 0 || qj > parts.size(j))
            throw parameter_error("piecewise plan infeasible: q_j exceeds |I_j|");
        for (int v : rng.sorted_subset(parts.size(j), qj))
            out.push_back(parts.begin(j) + v);
    }
    return out;
}

std::vector<int> simulated_piecewise_sample(int n, const PiecewiseQueryPlan& plan,
                                            std::int64_t t, Rng& rng) {
    int k = plan.k();
    int maxq = 0;
    for (int qj : plan.q_per_part) maxq = std::max(maxq, qj);
    if (t < maxq) throw parameter_error("simulated sample needs t >= max q_j");
    if (t * k > n) throw parameter_error("simulated sample needs t*k <= n");

    std::vector<int> pool = rng.sorted_subset(n, int(t) * k);
    std::vector<int> out;
    out.reserve(std::size_t(plan.total()));
    for (int j = 0; j < k; ++j) {
        int qj = plan.q_per_part[std::size_t(j)];
        for (int v : rng.sorted_subset(int(t), qj))
            out.push_back(pool[std::size_t(j) * std::size_t(t) + std::size_t(v)]);
    }
    return out;
}

TesterReport run_piecewise(const OrderedStructure& f, const PiecewiseTester& tester,
                           std::int64_t trials, std::uint64_t seed) {
    int n = base_element_count(f);
    std::int64_t accepts = 0;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        Rng rng(Rng::derive(seed, std::uint64_t(trial)));
        PiecewiseQueryPlan plan = tester.draw_plan(n, rng);
        std::vector<int> idx = piecewise_sample(n, plan, rng);
        double p = tester.accept_probability(plan, induced_key(f, idx), rng);
        if (p >= 1.0 || (p > 0.0 && rng.bernoulli(p))) ++accepts;
    }
    return make_report(trials, accepts, seed);
}

PiecewiseTester tolerant_to_piecewise(const TolerantTester& t,
                                      const std::function<double(double)>& delta,
                                      const std::function<double(double)>& eta,
                                      double eps) {
    double d = delta(eta(eps / 2));
    if (!(d > 0) || !(d <= 1))
        throw parameter_error("tolerant_to_piecewise: delta(eta(eps/2)) must be in (0,1]");
    int k = int(std::ceil(2.0 / d));

    PiecewiseTester out;
    out.k = k;
    out.q = t.q;
    out.deterministic = false;
    out.key_kind = t.key_kind;
    out.draw_plan = [t, k](int n, Rng& rng) {
        PiecewiseQueryPlan plan;
        plan.q_per_part.assign(std::size_t(k), 0);
        std::vector<int> xs = t.draw_queries(n, rng);
        IntervalPartition parts(n, k);
        for (int x : xs) ++plan.q_per_part[std::size_t(parts.part_of(x))];
        plan.payload = xs; // decision needs only the conditional law of X given
                           // the counts; carrying the draw realizes exactly that
        return plan;
    };
    out.accept_probability = [t](const PiecewiseQueryPlan& plan, const std::vector<int>& key,
                                 Rng& rng) {
        int q = plan.total();
        // uniform permutation within each block of the sorted sample
        std::vector<int> pi(static_cast<std::size_t>(q));
        std::iota(pi.begin(), pi.end(), 0);
        int offset = 0;
        for (int qj : plan.q_per_part) {
            for (int i = qj; i > 1; --i) {
                int j = int(rng.below(std::uint64_t(i)));
                std::swap(pi[std::size_t(offset + i - 1)], pi[std::size_t(offset + j)]);
            }
            offset += qj;
        }
        return t.accept_probability(plan.payload, permute_key(t.key_kind, q, key, pi));
    };
    return out;
}

TesterReport shuffle_then_run(const OrderedStructure& f, const TolerantTester& t,
                              int k, std::int64_t trials, std::uint64_t seed) {
    int n = base_element_count(f);
    IntervalPartition parts(n, k);
    std::int64_t accepts = 0;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        Rng rng(Rng::derive(seed, std::uint64_t(trial)));
        // uniform shuffle inside every interval
        std::vector<int> img(static_cast<std::size_t>(n));
        std::iota(img.begin(), img.end(), 0);
        for (int j = 0; j < k; ++j) {
            int b = parts.begin(j), len = parts.size(j);
            for (int i = len; i > 1; --i) {
                int r = int(rng.below(std::uint64_t(i)));
                std::swap(img[std::size_t(b + i - 1)], img[std::size_t(b + r)]);
            }
        }
        OrderedStructure shuffled = apply_permutation(f, Permutation::from_zero_based(img));
        std::vector<int> xs = t.draw_queries(n, rng);
        double p = t.accept_probability(xs, induced_key(shuffled, xs));
        if (p >= 1.0 || (p > 0.0 && rng.bernoulli(p))) ++accepts;
    }
    return make_report(trials, accepts, seed);
}

// ---- exact enumeration of the two sampling processes ----

namespace {

using OutcomeMap = std::map<std::vector<int>, Rat>;

void enumerate_piecewise(int n, const PiecewiseQueryPlan& plan, OutcomeMap& out) {
    IntervalPartition parts(n, plan.k());
    std::int64_t denom = 1;
    for (int j = 0; j < plan.k(); ++j)
        denom *= binom(parts.size(j), plan.q_per_part[std::size_t(j)]);
    Rat prob(1, denom);

    std::vector<int> chosen;
    std::function<void(int)> rec = [&](int j) {
        if (j == plan.k()) {
            out[chosen] += prob;
            return;
        }
        int qj = plan.q_per_part[std::size_t(j)];
        for_each_subset(parts.size(j), qj, [&](const std::vector<int>& sub) {
            std::size_t before = chosen.size();
            for (int v : sub) chosen.push_back(parts.begin(j) + v);
            rec(j + 1);
            chosen.resize(before);
            return true;
        });
    };
    rec(0);
}

void enumerate_simulated(int n, const PiecewiseQueryPlan& plan, std::int64_t t,
                         OutcomeMap& out) {
    int k = plan.k();
    std::int64_t denom = binom(n, t * k);
    for (int j = 0; j < k; ++j) denom *= binom(t, plan.q_per_part[std::size_t(j)]);
    Rat prob(1, denom);

    for_each_subset(n, int(t) * k, [&](const std::vector<int>& pool) {
        std::vector<int> chosen;
        std::function<void(int)> rec = [&](int j) {
            if (j == k) {
                out[chosen] += prob;
                return;
            }
            for_each_subset(int(t), plan.q_per_part[std::size_t(j)],
                            [&](const std::vector<int>& sub) {
                std::size_t before = chosen.size();
                for (int v : sub)
                    chosen.push_back(pool[std::size_t(j) * std::size_t(t) + std::size_t(v)]);
                rec(j + 1);
                chosen.resize(before);
                return true;
            });
        };
        rec(0);
        return true;
    });
}

Rat outcome_variation(const OutcomeMap& a, const OutcomeMap& b) {
    Rat sum(0);
    auto it = a.begin();
    auto jt = b.begin();
    while (it != a.end() || jt != b.end()) {
        if (jt == b.end() || (it != a.end() && it->first < jt->first)) {
            sum += it->second;
            ++it;
        } else if (it == a.end() || jt->first < it->first) {
            sum += jt->second;
            ++jt;
        } else {
            sum += (it->second - jt->second).abs();
            ++it;
            ++jt;
        }
    }
    return sum / Rat(2);
}

} // namespace

VariationEstimate simupiece_variation_exact(int n, const PiecewiseQueryPlan& plan,
                                            std::int64_t t) {
    if (n > 16 || plan.total() > 3)
        throw capacity_error("simupiece exact mode caps n <= 16, q <= 3");
    int maxq = 0;
    for (int qj : plan.q_per_part) maxq = std::max(maxq, qj);
    if (t < maxq) throw parameter_error("simulated sample needs t >= max q_j");
    if (t * plan.k() > n) throw parameter_error("simulated sample needs t*k <= n");

    OutcomeMap piece, sim;
    enumerate_piecewise(n, plan, piece);
    enumerate_simulated(n, plan, t, sim);

    VariationEstimate v;
    v.exact = true;
    v.exact_value = outcome_variation(piece, sim);
    v.t_effective = t;
    return v;
}

VariationEstimate simupiece_variation_sampled(int n, const PiecewiseQueryPlan& plan,
                                              std::int64_t t, std::int64_t trials,
                                              std::uint64_t seed, int buckets) {
    std::int64_t t_eff = std::min<std::int64_t>(t, n / plan.k());
    int maxq = 0;
    for (int qj : plan.q_per_part) maxq = std::max(maxq, qj);
    if (t_eff < maxq) throw parameter_error("simupiece: n too small for the plan");

    auto coarsen = [&](const std::vector<int>& idx) {
        std::vector<int> cell;
        cell.reserve(idx.size());
        for (int v : idx) cell.push_back(int(std::int64_t(v) * buckets / n));
        return cell;
    };

    std::map<std::vector<int>, std::int64_t> pc, sc;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        Rng rng(Rng::derive(seed, std::uint64_t(trial)));
        ++pc[coarsen(piecewise_sample(n, plan, rng))];
        ++sc[coarsen(simulated_piecewise_sample(n, plan, t_eff, rng))];
    }

    double vd = 0, var = 0;
    auto it = pc.begin();
    auto jt = sc.begin();
    double m = double(trials);
    auto absorb = [&](double p, double q) {
        vd += std::abs(p - q);
        var += (p * (1 - p) + q * (1 - q)) / m;
    };
    while (it != pc.end() || jt != sc.end()) {
        if (jt == sc.end() || (it != pc.end() && it->first < jt->first)) {
            absorb(double(it->second) / m, 0.0);
            ++it;
        } else if (it == pc.end() || jt->first < it->first) {
            absorb(0.0, double(jt->second) / m);
            ++jt;
        } else {
            absorb(double(it->second) / m, double(jt->second) / m);
            ++it;
            ++jt;
        }
    }

    VariationEstimate v;
    v.exact = false;
    v.estimate = vd / 2;
    v.sigma = std::sqrt(var) / 2;
    v.trials = trials;
    v.t_effective = t_eff;
    return v;
}

SimulatedCanonicalTester piecewise_to_canonical(const PiecewiseTester& tester,
                                                std::optional<std::int64_t> t_override,
                                                std::optional<std::int64_t> min_n_override) {
    SimulatedCanonicalTester out;
    out.base = tester;
    if (t_override) {
        out.t = *t_override;
    } else {
        // delta = 1/12, t = 600 k^4 q^2 delta^-3
        std::int64_t k = tester.k, q = tester.q;
        out.t = 600 * k * k * k * k * q * q * 12 * 12 * 12;
    }
    out.query_vertices = out.t * tester.k;
    out.min_n = min_n_override ? *min_n_override : 10 * out.t * tester.k;
    return out;
}

TesterReport run_simulated_canonical(const OrderedStructure& f,
                                     const SimulatedCanonicalTester& tester,
                                     std::int64_t trials, std::uint64_t seed) {
    int n = base_element_count(f);
    if (n < tester.min_n)
        throw parameter_error("input too small for the simulated canonical tester "
                              "(needs n >= " + std::to_string(tester.min_n) + ")");
    std::int64_t accepts = 0;
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        Rng rng(Rng::derive(seed, std::uint64_t(trial)));
        PiecewiseQueryPlan plan = tester.base.draw_plan(n, rng);
        std::vector<int> idx = simulated_piecewise_sample(n, plan, tester.t, rng);
        double p = tester.base.accept_probability(plan, induced_key(f, idx), rng);
        if (p >= 1.0 || (p > 0.0 && rng.bernoulli(p))) ++accepts;
    }
    return make_report(trials, accepts, seed);
}

// ---- the string test ----

std::int64_t estimate_distribution_samples(int alphabet_size, double zeta, double tau) {
    if (!(zeta > 0 && zeta < 1) || !(tau > 0 && tau < 1))
        throw parameter_error("estimate_distribution needs zeta, tau in (0,1)");
    double m = kEstimateDistC * double(alphabet_size) * double(alphabet_size) *
               std::log(1.0 / tau) / (zeta * zeta);
    return std::max<std::int64_t>(1, std::int64_t(std::ceil(m)));
}

DistributionVector estimate_distribution(const OrderedString& s, int begin, int end,
                                         double zeta, double tau, Rng& rng) {
    if (begin < 0 || end > s.n() || begin >= end)
        throw parameter_error("estimate_distribution: empty interval");
    std::int64_t m = estimate_distribution_samples(s.alphabet.size(), zeta, tau);
    std::vector<std::int64_t> counts(std::size_t(s.alphabet.size()), 0);
    std::uint64_t len = std::uint64_t(end - begin);
    for (std::int64_t i = 0; i < m; ++i) {
        int pos = begin + int(rng.below(len));
        ++counts[std::size_t(s.entries[std::size_t(pos)])];
    }
    DistributionVector out;
    out.densities.reserve(counts.size());
    for (std::int64_t c : counts) out.densities.emplace_back(c, m);
    return out;
}

int string_er_interval_count(const Property& p, const Rat& eps) {
    if (!p.er_bound) throw capability_error("string ER test needs the property's "
                                            "resilience bound");
    double d = p.er_bound(eps.to_double() / 2);
    if (!(d > 0)) throw parameter_error("resilience bound must be positive");
    return int(std::ceil(2.0 / d));
}

Rat string_er_value(const OrderedString& s, const Property& p, int t,
                    const std::vector<DistributionVector>& estimates) {
    if (!p.histogram_oracle)
        throw capability_error("string ER test needs a histogram oracle");
    IntervalPartition parts(s.n(), t);
    return p.histogram_oracle(s.n(), parts, estimates);
}

StringERReport string_er_test(const OrderedString& s, const Property& p, const Rat& eps,
                              std::uint64_t seed) {
    int t = string_er_interval_count(p, eps);
    if (t > s.n())
        throw capacity_error("string ER test: interval count exceeds the string length");
    IntervalPartition parts(s.n(), t);
    double zeta = eps.to_double() / 6.0;
    double tau = 1.0 / (3.0 * double(t));

    std::vector<DistributionVector> estimates;
    estimates.reserve(std::size_t(t));
    for (int i = 0; i < t; ++i) {
        Rng rng(Rng::derive(seed, std::uint64_t(i)));
        estimates.push_back(estimate_distribution(s, parts.begin(i), parts.end(i),
                                                  zeta, tau, rng));
    }

    StringERReport rep;
    rep.t = t;
    rep.seed = seed;
    rep.samples_per_interval = estimate_distribution_samples(s.alphabet.size(), zeta, tau);
    rep.r = string_er_value(s, p, t, estimates);
    rep.accept = rep.r <= eps / Rat(4);
    return rep;
}

} // namespace ordtest
