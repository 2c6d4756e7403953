#include "ordtest/regularity.hpp"

#include <algorithm>
#include <numeric>

namespace ordtest {

RegularityInstance::RegularityInstance(Rat gamma, int r, int k, int alphabet_size,
                                       std::vector<Rat> densities,
                                       std::vector<std::array<int, 4>> exceptions)
    : gamma_(gamma), r_(r), k_(k), sigma_(alphabet_size),
      densities_(std::move(densities)), exceptions_(std::move(exceptions)) {
    if (r_ < 2 || k_ < 1 || sigma_ < 1)
        throw parameter_error("regularity instance needs r >= 2, k >= 1, |Sigma| >= 1");
    if (gamma_ < Rat(0) || gamma_ > Rat(1))
        throw parameter_error("gamma must lie in [0,1]");
    if (std::int64_t(densities_.size()) != table_size())
        throw parameter_error("regularity instance needs exactly K densities");
    for (const Rat& d : densities_)
        if (d < Rat(0) || d > Rat(1)) throw parameter_error("densities must lie in [0,1]");
    for (const auto& e : exceptions_) {
        auto [i, j, i2, j2] = e;
        if (i < 0 || i >= i2 || i2 >= r_ || j < 0 || j >= k_ || j2 < 0 || j2 >= k_)
            throw parameter_error("exception tuple out of range");
    }
    if (Rat(std::int64_t(exceptions_.size())) > gamma_ * Rat(table_size()))
        throw parameter_error("exception set larger than gamma * K");
}

Rat RegularityInstance::complexity() const {
    Rat k_part(table_size());
    if (gamma_ == Rat(0)) return k_part; // 1/gamma undefined; K dominates
    Rat inv = Rat(1) / gamma_;
    return inv > k_part ? inv : k_part;
}

std::size_t RegularityInstance::index(int i, int j, int i2, int j2, int s) const {
    if (!(0 <= i && i < i2 && i2 < r_)) throw parameter_error("density index needs i < i'");
    std::size_t pair = OrderedGraph::pair_index(r_, i, i2);
    std::size_t kk = std::size_t(k_);
    return ((pair * kk + std::size_t(j)) * kk + std::size_t(j2)) * std::size_t(sigma_) +
           std::size_t(s);
}

const Rat& RegularityInstance::density(int i, int j, int i2, int j2, int s) const {
    return densities_[index(i, j, i2, j2, s)];
}

bool RegularityInstance::excepted(int i, int j, int i2, int j2) const {
    std::array<int, 4> probe{i, j, i2, j2};
    return std::find(exceptions_.begin(), exceptions_.end(), probe) != exceptions_.end();
}

RegularityInstance RegularityInstance::with_density(int i, int j, int i2, int j2, int s,
                                                    Rat value) const {
    std::vector<Rat> d = densities_;
    d[index(i, j, i2, j2, s)] = value;
    return RegularityInstance(gamma_, r_, k_, sigma_, std::move(d), exceptions_);
}

PhiInstance::PhiInstance(int r, int k, int alphabet_size, std::vector<Rat> lower,
                         std::vector<Rat> upper)
    : r_(r), k_(k), sigma_(alphabet_size), lower_(std::move(lower)), upper_(std::move(upper)) {
    if (r_ < 2 || k_ < 1 || sigma_ < 1)
        throw parameter_error("phi instance needs r >= 2, k >= 1, |Sigma| >= 1");
    std::size_t want = std::size_t(binom2(r_)) * std::size_t(k_) * std::size_t(k_) *
                       std::size_t(sigma_);
    if (lower_.size() != want || upper_.size() != want)
        throw parameter_error("phi instance table has the wrong size");
    for (std::size_t t = 0; t < want; t += std::size_t(sigma_)) {
        Rat lo(0), hi(0);
        for (int s = 0; s < sigma_; ++s) {
            if (lower_[t + std::size_t(s)] > upper_[t + std::size_t(s)])
                throw parameter_error("phi instance needs lower <= upper");
            lo += lower_[t + std::size_t(s)];
            hi += upper_[t + std::size_t(s)];
        }
        if (lo > Rat(1) || hi < Rat(1))
            throw parameter_error("phi instance needs sum lower <= 1 <= sum upper");
    }
}

std::size_t PhiInstance::index(int i, int j, int i2, int j2, int s) const {
    if (!(0 <= i && i < i2 && i2 < r_)) throw parameter_error("phi index needs i < i'");
    std::size_t pair = OrderedGraph::pair_index(r_, i, i2);
    std::size_t kk = std::size_t(k_);
    return ((pair * kk + std::size_t(j)) * kk + std::size_t(j2)) * std::size_t(sigma_) +
           std::size_t(s);
}

const Rat& PhiInstance::lower(int i, int j, int i2, int j2, int s) const {
    return lower_[index(i, j, i2, j2, s)];
}
const Rat& PhiInstance::upper(int i, int j, int i2, int j2, int s) const {
    return upper_[index(i, j, i2, j2, s)];
}

Rat sigma_density(const OrderedGraph& g, const std::vector<int>& a,
                  const std::vector<int>& b, int color) {
    if (a.empty() || b.empty()) throw parameter_error("sigma_density needs non-empty sets");
    for (int u : a)
        for (int v : b)
            if (u == v) throw parameter_error("sigma_density needs disjoint sets");
    std::int64_t hits = 0;
    for (int u : a)
        for (int v : b)
            if (g.color(u, v) == color) ++hits;
    return Rat(hits, std::int64_t(a.size()) * std::int64_t(b.size()));
}

namespace {

std::vector<int> mask_to_subset(const std::vector<int>& base, unsigned mask) {
    std::vector<int> out;
    for (std::size_t i = 0; i < base.size(); ++i)
        if (mask & (1u << i)) out.push_back(base[i]);
    return out;
}

} // namespace

RegularPairVerdict is_regular_pair(const OrderedGraph& g, const std::vector<int>& a,
                                   const std::vector<int>& b, const Rat& gamma) {
    if (int(a.size()) > 14 || int(b.size()) > 14)
        throw capacity_error("is_regular_pair exact mode caps |A|,|B| at 14");
    int na = int(a.size()), nb = int(b.size());
    int sigma = g.alphabet.size();

    // per-color bit rows: row[s][ai] = bitmask over b of color-s edges
    std::vector<std::vector<unsigned>> row(std::size_t(sigma),
                                           std::vector<unsigned>(std::size_t(na), 0));
    for (int ai = 0; ai < na; ++ai)
        for (int bi = 0; bi < nb; ++bi)
            row[std::size_t(g.color(a[std::size_t(ai)], b[std::size_t(bi)]))]
                 [std::size_t(ai)] |= (1u << bi);

    std::vector<Rat> global(static_cast<std::size_t>(sigma));
    for (int s = 0; s < sigma; ++s) global[std::size_t(s)] = sigma_density(g, a, b, s);

    RegularPairVerdict verdict;
    Rat worst(0);
    for (unsigned am = 1; am < (1u << na); ++am) {
        int ca = __builtin_popcount(am);
        if (Rat(ca) < gamma * Rat(na)) continue;
        for (unsigned bm = 1; bm < (1u << nb); ++bm) {
            int cb = __builtin_popcount(bm);
            if (Rat(cb) < gamma * Rat(nb)) continue;
            for (int s = 0; s < sigma; ++s) {
                std::int64_t hits = 0;
                for (int ai = 0; ai < na; ++ai)
                    if (am & (1u << ai))
                        hits += __builtin_popcount(row[std::size_t(s)][std::size_t(ai)] & bm);
                Rat dev = (Rat(hits, std::int64_t(ca) * cb) - global[std::size_t(s)]).abs();
                if (dev > gamma && dev > worst) {
                    worst = dev;
                    verdict.regular = false;
                    verdict.witness = RegularPairWitness{mask_to_subset(a, am),
                                                         mask_to_subset(b, bm), s, dev};
                }
            }
        }
    }
    return verdict;
}

RegularPairVerdict is_regular_pair_sampled(const OrderedGraph& g, const std::vector<int>& a,
                                           const std::vector<int>& b, const Rat& gamma,
                                           int trials, std::uint64_t seed) {
    int na = int(a.size()), nb = int(b.size());
    int sigma = g.alphabet.size();
    std::vector<Rat> global(static_cast<std::size_t>(sigma));
    for (int s = 0; s < sigma; ++s) global[std::size_t(s)] = sigma_density(g, a, b, s);

    std::int64_t min_a = (gamma * Rat(na)).ceil();
    std::int64_t min_b = (gamma * Rat(nb)).ceil();
    min_a = std::max<std::int64_t>(1, min_a);
    min_b = std::max<std::int64_t>(1, min_b);

    RegularPairVerdict verdict;
    Rat worst(0);
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(Rng::derive(seed, std::uint64_t(trial)));
        int ca = int(min_a + std::int64_t(rng.below(std::uint64_t(na - min_a + 1))));
        int cb = int(min_b + std::int64_t(rng.below(std::uint64_t(nb - min_b + 1))));
        std::vector<int> sa, sb;
        for (int v : rng.sorted_subset(na, ca)) sa.push_back(a[std::size_t(v)]);
        for (int v : rng.sorted_subset(nb, cb)) sb.push_back(b[std::size_t(v)]);
        for (int s = 0; s < sigma; ++s) {
            Rat dev = (sigma_density(g, sa, sb, s) - global[std::size_t(s)]).abs();
            if (dev > gamma && dev > worst) {
                worst = dev;
                verdict.regular = false;
                verdict.witness = RegularPairWitness{sa, sb, s, dev};
            }
        }
    }
    return verdict;
}

namespace {

void validate_refinement(const OrderedGraph& g, const KRefinement& ref) {
    if (ref.r < 1 || ref.k < 1 ||
        ref.parts.size() != std::size_t(ref.r) * std::size_t(ref.k))
        throw parameter_error("refinement has the wrong number of parts");
    IntervalPartition intervals(g.n, ref.r);
    std::vector<bool> seen(std::size_t(g.n), false);
    std::size_t lo = SIZE_MAX, hi = 0;
    for (int i = 0; i < ref.r; ++i)
        for (int j = 0; j < ref.k; ++j) {
            const auto& part = ref.part(i, j);
            lo = std::min(lo, part.size());
            hi = std::max(hi, part.size());
            for (int v : part) {
                if (v < intervals.begin(i) || v >= intervals.end(i))
                    throw parameter_error("refinement part leaves its interval");
                if (seen[std::size_t(v)])
                    throw parameter_error("refinement parts overlap");
                seen[std::size_t(v)] = true;
            }
        }
    for (bool s : seen)
        if (!s) throw parameter_error("refinement does not cover [n]");
    if (hi > lo + 1) throw parameter_error("refinement is not equitable");
}

} // namespace

RegularPartitionVerdict is_regular_partition(const OrderedGraph& g,
                                             const KRefinement& ref, const Rat& gamma) {
    validate_refinement(g, ref);
    RegularPartitionVerdict verdict;
    verdict.cross_pairs = binom2(ref.r) * std::int64_t(ref.k) * ref.k;
    for (int i = 0; i < ref.r; ++i)
        for (int i2 = i + 1; i2 < ref.r; ++i2)
            for (int j = 0; j < ref.k; ++j)
                for (int j2 = 0; j2 < ref.k; ++j2)
                    if (!is_regular_pair(g, ref.part(i, j), ref.part(i2, j2), gamma).regular)
                        ++verdict.irregular_pairs;
    verdict.irregular_fraction = Rat(verdict.irregular_pairs, verdict.cross_pairs);
    verdict.regular = verdict.irregular_fraction <= gamma;
    return verdict;
}

void for_each_equitable_refinement(int n, int r, int k,
                                   const std::function<bool(const KRefinement&)>& fn) {
    IntervalPartition intervals(n, r);
    int small = n / (r * k); // rk parts, sizes small or small+1
    bool stop = false;

    KRefinement ref;
    ref.r = r;
    ref.k = k;
    ref.parts.assign(std::size_t(r) * std::size_t(k), {});

    // per interval: first choose which parts get the larger size, then an
    // ordered set partition with those sizes
    std::function<void(int)> per_interval = [&](int i) {
        if (stop) return;
        if (i == r) {
            if (!fn(ref)) stop = true;
            return;
        }
        int s_i = intervals.size(i);
        int big = s_i - k * small; // number of (small+1)-sized parts here
        if (big < 0 || big > k) return; // interval cannot host an equitable split
        std::vector<int> elems;
        for (int v = intervals.begin(i); v < intervals.end(i); ++v) elems.push_back(v);

        for_each_subset(k, big, [&](const std::vector<int>& big_parts) {
            if (stop) return false;
            std::vector<int> sizes(std::size_t(k), small);
            for (int j : big_parts) ++sizes[std::size_t(j)];

            // ordered partition of elems into labeled parts of given sizes
            std::function<void(int, std::vector<int>)> split =
                [&](int j, std::vector<int> rest) {
                    if (stop) return;
                    if (j == k) {
                        per_interval(i + 1);
                        return;
                    }
                    for_each_subset(int(rest.size()), sizes[std::size_t(j)],
                                    [&](const std::vector<int>& pick) {
                        if (stop) return false;
                        std::vector<int> part, remain;
                        std::vector<bool> used(rest.size(), false);
                        for (int p : pick) {
                            part.push_back(rest[std::size_t(p)]);
                            used[std::size_t(p)] = true;
                        }
                        for (std::size_t t = 0; t < rest.size(); ++t)
                            if (!used[t]) remain.push_back(rest[t]);
                        ref.parts[std::size_t(i) * std::size_t(k) + std::size_t(j)] = part;
                        split(j + 1, remain);
                        return !stop;
                    });
                };
            split(0, elems);
            return !stop;
        });
    };
    per_interval(0);
}

InstanceVerdict satisfies_instance(const OrderedGraph& g, const RegularityInstance& inst) {
    if (g.n > 16 || inst.r() * inst.k() > 8)
        throw capacity_error("satisfies_instance caps n <= 16 and r*k <= 8");
    if (g.alphabet.size() != inst.alphabet_size())
        throw parameter_error("instance alphabet size mismatch");

    InstanceVerdict verdict;
    for_each_equitable_refinement(g.n, inst.r(), inst.k(), [&](const KRefinement& ref) {
        for (int i = 0; i < inst.r(); ++i)
            for (int i2 = i + 1; i2 < inst.r(); ++i2)
                for (int j = 0; j < inst.k(); ++j)
                    for (int j2 = 0; j2 < inst.k(); ++j2) {
                        if (inst.excepted(i, j, i2, j2)) continue;
                        const auto& va = ref.part(i, j);
                        const auto& vb = ref.part(i2, j2);
                        std::int64_t ab = std::int64_t(va.size()) * std::int64_t(vb.size());
                        for (int s = 0; s < inst.alphabet_size(); ++s) {
                            // count must equal floor or ceil of eta*|V||V'|
                            Rat want = inst.density(i, j, i2, j2, s) * Rat(ab);
                            Rat have = sigma_density(g, va, vb, s) * Rat(ab);
                            if (have < Rat(want.floor()) || have > Rat(want.ceil()))
                                return true; // try next refinement
                        }
                        if (!is_regular_pair(g, va, vb, inst.gamma()).regular) return true;
                    }
        verdict.satisfied = true;
        verdict.witness = ref;
        return false; // first (lexicographically least) witness
    });
    return verdict;
}

InstanceVerdict satisfies_phi(const OrderedGraph& g, const PhiInstance& phi) {
    if (g.n > 16) throw capacity_error("satisfies_phi caps n <= 16");
    if (g.alphabet.size() != phi.alphabet_size())
        throw parameter_error("phi alphabet size mismatch");
    int r = phi.r(), k = phi.k();
    int m = g.n / (r * k);
    if (m < 1) throw parameter_error("satisfies_phi needs n >= r*k");
    IntervalPartition intervals(g.n, r);

    InstanceVerdict verdict;
    KRefinement sel;
    sel.r = r;
    sel.k = k;
    sel.parts.assign(std::size_t(r) * std::size_t(k), {});
    bool stop = false;

    std::function<void(int)> per_interval = [&](int i) {
        if (stop) return;
        if (i == r) {
            for (int a = 0; a < r; ++a)
                for (int a2 = a + 1; a2 < r; ++a2)
                    for (int j = 0; j < k; ++j)
                        for (int j2 = 0; j2 < k; ++j2)
                            for (int s = 0; s < phi.alphabet_size(); ++s) {
                                Rat d = sigma_density(g, sel.part(a, j), sel.part(a2, j2), s);
                                if (d < phi.lower(a, j, a2, j2, s) ||
                                    d > phi.upper(a, j, a2, j2, s))
                                    return;
                            }
            verdict.satisfied = true;
            verdict.witness = sel;
            stop = true;
            return;
        }
        std::vector<int> elems;
        for (int v = intervals.begin(i); v < intervals.end(i); ++v) elems.push_back(v);
        std::function<void(int, std::vector<int>)> pick = [&](int j, std::vector<int> rest) {
            if (stop) return;
            if (j == k) {
                per_interval(i + 1);
                return;
            }
            for_each_subset(int(rest.size()), m, [&](const std::vector<int>& sub) {
                if (stop) return false;
                std::vector<int> part, remain;
                std::vector<bool> used(rest.size(), false);
                for (int p : sub) {
                    part.push_back(rest[std::size_t(p)]);
                    used[std::size_t(p)] = true;
                }
                for (std::size_t t = 0; t < rest.size(); ++t)
                    if (!used[t]) remain.push_back(rest[t]);
                sel.parts[std::size_t(i) * std::size_t(k) + std::size_t(j)] = part;
                pick(j + 1, remain);
                return !stop;
            });
        };
        pick(0, elems);
    };
    per_interval(0);
    return verdict;
}

} // namespace ordtest
