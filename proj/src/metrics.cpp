#include "ordtest/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace ordtest {

DistanceResult hamming(const OrderedStructure& f, const OrderedStructure& g) {
    if (!same_shape(f, g)) throw parameter_error("hamming: shape or alphabet mismatch");
    const auto& a = entries_of(f);
    const auto& b = entries_of(g);
    std::int64_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++d;
    return DistanceResult::of(d, std::int64_t(a.size()));
}

MixingSetResult mixing_set(const Permutation& sigma) {
    MixingSetResult r;
    int n = sigma.n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sigma.of(i) > sigma.of(j)) r.inverted_pairs.emplace_back(i + 1, j + 1);
    r.count = std::int64_t(r.inverted_pairs.size());
    r.normalized = n >= 2 ? Rat(r.count, binom2(n)) : Rat(0);
    return r;
}

std::int64_t inversions(const Permutation& sigma) {
    std::int64_t c = 0;
    int n = sigma.n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (sigma.of(i) > sigma.of(j)) ++c;
    return c;
}

namespace {

std::vector<std::vector<int>> basic_move_neighbors(const std::vector<int>& perm) {
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i + 1 < perm.size(); ++i) {
        std::vector<int> next = perm;
        std::swap(next[i], next[i + 1]);
        out.push_back(std::move(next));
    }
    return out;
}

} // namespace

std::map<std::vector<int>, std::int64_t> basic_move_distances(int n) {
    std::vector<int> id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 0);
    std::map<std::vector<int>, std::int64_t> dist;
    dist[id] = 0;
    std::deque<std::vector<int>> queue{id};
    while (!queue.empty()) {
        std::vector<int> cur = std::move(queue.front());
        queue.pop_front();
        std::int64_t d = dist[cur];
        for (auto& next : basic_move_neighbors(cur)) {
            if (dist.emplace(next, d + 1).second) queue.push_back(std::move(next));
        }
    }
    return dist;
}

std::int64_t min_basic_moves(const Permutation& sigma, const ExactCaps& caps) {
    int n = sigma.n();
    if (n > caps.bfs_perm_max)
        throw capacity_error("min_basic_moves: n above BFS cap; use mixing_set, "
                             "which is exact by the mixingness identity");
    if (sigma.is_identity()) return 0;
    std::vector<int> target(static_cast<std::size_t>(n));
    std::iota(target.begin(), target.end(), 0);
    std::map<std::vector<int>, std::int64_t> dist;
    dist[sigma.zero_based()] = 0;
    std::deque<std::vector<int>> queue{sigma.zero_based()};
    while (!queue.empty()) {
        std::vector<int> cur = std::move(queue.front());
        queue.pop_front();
        std::int64_t d = dist[cur];
        for (auto& next : basic_move_neighbors(cur)) {
            if (next == target) return d + 1;
            if (dist.emplace(next, d + 1).second) queue.push_back(std::move(next));
        }
    }
    throw error("min_basic_moves: identity unreachable"); // cannot happen
}

EarthmoverResult earthmover_distance(const OrderedStructure& f,
                                     const OrderedStructure& g,
                                     const ExactCaps& caps) {
    if (!same_shape(f, g)) throw parameter_error("earthmover: shape or alphabet mismatch");
    int n = base_element_count(f);
    std::int64_t norm = n >= 2 ? binom2(n) : 1;
    if (n > caps.perm_enum_max)
        throw capacity_error("earthmover exact mode caps n! enumeration at n <= " +
                             std::to_string(caps.perm_enum_max));

    EarthmoverResult best;
    best.distance = DistanceResult::infinity(norm);
    best.exact = true;
    std::int64_t best_count = -1;
    for_each_permutation(n, [&](const Permutation& sigma) {
        if (structures_equal(apply_permutation(f, sigma), g)) {
            std::int64_t d = inversions(sigma);
            if (best_count < 0 || d < best_count) {
                best_count = d;
                best.witness = sigma; // next_permutation order is lexicographic,
                                      // so the first minimizer is the least one
            }
        }
        return true;
    });
    if (best_count >= 0) best.distance = DistanceResult::of(best_count, norm);
    return best;
}

namespace {

// Backtracking construction of one unordered isomorphism f -> g, visiting
// candidate images in the given order. Returns the permutation when found.
std::optional<Permutation> find_isomorphism_ordered(const OrderedStructure& f,
                                                    const OrderedStructure& g,
                                                    const std::vector<std::vector<int>>& order) {
    int n = base_element_count(f);
    const auto* gf = std::get_if<OrderedGraph>(&f);
    const auto* gg = std::get_if<OrderedGraph>(&g);
    const auto* sf = std::get_if<OrderedString>(&f);
    const auto* sg = std::get_if<OrderedString>(&g);

    std::vector<int> img(std::size_t(n), -1);
    std::vector<bool> used(std::size_t(n), false);

    std::function<bool(int)> place = [&](int i) -> bool {
        if (i == n) return true;
        for (int cand : order[std::size_t(i)]) {
            if (used[std::size_t(cand)]) continue;
            bool ok = true;
            if (sf) {
                ok = sf->entries[std::size_t(i)] == sg->entries[std::size_t(cand)];
            } else if (gf) {
                for (int j = 0; j < i && ok; ++j)
                    if (gf->color(j, i) != gg->color(img[std::size_t(j)], cand)) ok = false;
            }
            if (!ok) continue;
            img[std::size_t(i)] = cand;
            used[std::size_t(cand)] = true;
            if (place(i + 1)) return true;
            used[std::size_t(cand)] = false;
        }
        return false;
    };
    if (!place(0)) return std::nullopt;
    return Permutation::from_zero_based(img);
}

} // namespace

EarthmoverResult earthmover_heuristic(const OrderedStructure& f0,
                                      const OrderedStructure& g0,
                                      std::uint64_t seed, int restarts) {
    if (!same_shape(f0, g0)) throw parameter_error("earthmover: shape or alphabet mismatch");
    // Images go through the graph encoding so vertices are the base elements.
    OrderedStructure f = f0, g = g0;
    if (std::holds_alternative<Image>(f)) {
        f = image_to_ordered_graph(std::get<Image>(f0));
        g = image_to_ordered_graph(std::get<Image>(g0));
    }
    int n = base_element_count(f);
    std::int64_t norm = n >= 2 ? binom2(n) : 1;

    EarthmoverResult best;
    best.exact = false;
    best.distance = DistanceResult::infinity(norm);
    std::int64_t best_count = -1;

    std::vector<int> identity_order(static_cast<std::size_t>(n));
    std::iota(identity_order.begin(), identity_order.end(), 0);
    for (int attempt = 0; attempt < restarts; ++attempt) {
        std::vector<std::vector<int>> order(static_cast<std::size_t>(n));
        for (auto& row : order) row = identity_order;
        if (attempt > 0) {
            Rng rng(Rng::derive(seed, std::uint64_t(attempt)));
            for (auto& row : order) rng.shuffle(row);
        }
        auto sigma = find_isomorphism_ordered(f, g, order);
        if (!sigma) break; // exhaustive backtracking: no isomorphism at all
        std::int64_t d = inversions(*sigma);
        if (best_count < 0 || d < best_count ||
            (d == best_count && sigma->zero_based() < best.witness->zero_based())) {
            best_count = d;
            best.witness = *sigma;
        }
    }
    if (best_count >= 0) best.distance = DistanceResult::of(best_count, norm);
    return best;
}

DistanceResult string_earthmover(const OrderedString& a, const OrderedString& b) {
    if (a.n() != b.n() || !(a.alphabet == b.alphabet))
        throw parameter_error("string_earthmover: shape or alphabet mismatch");
    int n = a.n();
    std::int64_t norm = n >= 2 ? binom2(n) : 1;

    // Positions of each symbol in b, consumed in order of occurrence in a.
    std::vector<std::vector<int>> occ(static_cast<std::size_t>(a.alphabet.size()));
    for (int i = n - 1; i >= 0; --i)
        occ[std::size_t(b.entries[std::size_t(i)])].push_back(i);
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& stack = occ[std::size_t(a.entries[std::size_t(i)])];
        if (stack.empty()) return DistanceResult::infinity(norm);
        img[std::size_t(i)] = stack.back();
        stack.pop_back();
    }
    std::int64_t inv = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (img[std::size_t(i)] > img[std::size_t(j)]) ++inv;
    return DistanceResult::of(inv, norm);
}

std::map<std::vector<int>, std::int64_t>
structure_orbit_distances(const OrderedStructure& f, std::size_t max_states) {
    int n = base_element_count(f);
    std::map<std::vector<int>, std::int64_t> dist;
    dist[entries_of(f)] = 0;
    std::deque<OrderedStructure> queue{f};
    while (!queue.empty()) {
        OrderedStructure cur = std::move(queue.front());
        queue.pop_front();
        std::int64_t d = dist[entries_of(cur)];
        for (int x = 1; x < n; ++x) {
            OrderedStructure next = apply_basic_move(cur, x);
            if (dist.emplace(entries_of(next), d + 1).second) {
                if (dist.size() > max_states)
                    throw capacity_error("structure orbit larger than the BFS cap");
                queue.push_back(std::move(next));
            }
        }
    }
    return dist;
}

Rat variation_distance(const DistributionVector& mu, const DistributionVector& eta) {
    if (mu.densities.size() != eta.densities.size())
        throw parameter_error("variation distance: mismatched supports");
    Rat sum(0);
    for (std::size_t i = 0; i < mu.densities.size(); ++i)
        sum += (mu.densities[i] - eta.densities[i]).abs();
    return sum / Rat(2);
}

Rat variation_distance(const QStatistic& mu, const QStatistic& eta) {
    if (mu.q != eta.q)
        throw parameter_error("variation distance: q-statistics over different q");
    Rat sum(0);
    auto it = mu.weights.begin();
    auto jt = eta.weights.begin();
    while (it != mu.weights.end() || jt != eta.weights.end()) {
        if (jt == eta.weights.end() || (it != mu.weights.end() && it->first < jt->first)) {
            sum += it->second.abs();
            ++it;
        } else if (it == mu.weights.end() || jt->first < it->first) {
            sum += jt->second.abs();
            ++jt;
        } else {
            sum += (it->second - jt->second).abs();
            ++it;
            ++jt;
        }
    }
    return sum / Rat(2);
}

std::vector<int> induced_key(const OrderedGraph& g, const std::vector<int>& vertices) {
    std::vector<int> key;
    key.reserve(vertices.size() * (vertices.size() - 1) / 2);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            key.push_back(g.color(vertices[i], vertices[j]));
    return key;
}

std::vector<int> induced_key(const OrderedString& s, const std::vector<int>& positions) {
    std::vector<int> key;
    key.reserve(positions.size());
    for (int p : positions) key.push_back(s.entries[std::size_t(p)]);
    return key;
}

std::vector<int> induced_key(const OrderedStructure& f, const std::vector<int>& elements) {
    if (const auto* s = std::get_if<OrderedString>(&f)) return induced_key(*s, elements);
    if (const auto* g = std::get_if<OrderedGraph>(&f)) return induced_key(*g, elements);
    return induced_key(image_to_ordered_graph(std::get<Image>(f)), elements);
}

void for_each_subset(int n, int q, const std::function<bool(const std::vector<int>&)>& fn) {
    if (q < 0 || q > n) throw parameter_error("subset size out of range");
    std::vector<int> idx(static_cast<std::size_t>(q));
    std::iota(idx.begin(), idx.end(), 0);
    if (q == 0) {
        fn(idx);
        return;
    }
    for (;;) {
        if (!fn(idx)) return;
        int i = q - 1;
        while (i >= 0 && idx[std::size_t(i)] == n - q + i) --i;
        if (i < 0) return;
        ++idx[std::size_t(i)];
        for (int j = i + 1; j < q; ++j) idx[std::size_t(j)] = idx[std::size_t(j - 1)] + 1;
    }
}

void for_each_permutation(int n, const std::function<bool(const Permutation&)>& fn) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    do {
        if (!fn(Permutation::from_zero_based(img))) return;
    } while (std::next_permutation(img.begin(), img.end()));
}

std::int64_t k_separated_count(int n, int q, int k) {
    IntervalPartition parts(n, k);
    // DP over intervals: choose at most one element per interval.
    std::vector<std::int64_t> ways(std::size_t(q) + 1, 0);
    ways[0] = 1;
    for (int i = 0; i < k; ++i) {
        for (int used = q; used >= 1; --used)
            ways[std::size_t(used)] += ways[std::size_t(used - 1)] * parts.size(i);
    }
    return ways[std::size_t(q)];
}

namespace {

bool is_k_separated(const std::vector<int>& subset, const IntervalPartition& parts) {
    int prev = -1;
    for (int v : subset) {
        int p = parts.part_of(v);
        if (p == prev) return false;
        prev = p;
    }
    return true;
}

} // namespace

QStatistic q_statistic(const OrderedGraph& g, int q, QStatMode mode, int k,
                       const ExactCaps& caps) {
    if (q < 1 || q > g.n) throw parameter_error("q_statistic: q out of range");
    if (mode == QStatMode::k_separated && k < q)
        throw parameter_error("q_statistic: k-separated mode needs k >= q");
    if (binom(g.n, q) > caps.subgraph_enum_max)
        throw capacity_error("q_statistic: C(n,q) above enumeration cap");

    std::optional<IntervalPartition> parts;
    if (mode == QStatMode::k_separated) parts.emplace(g.n, k);

    std::map<std::vector<int>, std::int64_t> counts;
    std::int64_t total = 0;
    for_each_subset(g.n, q, [&](const std::vector<int>& subset) {
        if (parts && !is_k_separated(subset, *parts)) return true;
        ++counts[induced_key(g, subset)];
        ++total;
        return true;
    });

    QStatistic stat;
    stat.q = q;
    stat.exact = true;
    for (const auto& [key, c] : counts) stat.weights[key] = Rat(c, total);
    return stat;
}

QStatistic q_statistic_sampled(const OrderedGraph& g, int q, std::int64_t trials,
                               std::uint64_t seed, QStatMode mode, int k) {
    if (q < 1 || q > g.n) throw parameter_error("q_statistic: q out of range");
    if (mode == QStatMode::k_separated && k < q)
        throw parameter_error("q_statistic: k-separated mode needs k >= q");
    if (trials < 1) throw parameter_error("q_statistic: trials must be >= 1");

    std::optional<IntervalPartition> parts;
    if (mode == QStatMode::k_separated) parts.emplace(g.n, k);

    Rng rng(seed);
    std::map<std::vector<int>, std::int64_t> counts;
    for (std::int64_t t = 0; t < trials; ++t) {
        std::vector<int> subset;
        do {
            subset = rng.sorted_subset(g.n, q);
        } while (parts && !is_k_separated(subset, *parts));
        ++counts[induced_key(g, subset)];
    }

    QStatistic stat;
    stat.q = q;
    stat.exact = false;
    stat.trials = trials;
    double worst_se = 0.0;
    for (const auto& [key, c] : counts) {
        stat.weights[key] = Rat(c, trials);
        double p = double(c) / double(trials);
        worst_se = std::max(worst_se, std::sqrt(p * (1 - p) / double(trials)));
    }
    stat.std_error = worst_se;
    return stat;
}

Rat exhaustive_distance(const OrderedStructure& f,
                        const std::function<bool(const OrderedStructure&)>& contains,
                        const ExactCaps& caps) {
    const std::vector<int>& base = entries_of(f);
    int sigma = 0;
    if (const auto* s = std::get_if<OrderedString>(&f)) sigma = s->alphabet.size();
    else if (const auto* g = std::get_if<OrderedGraph>(&f)) sigma = g->alphabet.size();
    else sigma = std::get<Image>(f).alphabet.size();

    double bits = double(base.size()) * std::log2(double(sigma));
    if (bits > double(caps.exhaustive_bits))
        throw capacity_error("exhaustive property search above the bit cap");

    std::vector<int> cur(base.size(), 0);
    OrderedStructure probe = f;
    std::int64_t best = -1;
    for (;;) {
        std::vector<int>* mut;
        if (auto* s = std::get_if<OrderedString>(&probe)) mut = &s->entries;
        else if (auto* g = std::get_if<OrderedGraph>(&probe)) mut = &g->colors;
        else mut = &std::get<Image>(probe).pixels;
        *mut = cur;
        if (contains(probe)) {
            std::int64_t d = 0;
            for (std::size_t i = 0; i < base.size(); ++i)
                if (base[i] != cur[i]) ++d;
            if (best < 0 || d < best) best = d;
            if (best == 0) break;
        }
        // next assignment in odometer order
        std::size_t pos = 0;
        while (pos < cur.size() && cur[pos] == sigma - 1) cur[pos++] = 0;
        if (pos == cur.size()) break;
        ++cur[pos];
    }
    if (best < 0) throw parameter_error("property is empty on this shape");
    return Rat(best, std::int64_t(base.size()));
}

DistributionVector distribution_vector(const OrderedString& s, int begin, int end) {
    if (begin < 0 || end > s.n() || begin >= end)
        throw parameter_error("distribution_vector: empty or invalid range");
    std::vector<std::int64_t> counts(std::size_t(s.alphabet.size()), 0);
    for (int i = begin; i < end; ++i) ++counts[std::size_t(s.entries[std::size_t(i)])];
    DistributionVector out;
    out.densities.reserve(counts.size());
    for (std::int64_t c : counts) out.densities.emplace_back(c, end - begin);
    return out;
}

DistributionVector distribution_vector(const OrderedString& s) {
    return distribution_vector(s, 0, s.n());
}

Rat aggregated_distance(const OrderedString& a, const OrderedString& b, int t) {
    if (a.n() != b.n() || !(a.alphabet == b.alphabet))
        throw parameter_error("aggregated_distance: shape or alphabet mismatch");
    if (t < 1 || t > a.n()) throw parameter_error("aggregated_distance: t out of range");
    IntervalPartition parts(a.n(), t);
    Rat sum(0);
    for (int i = 0; i < t; ++i) {
        Rat vd = variation_distance(distribution_vector(a, parts.begin(i), parts.end(i)),
                                    distribution_vector(b, parts.begin(i), parts.end(i)));
        sum += vd * Rat(parts.size(i), a.n());
    }
    return sum;
}

} // namespace ordtest
