// Test-only oracles, written directly from the classical definitions and
// kept independent of the scheme machinery they cross-check.
#pragma once

#include <optional>
#include <set>
#include <vector>

#include "diffset/group.hpp"

namespace oracles {

using diffset::FiniteGroup;

// Classical difference-table check: D is a (v, k, lambda)-difference set iff
// every non-identity element occurs exactly lambda times as d^-1 d'.
inline bool difference_table_check(const FiniteGroup& g, const std::vector<int>& D,
                                   long long lambda) {
    std::vector<long long> count(g.order, 0);
    for (int d1 : D)
        for (int d2 : D) count[g.mul(g.inv(d1), d2)]++;
    for (int x = 1; x < g.order; ++x)
        if (count[x] != lambda) return false;
    return count[0] == static_cast<long long>(D.size());
}

// Visits every k-subset of {0, ..., v-1}.
template <class Fn>
inline void for_each_subset(int v, int k, Fn&& fn) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k == 0) {
        fn(idx);
        return;
    }
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == v - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// All difference sets of size k, by exhaustive scan with the table oracle.
inline std::vector<std::vector<int>> all_difference_sets(const FiniteGroup& g, int k) {
    const long long num = static_cast<long long>(k) * (k - 1);
    if (g.order > 1 && num % (g.order - 1) != 0) return {};
    const long long lambda = g.order > 1 ? num / (g.order - 1) : 0;
    std::vector<std::vector<int>> out;
    for_each_subset(g.order, k, [&](const std::vector<int>& D) {
        if (difference_table_check(g, D, lambda)) out.push_back(D);
    });
    return out;
}

// Every subgroup of g, found by closing each known subgroup with each element.
inline std::vector<diffset::Subgroup> all_subgroups(const FiniteGroup& g) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> gen_sets;
    seen.insert({0});
    gen_sets.push_back({});
    std::vector<diffset::Subgroup> out = {diffset::trivial_subgroup(g)};
    for (size_t i = 0; i < out.size(); ++i) {
        diffset::Subgroup base = out[i];
        for (int x = 1; x < g.order; ++x) {
            if (base.has(x)) continue;
            std::vector<int> gens = base.members;
            gens.push_back(x);
            diffset::Subgroup ext = diffset::subgroup_from_generators(g, gens);
            if (seen.insert(ext.members).second) out.push_back(ext);
        }
    }
    return out;
}

}  // namespace oracles
