#pragma once

#include <string>
#include <vector>

#include "diffset/group.hpp"
#include "diffset/search.hpp"

namespace diffset {

// The (120, 35, 10) target and the subgroup chains used for the six
// remaining groups of order 120. Chain subgroup orders are 24, 8, 4, 2, 1.
inline Parameters parameters_120_35_10() {
    Parameters p;
    p.v = 120;
    p.k = 35;
    p.lambda = Rat(10);
    return p;
}

inline const std::vector<std::string>& order120_group_names() {
    static const std::vector<std::string> names = {"G1", "G3", "G7", "S5", "C2xA5", "SL25"};
    return names;
}

namespace detail {

inline int sl25_index_by_label(const FiniteGroup& g, const std::string& label) {
    for (int i = 0; i < g.order; ++i)
        if (g.labels[i] == label) return i;
    throw std::logic_error("SL25 element not found: " + label);
}

inline int perm_index(const FiniteGroup& g, const Perm& p) {
    auto idx = g.index_of_perm(p);
    if (!idx) throw std::logic_error("permutation not found in group");
    return *idx;
}

}  // namespace detail

namespace detail {

// The smallest involution of the subgroup generated by `gens`; used to
// extend a chain below an order-4 subgroup.
inline int smallest_involution(const FiniteGroup& g, const std::vector<int>& gens) {
    Subgroup h = subgroup_from_generators(g, gens);
    for (int x : h.members)
        if (x != 0 && g.mul(x, x) == 0) return x;
    throw std::logic_error("subgroup has no involution");
}

}  // namespace detail

// Generator index lists for H_1 > H_2 > H_3 > H_4 > {1} of the named builtin
// group, with subgroup orders 24, 8, 4, 2, 1. The two trailing levels split
// the final existence decision into a 60-point step and the thin step; the
// search stops early anyway as soon as some level carries no candidates.
inline std::vector<std::vector<int>> preset_chain_generators(const FiniteGroup& g) {
    auto extend = [&g](std::vector<std::vector<int>> lists) {
        lists.push_back({detail::smallest_involution(g, lists.back())});
        lists.push_back({});
        return lists;
    };
    if (g.name == "G1" || g.name == "G3" || g.name == "G7") {
        const int y = 5 * 8, z = 1, z2 = 2;
        return extend({{y, z}, {z}, {z2}});
    }
    if (g.name == "S5") {
        const int c4 = detail::perm_index(g, {1, 2, 3, 0, 4});      // (1,2,3,4)
        const int t12 = detail::perm_index(g, {1, 0, 2, 3, 4});     // (1,2)
        const int t13 = detail::perm_index(g, {2, 1, 0, 3, 4});     // (1,3)
        const int d1234 = detail::perm_index(g, {1, 0, 3, 2, 4});   // (1,2)(3,4)
        const int d1324 = detail::perm_index(g, {2, 3, 0, 1, 4});   // (1,3)(2,4)
        // The Klein subgroup is taken at the order-4 level (rather than
        // <(1,2,3,4)>): its normalizer in S5 is all of S4, so the quotient
        // admits a point-symmetry group of order 720 instead of 240, which
        // keeps the 30-point candidate list small enough to finish.
        return extend({{c4, t12}, {c4, t13}, {d1234, d1324}});
    }
    if (g.name == "C2xA5") {
        // Indices in the C2 x A5 product follow (a, b) -> a*60 + b with the
        // A5 factor enumerated from its two standard generators.
        FiniteGroup a5 = group_from_permutations({{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}}, "A5");
        const int flip = 60;  // (1, ())
        const int d2345 = detail::perm_index(a5, {0, 2, 1, 4, 3});  // (2,3)(4,5)
        const int d2435 = detail::perm_index(a5, {0, 3, 4, 1, 2});  // (2,4)(3,5)
        const int r345 = detail::perm_index(a5, {0, 1, 3, 4, 2});   // (3,4,5)
        return extend({{flip, d2345, d2435, r345}, {flip, d2345, d2435}, {flip, d2345}});
    }
    if (g.name == "SL25") {
        const int a1 = detail::sl25_index_by_label(g, "[4,1;2,2]");
        const int a2 = detail::sl25_index_by_label(g, "[4,2;1,2]");
        const int b1 = detail::sl25_index_by_label(g, "[0,3;3,0]");
        const int b2 = detail::sl25_index_by_label(g, "[0,1;4,0]");
        return extend({{a1, a2}, {b1, b2}, {b2}});
    }
    throw std::invalid_argument("no preset chain for group: " + g.name);
}

inline SubgroupChain preset_chain(const FiniteGroup& g) {
    SubgroupChain chain = make_chain(g, preset_chain_generators(g));
    const std::vector<int> expected = {120, 24, 8, 4, 2, 1};
    for (size_t i = 0; i < chain.subgroups.size(); ++i)
        if (chain.subgroups[i].order() != expected[i])
            throw std::logic_error("preset chain subgroup order mismatch for " + g.name);
    return chain;
}

}  // namespace diffset
