#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diffset/group.hpp"

namespace diffset {

// A relation partition (X, R, I): a surjective coloring of ordered point
// pairs. Regularity and unitality are computed once at construction; the
// search reads valencies and relation sizes in its hot loops.
struct RelationPartition {
    int v = 0;                       // #X
    int colors = 0;                  // #I
    std::vector<uint16_t> color_of;  // v*v, row-major: R(x, x')
    int unit_color = -1;             // -1 when not unital
    std::vector<long long> rel_size; // #R^-1(i) per color
    std::vector<int> valency;        // k_i per color; empty when not regular
    bool is_regular = false;

    int color(int x, int xp) const { return color_of[static_cast<size_t>(x) * v + xp]; }
    bool is_unital() const { return unit_color >= 0; }
};

struct ValidationReport {
    bool regular = false;
    bool unital = false;
    int unit_color = -1;
    std::vector<int> valency;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Recomputes regularity/unitality from the raw table; never trusts the
// cached flags.
inline ValidationReport validate_partition(const RelationPartition& rp) {
    ValidationReport rep;
    const int v = rp.v, nc = rp.colors;
    if (static_cast<int>(rp.color_of.size()) != v * v) {
        rep.failures.push_back("color table size mismatch");
        return rep;
    }
    std::vector<long long> size(nc, 0);
    for (uint16_t c : rp.color_of) {
        if (c >= nc) {
            rep.failures.push_back("color index out of range");
            return rep;
        }
        size[c]++;
    }
    for (int i = 0; i < nc; ++i)
        if (size[i] == 0)
            rep.failures.push_back("color " + std::to_string(i) + " unused (not surjective)");
    if (!rp.rel_size.empty() && rp.rel_size != size)
        rep.failures.push_back("cached rel_size disagrees with table");
    // Unitality: some color whose relation is exactly the diagonal.
    {
        int diag = rp.color(0, 0);
        bool uni = true;
        for (int x = 0; x < v && uni; ++x)
            if (rp.color(x, x) != diag) uni = false;
        if (uni && size[diag] == v) {
            rep.unital = true;
            rep.unit_color = diag;
        }
    }
    // Regularity: constant row and column counts per color.
    rep.regular = true;
    rep.valency.assign(nc, -1);
    std::vector<long long> row(nc), col(nc);
    for (int i = 0; i < nc && rep.regular; ++i) {
        int k_first = -1;
        for (int x = 0; x < v; ++x) {
            int r = 0, c = 0;
            for (int y = 0; y < v; ++y) {
                if (rp.color(x, y) == i) ++r;
                if (rp.color(y, x) == i) ++c;
            }
            if (x == 0) k_first = r;
            if (r != k_first || c != k_first) {
                rep.regular = false;
                rep.failures.push_back("color " + std::to_string(i) + " is not regular");
                break;
            }
        }
        if (rep.regular) rep.valency[i] = k_first;
    }
    if (!rep.regular) rep.valency.clear();
    return rep;
}

namespace detail {

inline void finalize_partition(RelationPartition& rp) {
    rp.rel_size.assign(rp.colors, 0);
    for (uint16_t c : rp.color_of) rp.rel_size[c]++;
    ValidationReport rep = validate_partition(rp);
    rp.is_regular = rep.regular;
    rp.unit_color = rep.unital ? rep.unit_color : -1;
    rp.valency = rep.valency;
}

}  // namespace detail

// For tests: wrap a raw color table. Flags are derived, not asserted.
inline RelationPartition partition_from_table(int v, int colors,
                                              std::vector<uint16_t> color_of) {
    RelationPartition rp;
    rp.v = v;
    rp.colors = colors;
    rp.color_of = std::move(color_of);
    detail::finalize_partition(rp);
    return rp;
}

// The thin scheme of G: points and colors are both G, R(g, h) = g^-1 h.
inline RelationPartition thin_scheme(const FiniteGroup& G) {
    RelationPartition rp;
    rp.v = G.order;
    rp.colors = G.order;
    rp.color_of.resize(static_cast<size_t>(G.order) * G.order);
    for (int g = 0; g < G.order; ++g) {
        const int gi = G.inv(g);
        for (int h = 0; h < G.order; ++h)
            rp.color_of[static_cast<size_t>(g) * G.order + h] =
                static_cast<uint16_t>(G.mul(gi, h));
    }
    detail::finalize_partition(rp);
    return rp;
}

// The Schurian scheme on G/H: points are left cosets, colors are double
// cosets, R(g1 H, g2 H) = H g1^-1 g2 H. Always a unital regular partition.
inline RelationPartition schurian_scheme(const FiniteGroup& G, const Subgroup& H) {
    CosetPartition cos = left_cosets(G, H);
    CosetPartition dbl = double_cosets(G, H);
    const int v = static_cast<int>(cos.blocks.size());
    RelationPartition rp;
    rp.v = v;
    rp.colors = static_cast<int>(dbl.blocks.size());
    rp.color_of.resize(static_cast<size_t>(v) * v);
    std::vector<int> rep(v);
    for (int i = 0; i < v; ++i) rep[i] = cos.blocks[i][0];
    for (int a = 0; a < v; ++a) {
        const int gi = G.inv(rep[a]);
        for (int b = 0; b < v; ++b)
            rp.color_of[static_cast<size_t>(a) * v + b] =
                static_cast<uint16_t>(dbl.block_of[G.mul(gi, rep[b])]);
    }
    detail::finalize_partition(rp);
    return rp;
}

// A quotient morphism (f, sigma) between relation partitions. Both maps
// are surjections and the coloring square commutes; this is verified
// exhaustively at construction.
struct QuotientMorphism {
    std::shared_ptr<const RelationPartition> source;
    std::shared_ptr<const RelationPartition> target;
    std::vector<int> point_map;  // length source->v
    std::vector<int> color_map;  // length source->colors
};

inline QuotientMorphism make_quotient_morphism(
    std::shared_ptr<const RelationPartition> source,
    std::shared_ptr<const RelationPartition> target, std::vector<int> point_map,
    std::vector<int> color_map) {
    QuotientMorphism m;
    m.source = std::move(source);
    m.target = std::move(target);
    m.point_map = std::move(point_map);
    m.color_map = std::move(color_map);
    const RelationPartition& src = *m.source;
    const RelationPartition& tgt = *m.target;
    if (static_cast<int>(m.point_map.size()) != src.v ||
        static_cast<int>(m.color_map.size()) != src.colors)
        throw std::invalid_argument("quotient morphism: map size mismatch");
    std::vector<char> pt_hit(tgt.v, 0), co_hit(tgt.colors, 0);
    for (int y : m.point_map) {
        if (y < 0 || y >= tgt.v) throw std::invalid_argument("point map out of range");
        pt_hit[y] = 1;
    }
    for (int j : m.color_map) {
        if (j < 0 || j >= tgt.colors) throw std::invalid_argument("color map out of range");
        co_hit[j] = 1;
    }
    for (char h : pt_hit)
        if (!h) throw std::invalid_argument("point map not surjective");
    for (char h : co_hit)
        if (!h) throw std::invalid_argument("color map not surjective");
    for (int x = 0; x < src.v; ++x)
        for (int xp = 0; xp < src.v; ++xp)
            if (tgt.color(m.point_map[x], m.point_map[xp]) != m.color_map[src.color(x, xp)])
                throw std::invalid_argument("quotient morphism: square does not commute");
    if (src.is_unital() && tgt.is_unital() &&
        m.color_map[src.unit_color] != tgt.unit_color)
        throw std::invalid_argument("quotient morphism: unit not preserved");
    if (src.is_regular) {
        std::vector<int> fiber(tgt.v, 0);
        for (int y : m.point_map) fiber[y]++;
        for (int y = 0; y < tgt.v; ++y)
            if (fiber[y] * tgt.v != src.v)
                throw std::invalid_argument("quotient morphism: unequal fibers");
    }
    return m;
}

// For K <= H <= G, the morphism G/K -> G/H, K\G/K -> H\G/H.
inline QuotientMorphism quotient_between(const FiniteGroup& G, const Subgroup& H,
                                         const Subgroup& K) {
    if (!subgroup_leq(K, H))
        throw std::invalid_argument("quotient_between: K is not contained in H");
    auto src = std::make_shared<RelationPartition>(schurian_scheme(G, K));
    auto tgt = std::make_shared<RelationPartition>(schurian_scheme(G, H));
    CosetPartition cosK = left_cosets(G, K), cosH = left_cosets(G, H);
    CosetPartition dblK = double_cosets(G, K), dblH = double_cosets(G, H);
    std::vector<int> pmap(src->v), cmap(src->colors);
    for (size_t i = 0; i < cosK.blocks.size(); ++i)
        pmap[i] = cosH.block_of[cosK.blocks[i][0]];
    for (size_t i = 0; i < dblK.blocks.size(); ++i)
        cmap[i] = dblH.block_of[dblK.blocks[i][0]];
    return make_quotient_morphism(std::move(src), std::move(tgt), std::move(pmap),
                                  std::move(cmap));
}

}  // namespace diffset
