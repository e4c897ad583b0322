#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "diffset/equidist.hpp"
#include "diffset/group.hpp"

namespace diffset {

// An automorphism of G, as the image array over element indices.
using Automorphism = std::vector<int>;

struct AutomorphismBudgetExceeded : std::runtime_error {
    AutomorphismBudgetExceeded()
        : std::runtime_error(
              "automorphism search exceeded node budget; "
              "fall back to translation-only symmetries") {}
};

namespace detail {

// Extend a partial image map by closure: whenever img is known on a and b
// it must be known and consistent on a*b. Returns false on conflict.
inline bool close_homomorphism(const FiniteGroup& G, std::vector<int>& img,
                               std::vector<int>& known) {
    for (size_t qi = 0; qi < known.size(); ++qi) {
        const int x = known[qi];
        for (size_t j = 0; j < known.size(); ++j) {
            const int y = known[j];
            for (int pass = 0; pass < 2; ++pass) {
                const int a = pass == 0 ? x : y;
                const int b = pass == 0 ? y : x;
                const int ab = G.mul(a, b);
                const int im = G.mul(img[a], img[b]);
                if (img[ab] < 0) {
                    img[ab] = im;
                    known.push_back(ab);
                } else if (img[ab] != im) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline void automorphism_backtrack(const FiniteGroup& G, const std::vector<int>& gens,
                                   size_t depth, std::vector<int>& img,
                                   std::vector<int>& known,
                                   const std::vector<std::vector<int>>& candidates,
                                   long long node_budget, long long& nodes,
                                   std::vector<Automorphism>& out) {
    if (depth == gens.size()) {
        if (static_cast<int>(known.size()) != G.order) return;
        std::vector<char> hit(G.order, 0);
        for (int y : img) {
            if (hit[y]) return;
            hit[y] = 1;
        }
        out.push_back(img);
        return;
    }
    for (int c : candidates[depth]) {
        if (++nodes > node_budget) throw AutomorphismBudgetExceeded();
        std::vector<int> img2 = img;
        std::vector<int> known2 = known;
        const int g = gens[depth];
        if (img2[g] >= 0) {
            if (img2[g] != c) continue;
        } else {
            img2[g] = c;
            known2.push_back(g);
        }
        if (!close_homomorphism(G, img2, known2)) continue;
        automorphism_backtrack(G, gens, depth + 1, img2, known2, candidates, node_budget,
                               nodes, out);
    }
}

}  // namespace detail

// All automorphisms of G, by backtracking over generator images restricted
// to elements of matching order. Output sorted lex on image tuples.
inline std::vector<Automorphism> automorphisms(const FiniteGroup& G,
                                               long long node_budget = 2'000'000) {
    std::vector<int> gens = G.generators;
    if (gens.empty() && G.order > 1) gens = detail::find_generators(G);
    if (gens.empty()) return {perm_identity(G.order)};
    std::vector<std::vector<int>> candidates(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        const int ord = G.element_order(gens[i]);
        for (int x = 0; x < G.order; ++x)
            if (G.element_order(x) == ord) candidates[i].push_back(x);
    }
    std::vector<int> img(G.order, -1);
    img[0] = 0;
    std::vector<int> known = {0};
    std::vector<Automorphism> out;
    long long nodes = 0;
    detail::automorphism_backtrack(G, gens, 0, img, known, candidates, node_budget, nodes,
                                   out);
    std::sort(out.begin(), out.end());
    return out;
}

// The sublist of automorphisms fixing H setwise.
inline std::vector<Automorphism> automorphisms_fixing(const FiniteGroup& G,
                                                      const Subgroup& H,
                                                      long long node_budget = 2'000'000) {
    std::vector<Automorphism> all = automorphisms(G, node_budget);
    std::vector<Automorphism> out;
    for (const Automorphism& phi : all) {
        bool fixes = true;
        for (int h : H.members)
            if (!H.has(phi[h])) {
                fixes = false;
                break;
            }
        if (fixes) out.push_back(phi);
    }
    return out;
}

// The symmetry group acting on the points of G/H: left translations
// gH -> xgH together with H-fixing automorphisms gH -> phi(g)H, closed
// under composition.
struct PointSymmetryGroup {
    std::vector<std::vector<int>> point_perms;  // each a permutation of the points
    long long aut_count = 0;       // |Aut(G)| (or 0 when fallback skipped it)
    long long aut_fixing_count = 0;
    bool translations_only = false;
};

inline PointSymmetryGroup point_symmetries(const FiniteGroup& G, const Subgroup& H,
                                           long long closure_cap = 1'000'000,
                                           long long aut_node_budget = 2'000'000) {
    CosetPartition cos = left_cosets(G, H);
    const int npts = static_cast<int>(cos.blocks.size());
    std::vector<int> rep(npts);
    for (int i = 0; i < npts; ++i) rep[i] = cos.blocks[i][0];

    PointSymmetryGroup sym;
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> gens;
    auto add_gen = [&](const std::vector<int>& p) {
        if (seen.insert(p).second) gens.push_back(p);
    };
    std::vector<int> group_gens = G.generators;
    if (group_gens.empty() && G.order > 1) group_gens = detail::find_generators(G);
    for (int x : group_gens) {
        std::vector<int> p(npts);
        for (int i = 0; i < npts; ++i) p[i] = cos.block_of[G.mul(x, rep[i])];
        add_gen(p);
    }
    try {
        std::vector<Automorphism> auts = automorphisms(G, aut_node_budget);
        sym.aut_count = static_cast<long long>(auts.size());
        for (const Automorphism& phi : auts) {
            bool fixes = true;
            for (int h : H.members)
                if (!H.has(phi[h])) {
                    fixes = false;
                    break;
                }
            if (!fixes) continue;
            sym.aut_fixing_count++;
            std::vector<int> p(npts);
            for (int i = 0; i < npts; ++i) p[i] = cos.block_of[phi[rep[i]]];
            add_gen(p);
        }
    } catch (const AutomorphismBudgetExceeded&) {
        sym.translations_only = true;
    }
    // Closure under composition.
    std::vector<std::vector<int>> elems(seen.begin(), seen.end());
    std::set<std::vector<int>> closed(seen.begin(), seen.end());
    const std::vector<int> ident = perm_identity(npts);
    if (closed.insert(ident).second) elems.push_back(ident);
    for (size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) {
            std::vector<int> p(npts);
            for (int j = 0; j < npts; ++j) p[j] = g[elems[i][j]];
            if (closed.insert(p).second) {
                if (static_cast<long long>(elems.size()) >= closure_cap)
                    throw std::runtime_error("point symmetry closure exceeds cap");
                elems.push_back(std::move(p));
            }
        }
    sym.point_perms.assign(closed.begin(), closed.end());
    return sym;
}

// Lexicographically minimal vector in the orbit {g o p : p in sym}.
inline MultiFunction canonical_form(const MultiFunction& g, const PointSymmetryGroup& sym) {
    const size_t n = g.values.size();
    std::vector<int> best = g.values;
    std::vector<int> cur(n);
    for (const auto& p : sym.point_perms) {
        if (p.size() != n) throw std::invalid_argument("canonical_form: size mismatch");
        bool better = false, worse = false;
        for (size_t i = 0; i < n; ++i) {
            cur[i] = g.values[p[i]];
            if (!better) {
                if (cur[i] < best[i]) better = true;
                else if (cur[i] > best[i]) { worse = true; break; }
            }
        }
        if (better && !worse) {
            // Finish materializing before adopting.
            for (size_t i = 0; i < n; ++i) cur[i] = g.values[p[i]];
            best = cur;
        }
    }
    return MultiFunction(std::move(best));
}

// One representative per orbit, sorted lex.
inline std::vector<MultiFunction> reduce_to_representatives(
    const std::vector<MultiFunction>& candidates, const PointSymmetryGroup& sym) {
    std::set<std::vector<int>> reps;
    for (const MultiFunction& g : candidates) reps.insert(canonical_form(g, sym).values);
    std::vector<MultiFunction> out;
    out.reserve(reps.size());
    for (const auto& r : reps) out.push_back(MultiFunction(r));
    return out;
}

}  // namespace diffset
