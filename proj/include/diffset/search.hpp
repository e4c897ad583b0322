#pragma once

#include <atomic>
#include <cassert>
#include <chrono>
#include <memory>
#include <optional>
#include <thread>
#include <vector>

#include "diffset/equidist.hpp"
#include "diffset/scheme.hpp"
#include "diffset/symmetry.hpp"

namespace diffset {

struct SubgroupChain {
    std::vector<Subgroup> subgroups;  // H_0 = G > H_1 > ... > H_n
};

inline SubgroupChain make_chain(const FiniteGroup& G,
                                const std::vector<std::vector<int>>& generator_lists) {
    SubgroupChain chain;
    chain.subgroups.push_back(whole_group(G));
    for (const auto& gens : generator_lists)
        chain.subgroups.push_back(subgroup_from_generators(G, gens));
    return chain;
}

// One level of the tower: the scheme on G/H_i, the morphism down onto the
// previous (coarser) level, the pushed parameters, and the per-color
// autocorrelation targets (A_j g, g) an equi-distributed lift must meet.
struct TowerLevel {
    Subgroup subgroup;
    std::shared_ptr<const RelationPartition> scheme;
    CosetPartition cosets;
    std::optional<QuotientMorphism> from_previous;
    Parameters params;               // (e_i, k, lambda_i)
    int value_bound = 0;             // |H_i|
    std::vector<Rat> color_target;   // required (A_j g, g) per color
    bool targets_integral = false;
    std::vector<long long> color_target_int;
};

struct SearchConfig {
    bool reduce = true;
    int workers = 1;
    long long node_budget = 0;  // 0 = unlimited
    bool emit_candidates = false;
    long long sym_closure_cap = 1'000'000;
    long long aut_node_budget = 2'000'000;
};

enum class SearchStatus { completed, budget_exhausted };

struct LevelStats {
    int level = 0;
    int points = 0;
    int colors = 0;
    long long raw_count = 0;
    long long reduced_count = 0;
    long long sym_order = 0;  // 0 when reduction is off
    bool sym_translations_only = false;
    double elapsed_ms = 0.0;
};

struct SearchReport {
    std::vector<LevelStats> per_level;
    std::vector<std::vector<MultiFunction>> representatives;  // per level, when emitted
    std::vector<std::vector<int>> final_sets;
    SearchStatus status = SearchStatus::completed;
    bool final_level_trivial = false;
    bool reduced = true;
};

// ---------------------------------------------------------------------------

inline std::vector<TowerLevel> build_tower(const FiniteGroup& G, const SubgroupChain& chain,
                                           const Parameters& p) {
    if (chain.subgroups.empty() || chain.subgroups[0].order() != G.order)
        throw std::invalid_argument("build_tower: chain must start at G");
    if (p.v != G.order)
        throw std::invalid_argument("build_tower: parameter v does not match group order");
    if (Rat(p.k * (p.k - 1)) != p.lambda * Rat(p.v - 1))
        throw std::invalid_argument("build_tower: k(k-1) != lambda(v-1)");
    for (size_t i = 1; i < chain.subgroups.size(); ++i) {
        if (!subgroup_leq(chain.subgroups[i], chain.subgroups[i - 1]) ||
            chain.subgroups[i].order() >= chain.subgroups[i - 1].order())
            throw std::invalid_argument("build_tower: chain is not strictly descending");
    }
    std::vector<TowerLevel> tower;
    for (size_t i = 0; i < chain.subgroups.size(); ++i) {
        TowerLevel lvl;
        lvl.subgroup = chain.subgroups[i];
        lvl.scheme = std::make_shared<RelationPartition>(schurian_scheme(G, lvl.subgroup));
        lvl.cosets = left_cosets(G, lvl.subgroup);
        const long long e = lvl.scheme->v;
        lvl.params.v = e;
        lvl.params.k = p.k;
        lvl.params.lambda = Rat(G.order, e) * p.lambda;
        lvl.params.vacuous = (e == 1);
        lvl.value_bound = lvl.subgroup.order();
        if (i > 0) {
            const TowerLevel& prev = tower.back();
            CosetPartition dblK = double_cosets(G, lvl.subgroup);
            CosetPartition dblH = double_cosets(G, prev.subgroup);
            std::vector<int> pmap(lvl.scheme->v), cmap(lvl.scheme->colors);
            for (size_t b = 0; b < lvl.cosets.blocks.size(); ++b)
                pmap[b] = prev.cosets.block_of[lvl.cosets.blocks[b][0]];
            for (size_t b = 0; b < dblK.blocks.size(); ++b)
                cmap[b] = dblH.block_of[dblK.blocks[b][0]];
            lvl.from_previous = make_quotient_morphism(lvl.scheme, prev.scheme,
                                                       std::move(pmap), std::move(cmap));
        }
        // Per-color targets: (A_j g, g) = lambda_i #R^-1(j) / e off the unit,
        // and k^2 - lambda_i (e - 1) on the unit (the variance identity).
        lvl.color_target.resize(lvl.scheme->colors);
        lvl.targets_integral = true;
        for (int j = 0; j < lvl.scheme->colors; ++j) {
            if (j == lvl.scheme->unit_color)
                lvl.color_target[j] = Rat(p.k * p.k) - lvl.params.lambda * Rat(e - 1);
            else
                lvl.color_target[j] = lvl.params.lambda * Rat(lvl.scheme->rel_size[j], e);
            if (!lvl.color_target[j].is_integer() || lvl.color_target[j].num < 0)
                lvl.targets_integral = false;
        }
        if (lvl.targets_integral) {
            lvl.color_target_int.resize(lvl.scheme->colors);
            for (int j = 0; j < lvl.scheme->colors; ++j)
                lvl.color_target_int[j] = lvl.color_target[j].num;
        }
        tower.push_back(std::move(lvl));
    }
    return tower;
}

namespace detail {

// Min achievable sum of squares for sum s spread over r slots (balanced).
inline long long min_sumsq(long long s, long long r) {
    if (r <= 0) return s == 0 ? 0 : (1LL << 60);
    long long q = s / r, rem = s % r;
    return (r - rem) * q * q + rem * (q + 1) * (q + 1);
}

// Max achievable sum of squares for sum s over r slots capped at b.
inline long long max_sumsq(long long s, long long r, long long b) {
    if (b <= 0) return 0;
    long long full = std::min(r, s / b);
    long long rest = s - full * b;
    if (full >= r && rest > 0) return -1;  // infeasible
    return full * b * b + (full < r ? rest * rest : 0);
}

// Can k be written as a sum of e values in [0, b] with sum of squares q?
inline bool sum_of_squares_feasible(long long e, long long k, long long b, long long q) {
    if (q < 0) return false;
    if (e <= 0) return k == 0 && q == 0;
    if (k > e * b) return false;
    if (min_sumsq(k, e) > q || max_sumsq(k, e, b) < q) return false;
    // DP over slots on achievable (sum, sumsq) pairs.
    const long long ks = k + 1, qs = q + 1;
    std::vector<char> cur(static_cast<size_t>(ks * qs), 0), nxt;
    cur[0] = 1;
    for (long long slot = 0; slot < e; ++slot) {
        nxt.assign(cur.size(), 0);
        for (long long s = 0; s < ks; ++s)
            for (long long t = 0; t < qs; ++t) {
                if (!cur[static_cast<size_t>(s * qs + t)]) continue;
                for (long long c = 0; c <= b && s + c < ks; ++c) {
                    long long t2 = t + c * c;
                    if (t2 >= qs) break;
                    nxt[static_cast<size_t>((s + c) * qs + t2)] = 1;
                }
            }
        cur.swap(nxt);
        if (cur[static_cast<size_t>(k * qs + q)] && slot == e - 1) break;
    }
    return cur[static_cast<size_t>(k * qs + q)] != 0;
}

}  // namespace detail

// Number-theoretic gate for a level: every color target must be a
// nonnegative integer, and the unit target must be realizable as a sum of
// squares of e bounded values summing to k.
inline bool integrality_prune(const TowerLevel& level) {
    if (level.scheme->v == 1) return true;
    if (!level.targets_integral) return false;
    return detail::sum_of_squares_feasible(level.scheme->v, level.params.k,
                                           level.value_bound,
                                           level.color_target_int[level.scheme->unit_color]);
}

// The single constant-mass function on the 1-point root scheme.
inline std::vector<MultiFunction> root_candidates(const Parameters& p) {
    MultiFunction g;
    g.values = {static_cast<int>(p.k)};
    return {g};
}

namespace detail {

struct BudgetState {
    std::atomic<long long>* nodes = nullptr;
    long long limit = 0;  // 0 = unlimited
    std::atomic<bool>* aborted = nullptr;

    bool charge(long long n) {
        if (!nodes) return true;
        if (aborted && aborted->load(std::memory_order_relaxed)) return false;
        long long total = nodes->fetch_add(n, std::memory_order_relaxed) + n;
        if (limit > 0 && total > limit) {
            if (aborted) aborted->store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }
};

// Depth-first lift enumeration for one parent candidate. Points are
// grouped by fiber of the morphism; fibers are ordered by parent value
// ascending so the tightest budgets are spent first. Per-color
// autocorrelation sums are maintained incrementally and pruned against
// their exact integer targets; the unit color carries the running sum of
// squares and is interval-pruned against what the remaining fibers can
// still contribute.
class LiftEnumerator {
public:
    LiftEnumerator(const QuotientMorphism& m, const MultiFunction& parent,
                   const TowerLevel& level, BudgetState budget)
        : rp_(*level.scheme), targets_(level.color_target_int),
          bound_(level.value_bound), budget_(budget) {
        const int e = rp_.v;
        // Fibers by parent value ascending, then by fiber index.
        const int coarse = m.target->v;
        std::vector<std::vector<int>> fiber_pts(coarse);
        for (int x = 0; x < e; ++x) fiber_pts[m.point_map[x]].push_back(x);
        std::vector<int> fiber_order(coarse);
        for (int f = 0; f < coarse; ++f) fiber_order[f] = f;
        std::stable_sort(fiber_order.begin(), fiber_order.end(), [&](int a, int b) {
            return parent.values[a] < parent.values[b];
        });
        for (int f : fiber_order) {
            const auto& pts = fiber_pts[f];
            for (size_t s = 0; s < pts.size(); ++s) {
                order_.push_back(pts[s]);
                slots_left_.push_back(static_cast<int>(pts.size() - 1 - s));
                fiber_sum_.push_back(parent.values[f]);
                fiber_start_.push_back(s == 0);
            }
        }
        // Static suffix bounds over whole untouched fibers.
        suffix_min_.assign(e + 1, 0);
        suffix_max_.assign(e + 1, 0);
        for (int t = e - 1; t >= 0; --t) {
            if (!fiber_start_[t]) continue;
            int len = 1;
            while (t + len < e && !fiber_start_[t + len]) ++len;
            long long s = fiber_sum_[t];
            long long mx = max_sumsq(s, len, bound_);
            suffix_min_[t] = suffix_min_[t + len] + min_sumsq(s, len);
            suffix_max_[t] = suffix_max_[t + len] + (mx < 0 ? 0 : mx);
            // Interior positions cover only the fibers after this one; the
            // current fiber's remainder is bounded dynamically in dfs.
            for (int u = 1; u < len; ++u) {
                suffix_min_[t + u] = suffix_min_[t + len];
                suffix_max_[t + u] = suffix_max_[t + len];
            }
        }
        values_.assign(e, 0);
        acc_.assign(rp_.colors, 0);
    }

    // Returns false iff the node budget ran out.
    bool run(std::vector<MultiFunction>& out) {
        out_ = &out;
        ok_ = true;
        dfs(0, fiber_sum_.empty() ? 0 : fiber_sum_[0]);
        return ok_;
    }

private:
    void dfs(int t, long long fiber_rem) {
        if (!ok_) return;
        if (t == rp_.v) {
            for (int j = 0; j < rp_.colors; ++j)
                if (acc_[j] != targets_[j]) return;
            out_->push_back(MultiFunction(values_));
            return;
        }
        if (fiber_start_[t]) fiber_rem = fiber_sum_[t];
        const int x = order_[t];
        const int slots_after = slots_left_[t];
        int cmin = 0, cmax = static_cast<int>(std::min<long long>(bound_, fiber_rem));
        if (slots_after == 0) {
            if (fiber_rem > bound_) return;
            cmin = cmax = static_cast<int>(fiber_rem);
        } else {
            // Remaining slots can absorb at most slots_after * bound.
            long long need = fiber_rem - static_cast<long long>(slots_after) * bound_;
            if (need > cmin) cmin = static_cast<int>(need);
            if (cmin > cmax) return;
        }
        if (!budget_.charge(cmax - cmin + 1)) {
            ok_ = false;
            return;
        }
        const long long unit_target = targets_[rp_.unit_color];
        const uint16_t* row = rp_.color_of.data() + static_cast<size_t>(x) * rp_.v;
        for (int c = cmin; c <= cmax; ++c) {
            bool feasible = true;
            // Apply: pair sums against every earlier point, plus c^2 on the unit.
            if (c > 0) {
                for (int u = 0; u < t; ++u) {
                    const int y = order_[u];
                    const long long gy = values_[y];
                    if (gy == 0) continue;
                    const int cxy = row[y];
                    const int cyx = rp_.color_of[static_cast<size_t>(y) * rp_.v + x];
                    acc_[cxy] += c * gy;
                    acc_[cyx] += c * gy;
                    if (acc_[cxy] > targets_[cxy] || acc_[cyx] > targets_[cyx])
                        feasible = false;
                }
                acc_[rp_.unit_color] += static_cast<long long>(c) * c;
                if (acc_[rp_.unit_color] > unit_target) feasible = false;
            }
            if (feasible) {
                // Interval prune on the remaining sum of squares.
                const long long rem = fiber_rem - c;
                long long mn = min_sumsq(rem, slots_after) + suffix_min_[t + 1];
                long long mx = max_sumsq(rem, slots_after, bound_);
                if (mx < 0)
                    feasible = false;
                else {
                    mx += suffix_max_[t + 1];
                    const long long have = acc_[rp_.unit_color];
                    if (have + mn > unit_target || have + mx < unit_target) feasible = false;
                }
            }
            if (feasible) {
                values_[x] = c;
                dfs(t + 1, fiber_rem - c);
                values_[x] = 0;
            }
            // Undo.
            if (c > 0) {
                for (int u = 0; u < t; ++u) {
                    const int y = order_[u];
                    const long long gy = values_[y];
                    if (gy == 0) continue;
                    acc_[row[y]] -= c * gy;
                    acc_[rp_.color_of[static_cast<size_t>(y) * rp_.v + x]] -= c * gy;
                }
                acc_[rp_.unit_color] -= static_cast<long long>(c) * c;
            }
            if (!ok_) return;
        }
    }

    const RelationPartition& rp_;
    const std::vector<long long>& targets_;
    int bound_;
    BudgetState budget_;
    std::vector<int> order_, slots_left_, fiber_sum_;
    std::vector<char> fiber_start_;
    std::vector<long long> suffix_min_, suffix_max_;
    std::vector<int> values_;
    std::vector<long long> acc_;
    std::vector<MultiFunction>* out_ = nullptr;
    bool ok_ = true;
};

}  // namespace detail

// All multi characteristic lifts g of h through m with values in
// [0, level.value_bound], f_* g = h, and inner distribution exactly at the
// level parameters. Output sorted lex; empty is a valid outcome.
inline std::vector<MultiFunction> enumerate_lifts(const QuotientMorphism& m,
                                                  const MultiFunction& h,
                                                  const TowerLevel& level) {
    if (!level.targets_integral) return {};
    detail::LiftEnumerator en(m, h, level, {});
    std::vector<MultiFunction> out;
    en.run(out);
    std::sort(out.begin(), out.end());
#ifndef NDEBUG
    for (const MultiFunction& g : out) {
        auto p = is_equidistributed(*level.scheme, g);
        assert(p && p->v == level.params.v && p->k == level.params.k &&
               p->lambda == level.params.lambda);
        assert(pushout(m, g) == h);
    }
#endif
    return out;
}

// Every k-subset D of G with flat difference table, by exhaustive scan.
// Test oracle grade: the combination count is capped.
inline std::vector<std::vector<int>> brute_force_difference_sets(const FiniteGroup& G,
                                                                 int k) {
    const int v = G.order;
    {
        long long comb = 1;
        for (int i = 0; i < k; ++i) {
            comb = comb * (v - i) / (i + 1);
            if (comb > 10'000'000)
                throw std::runtime_error("brute_force_difference_sets: combination cap exceeded");
        }
    }
    RelationPartition rp = thin_scheme(G);
    std::vector<std::vector<int>> out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    MultiFunction chi;
    while (true) {
        chi.values.assign(v, 0);
        for (int d : idx) chi.values[d] = 1;
        if (is_equidistributed(rp, chi)) out.push_back(idx);
        // next combination
        int i = k - 1;
        while (i >= 0 && idx[i] == v - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

namespace detail {

template <typename Fn>
inline void parallel_for(long long n, int workers, Fn&& fn) {
    if (workers <= 1 || n <= 1) {
        for (long long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    const int nw = std::min<long long>(workers, n);
    for (int w = 0; w < nw; ++w)
        pool.emplace_back([&]() {
            for (;;) {
                long long i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

}  // namespace detail

// The tower search: lift candidates level by level, optionally reducing to
// equivalence-class representatives between levels.
inline SearchReport run_tower_search(const FiniteGroup& G, const SubgroupChain& chain,
                                     const Parameters& p, const SearchConfig& cfg = {}) {
    std::vector<TowerLevel> tower = build_tower(G, chain, p);
    SearchReport report;
    report.reduced = cfg.reduce;
    std::atomic<long long> nodes{0};
    std::atomic<bool> aborted{false};
    detail::BudgetState budget;
    if (cfg.node_budget > 0) {
        budget.nodes = &nodes;
        budget.limit = cfg.node_budget;
        budget.aborted = &aborted;
    }

    std::vector<MultiFunction> cands = root_candidates(p);
    {
        LevelStats st;
        st.level = 0;
        st.points = 1;
        st.colors = 1;
        st.raw_count = st.reduced_count = 1;
        report.per_level.push_back(st);
        if (cfg.emit_candidates) report.representatives.push_back(cands);
    }

    for (size_t i = 1; i < tower.size(); ++i) {
        const TowerLevel& level = tower[i];
        const auto t0 = std::chrono::steady_clock::now();
        LevelStats st;
        st.level = static_cast<int>(i);
        st.points = level.scheme->v;
        st.colors = level.scheme->colors;

        std::vector<MultiFunction> raw;
        if (integrality_prune(level)) {
            const long long np = static_cast<long long>(cands.size());
            std::vector<std::vector<MultiFunction>> per_parent(np);
            detail::parallel_for(np, cfg.workers, [&](long long pi) {
                if (aborted.load(std::memory_order_relaxed)) return;
                detail::LiftEnumerator en(*level.from_previous, cands[pi], level, budget);
                en.run(per_parent[pi]);
            });
            for (auto& part : per_parent)
                raw.insert(raw.end(), std::make_move_iterator(part.begin()),
                           std::make_move_iterator(part.end()));
            std::sort(raw.begin(), raw.end());
            raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
        }
        if (aborted.load()) {
            report.status = SearchStatus::budget_exhausted;
            report.per_level.push_back(st);
            return report;
        }
        st.raw_count = static_cast<long long>(raw.size());

        if (cfg.reduce && !raw.empty()) {
            PointSymmetryGroup sym = point_symmetries(G, level.subgroup,
                                                      cfg.sym_closure_cap,
                                                      cfg.aut_node_budget);
            st.sym_order = static_cast<long long>(sym.point_perms.size());
            st.sym_translations_only = sym.translations_only;
            std::vector<MultiFunction> canon(raw.size());
            detail::parallel_for(static_cast<long long>(raw.size()), cfg.workers,
                                 [&](long long ci) { canon[ci] = canonical_form(raw[ci], sym); });
            std::sort(canon.begin(), canon.end());
            canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
            cands = std::move(canon);
        } else {
            cands = std::move(raw);
        }
        st.reduced_count = static_cast<long long>(cands.size());
        st.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        report.per_level.push_back(st);
        if (cfg.emit_candidates) report.representatives.push_back(cands);
        if (cands.empty()) break;
    }

    const TowerLevel& last = tower[report.per_level.size() - 1];
    report.final_level_trivial =
        report.per_level.size() == tower.size() && last.subgroup.order() == 1;
    if (report.final_level_trivial) {
        for (const MultiFunction& g : cands) {
            bool binary = true;
            for (int x : g.values)
                if (x > 1) { binary = false; break; }
            if (!binary) continue;
            std::vector<int> D;
            for (int x = 0; x < static_cast<int>(g.values.size()); ++x)
                if (g.values[x]) D.push_back(x);
            report.final_sets.push_back(std::move(D));
        }
    }
    return report;
}

}  // namespace diffset
