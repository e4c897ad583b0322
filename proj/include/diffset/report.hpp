#pragma once

#include <string>

#include <json.hpp>

#include "diffset/search.hpp"

namespace diffset {

inline std::string search_verdict(const SearchReport& r) {
    if (r.status == SearchStatus::budget_exhausted) return "budget-exhausted";
    for (const LevelStats& st : r.per_level)
        if (st.reduced_count == 0) return "nonexistent";
    if (r.final_level_trivial)
        return r.final_sets.empty() ? "nonexistent" : "exists";
    return "undetermined";
}

// Structured report document. Timing fields live under "timing" and inside
// perLevel as elapsedMs; with include_timing = false both are dropped, so
// two reports from the same job compare byte-identical.
inline nlohmann::json report_to_json(const SearchReport& r, const std::string& group_name,
                                     int group_order, const Parameters& p,
                                     const SubgroupChain& chain,
                                     bool include_timing = true) {
    nlohmann::json j;
    j["group"] = {{"name", group_name}, {"order", group_order}};
    j["parameters"] = {{"v", p.v}, {"k", p.k}, {"lambda", p.lambda.str()}};
    {
        std::vector<int> orders;
        for (const Subgroup& h : chain.subgroups) orders.push_back(h.order());
        j["chain"] = {{"subgroupOrders", orders}};
    }
    nlohmann::json levels = nlohmann::json::array();
    double total_ms = 0;
    for (const LevelStats& st : r.per_level) {
        nlohmann::json lj = {{"level", st.level},
                             {"points", st.points},
                             {"colors", st.colors},
                             {"rawCount", st.raw_count},
                             {"reducedCount", st.reduced_count}};
        if (r.reduced && st.level > 0) {
            lj["symmetryOrder"] = st.sym_order;
            if (st.sym_translations_only) lj["symmetryTranslationsOnly"] = true;
        }
        if (include_timing) lj["elapsedMs"] = st.elapsed_ms;
        total_ms += st.elapsed_ms;
        levels.push_back(std::move(lj));
    }
    j["perLevel"] = std::move(levels);
    j["finalSets"] = r.final_sets;
    j["verdict"] = search_verdict(r);
    j["reductionMode"] = r.reduced ? "equivalence" : "none";
    j["status"] =
        r.status == SearchStatus::completed ? "completed" : "budget-exhausted";
    if (r.reduced)
        j["reductionNote"] =
            "intermediate reduced counts are relative to the chain and the symmetry "
            "groups listed per level; a zero candidate count at any level rules out "
            "difference sets with these parameters";
    if (include_timing) j["timing"] = {{"totalMs", total_ms}};
    return j;
}

}  // namespace diffset
