#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diffset/presets.hpp"
#include "diffset/report.hpp"

using namespace diffset;

TEST_CASE("target parameters satisfy the counting gate") {
    Parameters p = parameters_120_35_10();
    CHECK(p.v == 120);
    CHECK(p.k == 35);
    CHECK(Rat(p.k * (p.k - 1)) == p.lambda * Rat(p.v - 1));
}

TEST_CASE("every builtin order-120 group has a valid chain") {
    for (const std::string& name : order120_group_names()) {
        FiniteGroup g = builtin_group(name);
        SubgroupChain chain = preset_chain(g);
        REQUIRE(chain.subgroups.size() == 6);
        const int expected[] = {120, 24, 8, 4, 2, 1};
        for (size_t i = 0; i < chain.subgroups.size(); ++i) {
            CHECK(chain.subgroups[i].order() == expected[i]);
            if (i > 0) CHECK(subgroup_leq(chain.subgroups[i], chain.subgroups[i - 1]));
        }
        // The tower construction validates all quotient morphisms.
        CHECK_NOTHROW(build_tower(g, chain, parameters_120_35_10()));
    }
}

TEST_CASE("chain quotients have the expected point counts") {
    FiniteGroup g = builtin_group("G3");
    std::vector<TowerLevel> tower = build_tower(g, preset_chain(g), parameters_120_35_10());
    const int points[] = {1, 5, 15, 30, 60, 120};
    const long long lambdas[] = {0, 240, 80, 40, 20, 10};
    for (size_t i = 0; i < tower.size(); ++i) {
        CHECK(tower[i].scheme->v == points[i]);
        if (i > 0) CHECK(tower[i].params.lambda == Rat(lambdas[i]));
    }
}

TEST_CASE("report JSON carries the stable keys and isolates timing") {
    FiniteGroup g = cyclic_group(7);
    SubgroupChain chain = make_chain(g, {{}});
    Parameters p{7, 3, Rat(1)};
    SearchConfig cfg;
    cfg.emit_candidates = true;
    SearchReport rep = run_tower_search(g, chain, p, cfg);
    nlohmann::json with_t = report_to_json(rep, g.name, g.order, p, chain, true);
    nlohmann::json no_t = report_to_json(rep, g.name, g.order, p, chain, false);
    for (const char* key :
         {"group", "parameters", "chain", "perLevel", "finalSets", "verdict", "reductionMode",
          "status"})
        CHECK(with_t.contains(key));
    CHECK(with_t.contains("timing"));
    CHECK_FALSE(no_t.contains("timing"));
    for (const auto& lvl : no_t["perLevel"]) CHECK_FALSE(lvl.contains("elapsedMs"));
    CHECK(no_t["verdict"] == "exists");
    CHECK(no_t["group"]["name"] == "C7");
}

TEST_CASE("verdict logic") {
    SearchReport rep;
    rep.status = SearchStatus::budget_exhausted;
    CHECK(search_verdict(rep) == "budget-exhausted");
    rep.status = SearchStatus::completed;
    LevelStats st;
    st.reduced_count = 3;
    rep.per_level = {st};
    CHECK(search_verdict(rep) == "undetermined");  // chain did not reach {id}
    rep.final_level_trivial = true;
    CHECK(search_verdict(rep) == "nonexistent");  // no surviving 0/1 set
    rep.final_sets.push_back({0, 1, 2});
    CHECK(search_verdict(rep) == "exists");
    st.reduced_count = 0;
    rep.per_level = {st};
    rep.final_sets.clear();
    rep.final_level_trivial = false;
    CHECK(search_verdict(rep) == "nonexistent");  // empty level kills all lifts
}
