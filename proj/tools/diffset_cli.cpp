// Command-line front end: run tower searches, verify candidate sets, dump
// Schurian schemes, and count automorphisms. Job specs are JSON documents;
// reports are JSON with stable keys (timing isolated under "timing").

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "diffset/presets.hpp"
#include "diffset/report.hpp"
#include "diffset/symmetry.hpp"

namespace {

using diffset::FiniteGroup;
using diffset::MultiFunction;
using diffset::Parameters;
using diffset::Rat;
using diffset::Subgroup;
using diffset::SubgroupChain;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitSpecError = 2;
constexpr int kExitResourceError = 3;

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SpecError("spec parse error in " + path + ": " + e.what());
    }
    return j;
}

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw SpecError(std::string("missing field: ") + name);
    return *it;
}

// Group spec: {"type": "builtin"|"cyclic"|"permutation_generators"|
//              "product"|"semidirect", ...}.
FiniteGroup build_group(const json& spec) {
    if (!spec.is_object()) throw SpecError("group spec must be an object");
    const std::string type = field(spec, "type").get<std::string>();
    if (type == "builtin") return diffset::builtin_group(field(spec, "name").get<std::string>());
    if (type == "cyclic") return diffset::cyclic_group(field(spec, "order").get<int>());
    if (type == "permutation_generators") {
        auto gens = field(spec, "generators").get<std::vector<std::vector<int>>>();
        std::string name = spec.value("name", std::string("perm-group"));
        return diffset::group_from_permutations(gens, name);
    }
    if (type == "product") {
        FiniteGroup a = build_group(field(spec, "left"));
        FiniteGroup b = build_group(field(spec, "right"));
        return diffset::direct_product(a, b);
    }
    if (type == "semidirect") {
        FiniteGroup n = build_group(field(spec, "normal"));
        FiniteGroup k = build_group(field(spec, "acting"));
        auto action = field(spec, "action").get<std::vector<std::vector<int>>>();
        return diffset::semidirect_product(n, k, action);
    }
    throw SpecError("unknown group spec type: " + type);
}

// A chain entry is a list of generators; each generator is either an element
// index or a permutation image array (for groups built from permutations).
std::vector<int> parse_generators(const FiniteGroup& g, const json& list) {
    if (!list.is_array()) throw SpecError("chain entry must be a list of generators");
    std::vector<int> out;
    for (const json& item : list) {
        if (item.is_number_integer()) {
            int x = item.get<int>();
            if (x < 0 || x >= g.order) throw SpecError("generator index out of range");
            out.push_back(x);
        } else if (item.is_array()) {
            auto word = item.get<diffset::Perm>();
            auto idx = g.index_of_perm(word);
            if (!idx) throw SpecError("permutation word is not an element of the group");
            out.push_back(*idx);
        } else {
            throw SpecError("generator must be an index or a permutation image array");
        }
    }
    return out;
}

Parameters parse_params(const json& j) {
    Parameters p;
    p.v = field(j, "v").get<long long>();
    p.k = field(j, "k").get<long long>();
    const json& lam = field(j, "lambda");
    if (lam.is_number_integer()) {
        p.lambda = Rat(lam.get<long long>());
    } else if (lam.is_array() && lam.size() == 2) {
        p.lambda = Rat(lam[0].get<long long>(), lam[1].get<long long>());
    } else {
        throw SpecError("lambda must be an integer or a [num, den] pair");
    }
    return p;
}

diffset::SearchConfig parse_config(const json& spec) {
    diffset::SearchConfig cfg;
    if (auto it = spec.find("config"); it != spec.end()) {
        const json& c = *it;
        cfg.reduce = c.value("reduce", cfg.reduce);
        cfg.workers = c.value("workers", cfg.workers);
        cfg.node_budget = c.value("nodeBudget", cfg.node_budget);
        cfg.emit_candidates = c.value("emitCandidates", cfg.emit_candidates);
    }
    return cfg;
}

void write_out(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw SpecError("cannot open output file: " + out_path);
        out << doc.dump(2) << "\n";
    }
}

bool feasible_parameters(const Parameters& p) {
    return Rat(p.k * (p.k - 1)) == p.lambda * Rat(p.v - 1);
}

json run_one_search(const FiniteGroup& g, const SubgroupChain& chain, const Parameters& p,
                    const diffset::SearchConfig& cfg, bool include_timing) {
    diffset::SearchReport rep = diffset::run_tower_search(g, chain, p, cfg);
    json doc = diffset::report_to_json(rep, g.name, g.order, p, chain, include_timing);
    if (cfg.emit_candidates) {
        json reps = json::array();
        for (const auto& lvl : rep.representatives) {
            json lv = json::array();
            for (const MultiFunction& f : lvl) lv.push_back(f.values);
            reps.push_back(std::move(lv));
        }
        doc["representatives"] = std::move(reps);
    }
    return doc;
}

int cmd_search(const std::string& spec_path, const std::string& preset, bool no_reduction,
               int workers, bool emit_candidates, long long node_budget,
               const std::string& out_path, bool no_timing) {
    diffset::SearchConfig cfg;
    cfg.reduce = !no_reduction;
    if (workers > 0) cfg.workers = workers;
    cfg.emit_candidates = emit_candidates;
    cfg.node_budget = node_budget;

    if (!preset.empty()) {
        if (preset != "paper-120") throw SpecError("unknown preset: " + preset);
        const Parameters p = diffset::parameters_120_35_10();
        json doc;
        doc["preset"] = preset;
        json groups = json::array();
        bool budget_hit = false;
        std::cout << "group     per-level reduced counts      verdict\n";
        for (const std::string& name : diffset::order120_group_names()) {
            FiniteGroup g = diffset::builtin_group(name);
            SubgroupChain chain = diffset::preset_chain(g);
            json r = run_one_search(g, chain, p, cfg, !no_timing);
            std::string counts;
            for (const json& lvl : r["perLevel"])
                counts += (counts.empty() ? "" : ",") +
                          std::to_string(lvl["reducedCount"].get<long long>());
            std::string verdict = r["verdict"].get<std::string>();
            if (verdict == "budget-exhausted") budget_hit = true;
            printf("%-8s  %-28s  %s\n", name.c_str(), counts.c_str(), verdict.c_str());
            groups.push_back(std::move(r));
        }
        doc["groups"] = std::move(groups);
        if (!out_path.empty()) write_out(doc, out_path);
        return budget_hit ? kExitResourceError : kExitOk;
    }

    if (spec_path.empty()) throw SpecError("search needs --spec <file> or --preset");
    json spec = load_json(spec_path);
    FiniteGroup g = build_group(field(spec, "group"));
    Parameters p = parse_params(field(spec, "params"));
    if (p.v != g.order)
        throw SpecError("params.v = " + std::to_string(p.v) + " but the group has order " +
                        std::to_string(g.order));
    diffset::SearchConfig file_cfg = parse_config(spec);
    if (no_reduction) file_cfg.reduce = false;
    if (workers > 0) file_cfg.workers = workers;
    if (emit_candidates) file_cfg.emit_candidates = true;
    if (node_budget > 0) file_cfg.node_budget = node_budget;

    std::vector<std::vector<int>> gen_lists;
    for (const json& entry : field(spec, "chain")) gen_lists.push_back(parse_generators(g, entry));
    SubgroupChain chain = diffset::make_chain(g, gen_lists);

    if (!feasible_parameters(p)) {
        json doc;
        doc["group"] = {{"name", g.name}, {"order", g.order}};
        doc["parameters"] = {{"v", p.v}, {"k", p.k}, {"lambda", p.lambda.str()}};
        doc["verdict"] = "parameter-infeasible";
        doc["perLevel"] = json::array();
        doc["finalSets"] = json::array();
        write_out(doc, out_path);
        return kExitOk;
    }
    json doc = run_one_search(g, chain, p, file_cfg, !no_timing);
    write_out(doc, out_path);
    return doc["status"] == "budget-exhausted" ? kExitResourceError : kExitOk;
}

int cmd_check(const std::string& spec_path, const std::string& out_path) {
    json spec = load_json(spec_path);
    FiniteGroup g = build_group(field(spec, "group"));
    auto set = field(spec, "set").get<std::vector<int>>();
    for (int d : set)
        if (d < 0 || d >= g.order) throw SpecError("set element out of range");

    MultiFunction chi;
    chi.values.assign(g.order, 0);
    for (int d : set) chi.values[d] = 1;
    diffset::RelationPartition thin = diffset::thin_scheme(g);
    diffset::InnerDistribution dist = diffset::inner_distribution(thin, chi);
    auto eq = diffset::is_equidistributed(thin, chi);

    json doc;
    doc["group"] = {{"name", g.name}, {"order", g.order}};
    doc["setSize"] = set.size();
    json lam = json::array();
    for (const Rat& r : dist.per_color) lam.push_back(r.str());
    doc["innerDistribution"] = std::move(lam);
    doc["isDifferenceSet"] = eq.has_value();
    if (eq) {
        doc["parameters"] = {{"v", eq->v}, {"k", eq->k}, {"lambda", eq->lambda.str()}};
        doc["trivial"] = (eq->k == 0 || eq->k == eq->v);
        if (auto it = spec.find("params"); it != spec.end()) {
            Parameters want = parse_params(*it);
            doc["matchesRequestedParameters"] = (*eq == want);
        }
    } else {
        // Off-unit values that break flatness, for diagnosis.
        json bad = json::array();
        for (int i = 0; i < thin.colors; ++i)
            if (i != thin.unit_color) bad.push_back(dist.per_color[i].str());
        doc["offUnitValues"] = std::move(bad);
    }
    write_out(doc, out_path);
    return kExitOk;
}

int cmd_scheme(const std::string& spec_path, const std::string& out_path) {
    json spec = load_json(spec_path);
    FiniteGroup g = build_group(field(spec, "group"));
    Subgroup h = diffset::subgroup_from_generators(g, parse_generators(g, field(spec, "subgroup")));
    diffset::RelationPartition rp = diffset::schurian_scheme(g, h);

    json doc;
    doc["group"] = {{"name", g.name}, {"order", g.order}};
    doc["subgroupOrder"] = h.order();
    doc["points"] = rp.v;
    doc["colors"] = rp.colors;
    doc["unitColor"] = rp.unit_color;
    doc["relSize"] = rp.rel_size;
    doc["valency"] = rp.valency;
    if (h.order() == 1) doc["kind"] = "thin";
    else if (h.order() == g.order) doc["kind"] = "one-point";
    else doc["kind"] = "schurian";
    json table = json::array();
    for (int x = 0; x < rp.v; ++x) {
        json row = json::array();
        for (int y = 0; y < rp.v; ++y) row.push_back(rp.color_of[(size_t)x * rp.v + y]);
        table.push_back(std::move(row));
    }
    doc["colorOf"] = std::move(table);
    write_out(doc, out_path);
    return kExitOk;
}

int cmd_auts(const std::string& spec_path, const std::string& out_path) {
    json spec = load_json(spec_path);
    FiniteGroup g = build_group(field(spec, "group"));
    json doc;
    doc["group"] = {{"name", g.name}, {"order", g.order}};
    try {
        auto auts = diffset::automorphisms(g);
        doc["autOrder"] = auts.size();
        if (auto it = spec.find("subgroup"); it != spec.end()) {
            Subgroup h = diffset::subgroup_from_generators(g, parse_generators(g, *it));
            auto fixing = diffset::automorphisms_fixing(g, h);
            diffset::PointSymmetryGroup sym = diffset::point_symmetries(g, h);
            doc["subgroupOrder"] = h.order();
            doc["autFixingOrder"] = fixing.size();
            doc["pointSymmetryOrder"] = sym.point_perms.size();
        }
    } catch (const diffset::AutomorphismBudgetExceeded&) {
        doc["autOrder"] = nullptr;
        doc["note"] = "automorphism budget exhausted; translations only";
    }
    write_out(doc, out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Difference-set search over subgroup-chain quotient towers"};
    app.require_subcommand(1);

    std::string spec_path, out_path, preset;
    bool no_reduction = false, emit_candidates = false, no_timing = false;
    int workers = 0;
    long long node_budget = 0;

    CLI::App* search = app.add_subcommand("search", "Run the tower search for a job spec");
    search->add_option("--spec", spec_path, "JSON job spec file");
    search->add_option("--preset", preset, "Built-in job set (paper-120)");
    search->add_flag("--no-reduction", no_reduction, "Skip equivalence reduction");
    search->add_option("--workers", workers, "Worker thread count");
    search->add_flag("--emit-candidates", emit_candidates, "Include per-level representatives");
    search->add_option("--node-budget", node_budget, "Abort after this many search nodes");
    search->add_option("--out", out_path, "Write the report to a file");
    search->add_flag("--no-timing", no_timing, "Drop timing fields for deterministic diffing");

    CLI::App* check = app.add_subcommand("check", "Verify a candidate difference set");
    check->add_option("--spec", spec_path, "JSON file with group, set, optional params")
        ->required();
    check->add_option("--out", out_path, "Write the report to a file");

    CLI::App* scheme = app.add_subcommand("scheme", "Dump the coset scheme of a subgroup");
    scheme->add_option("--spec", spec_path, "JSON file with group and subgroup generators")
        ->required();
    scheme->add_option("--out", out_path, "Write the dump to a file");

    CLI::App* auts = app.add_subcommand("auts", "Count automorphisms and point symmetries");
    auts->add_option("--spec", spec_path, "JSON file with group and optional subgroup")
        ->required();
    auts->add_option("--out", out_path, "Write the counts to a file");

    CLI11_PARSE(app, argc, argv);
    try {
        if (search->parsed())
            return cmd_search(spec_path, preset, no_reduction, workers, emit_candidates,
                              node_budget, out_path, no_timing);
        if (check->parsed()) return cmd_check(spec_path, out_path);
        if (scheme->parsed()) return cmd_scheme(spec_path, out_path);
        if (auts->parsed()) return cmd_auts(spec_path, out_path);
    } catch (const SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kExitSpecError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kExitSpecError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResourceError;
    }
    return kExitOk;
}
