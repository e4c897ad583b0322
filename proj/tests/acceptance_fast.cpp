// Fast acceptance suite: one line per criterion. The heavyweight order-120
// reproductions for S5 and G7 live in the extended binary.

#include "acceptance_common.hpp"

int main() {
    using namespace acceptance;
    Harness h;

    h.run("criterion 1 (classical definition vs difference-table oracle, order <= 12)",
          classical_equivalence);
    h.run("criterion 2 (tower equals brute force on C7, C11, C13)",
          tower_oracle_equivalence);
    h.run("criterion 3 (pushout theorem for all difference sets, order <= 16)",
          pushout_theorem);
    h.run("criterion 4 (variance theorem on 10^4 random functions)", variance_theorem);
    h.run("criterion 5 (fiber-sum identity on S4 quotient pairs)", fiber_sum_identity);
    h.run("criterion 6 (level-1 class counts for the six order-120 groups)",
          level1_class_counts);
    h.run("criterion 7 (level-2 raw 45 reduced to 2 for G1 and G3)",
          level2_reduction_datum);
    h.run("criterion 8 fast (nonexistence for G1, G3, C2xA5, SL25)", [] {
        return headline_reproduction({{"G1", {1, 2, 2, 0}},
                                      {"G3", {1, 2, 2, 0}},
                                      {"C2xA5", {1, 3, 116, 0}},
                                      {"SL25", {1, 3, 116, 0}}});
    });
    h.run("criterion 9 (byte-identical reports across 1, 4, 8 workers)", [] {
        return worker_determinism({"G1", "G3", "SL25"});
    });

    return h.exit_code();
}
