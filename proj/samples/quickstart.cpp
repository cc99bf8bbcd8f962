// Solve a small additive instance and a builtin counterexample.
#include <iostream>

#include "chorefair.hpp"

using namespace chorefair;

int main() {
  const Instance inst(4,
                      {CostFunction::additive({1, 0, 1, 1}), CostFunction::additive({1, 1, 0, 1}),
                       CostFunction::additive({0, 1, 1, 1})},
                      FunctionClass::additive);
  const SolveReport r = solve_additive(inst);
  std::cout << "additive: " << to_json(r.allocation).dump() << "  " << to_string(r.guarantee)
            << "  social cost " << social_cost(inst, r.allocation) << '\n';

  const Instance cap5 = builtin("cancelable-cap5-n2");
  const SolveReport c = solve_cancelable(cap5);
  const ParetoResult po = is_po_bruteforce(cap5, c.allocation);
  std::cout << "cap-5: " << to_json(c.allocation).dump() << "  " << to_string(c.guarantee)
            << (po ? "  PO" : "  not PO, dominated by " + to_json(*po.dominating).dump()) << '\n';

  const EnumerationReport e = analyze(builtin("ternary-no-efxpo"));
  std::cout << "ternary: " << e.frontier_count << " PO allocations, EFX and PO exists: "
            << (e.efx_and_po_exists ? "yes" : "no") << '\n';
}
