// Builds the crisp and a fuzzy Sierpinski system, prints their extents,
// checks a continuous map in both directions and forms their sum.

#include <iostream>

#include "ftop/topsys.hpp"
#include "ftop/workspace.hpp"

int main() {
  using namespace ftop;
  const auto frame = chain_frame({"bot", "a", "top"});
  const auto crisp = embed_crisp({"p", "q"}, frame, {{"p", "a"}, {"p", "top"}, {"q", "top"}});

  FuzzyRelation alpha = crisp.alpha;
  alpha.set(1, frame.index_of("a"), Degree::parse("0.3"));
  const auto fuzzy = validate_system({"p", "q"}, frame, alpha);

  for (const auto* s : {&crisp, &fuzzy}) {
    for (Element x = 0; x < frame.size(); ++x) {
      std::cout << "extent(" << frame.name(x) << ") =";
      for (auto d : extent(*s, x).membership) std::cout << ' ' << d;
      std::cout << '\n';
    }
    std::cout << "topology: " << (extents_form_topology(*s).pass ? "yes" : "no") << "\n\n";
  }

  verify_continuous(crisp, fuzzy, {0, 1}, {0, 1, 2});
  std::cout << "crisp -> fuzzy: continuous\n";
  try {
    verify_continuous(fuzzy, crisp, {0, 1}, {0, 1, 2});
  } catch (const Error& e) {
    std::cout << "fuzzy -> crisp: " << to_string(e.kind()) << ' ' << e.witness() << '\n';
  }

  const auto sum = top_sum(crisp, fuzzy);
  std::cout << "\nsum equals coproduct: " << (sum.system.dial() == coproduct_obj(crisp.dial(), fuzzy.dial()) ? "yes" : "no")
            << "\n\n";
  Workspace ws;
  add_system(ws, "sum", sum.system);
  std::cout << emit_workspace(ws);
}
