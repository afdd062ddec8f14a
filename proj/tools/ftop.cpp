#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ftop/cli.hpp"

int main(int argc, char** argv) {
  ftop::cli::Invocation inv;
  CLI::App app{"Finite fuzzy topological systems and the Dialectica category Dial_I(Set)"};
  app.add_option("command", inv.command,
                 "validate | topsys-check | compose | tensor | hom | product | coproduct | extent | "
                 "topology-check | top-product | top-sum | embed | laws | iso | demo-bitstream")
      ->required();
  app.add_option("args", inv.args, "Command arguments: names, file paths or expressions such as coproduct(A,B)");
  std::string input, out;
  app.add_option("-i,--input", input, "Workspace document")->check(CLI::ExistingFile);
  app.add_option("--out", out, "Write the constructed value or law report here");
  app.add_option("--seed", inv.budget.seed, "Random seed for laws");
  app.add_option("--max-points", inv.budget.max_points, "Largest point set in random instances");
  app.add_option("--max-opens", inv.budget.max_opens, "Largest open set in random instances");
  app.add_option("--max-denominator", inv.budget.max_degree_denominator, "Largest degree denominator");
  app.add_option("--instances", inv.budget.instances, "Number of random instances");
  app.add_option("--bound-tensor", inv.tensor_bound, "Largest |X|*|Y| for which a frame tensor is enumerated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ftop::cli::UsageError;
  }
  if (!input.empty()) inv.input = input;
  if (!out.empty()) inv.out = out;
  return ftop::cli::run(inv, std::cout, std::cerr);
}
