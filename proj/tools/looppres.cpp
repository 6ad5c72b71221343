#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "looppres/cli.hpp"

int main(int argc, char** argv) {
  using namespace looppres;
  CLI::App app{"Minimal presentations and sphere decompositions for loop spaces of moment-angle complexes"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  std::string ring = "Z", grading = "multi";

  const std::pair<const char*, const char*> commands[] = {
      {"analyze", "flagness, f/h-vectors and per-subset homology"},
      {"presentation", "GPTW generators and relations"},
      {"homotopy", "sphere multiplicities and rational homotopy ranks"},
      {"verify", "check the presentation against k[K]!"},
      {"hilbert", "dimensions of k[K]! against the Poincare series"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", cfg.input, "complex as JSON {\"m\": int, \"facets\": [[...]]}")->required();
    sub->add_option("--ring", ring, "coefficient ring: Z, Q or F<p>")->capture_default_str();
    sub->add_option("--grading", grading, "relation grading")->check(CLI::IsMember({"multi", "z"}))->capture_default_str();
    sub->add_option("--trunc", cfg.trunc, "series truncation degree")->check(CLI::PositiveNumber);
    sub->add_flag("--json", cfg.json, "emit JSON");
    sub->add_flag("--skeleton-clique", cfg.skeleton_clique, "replace K by the clique complex of its 1-skeleton");
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    cfg.ring = CoefficientRing::parse(ring);
  } catch (const Error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return cli::kParseError;
  }
  cfg.grading = grading == "z" ? Grading::ZGraded : Grading::Multigraded;
  return cli::run(app.get_subcommands().front()->get_name(), cfg, std::cout, std::cerr);
}
