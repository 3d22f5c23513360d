#include <CLI11.hpp>

#include <iostream>

#include "goldman/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Convex projective pants: bounds, geodesics and sweeps"};
  app.require_subcommand(1, 1);
  goldman::CommandOptions opt;
  std::string out_path, word;

  for (const char* name : {"verify", "sweep", "entropy", "shortest", "decompose"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "JSON experiment config")->required();
    sub->add_option("--out", out_path, "write the result here instead of stdout");
    if (std::string(name) == "decompose")
      sub->add_option("--word", word, "word in A, B, e.g. \"A B^-1\"")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : goldman::kExitConfig;
  }
  opt.command = app.get_subcommands().front()->get_name();
  if (!out_path.empty()) opt.out_path = out_path;
  if (!word.empty()) opt.word = word;
  return goldman::run_command(opt, std::cout, std::cerr);
}
