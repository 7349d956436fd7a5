#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "examples_cmd.hpp"
#include "qmd/serialization.hpp"
#include "qmd/types.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "qmd - multiplicative domains of quantum channels, operator algebra "
      "decomposition, and subsystem code verification"};
  app.require_subcommand(1);
  app.fallthrough();

  qmdcli::Options opts;
  app.add_option("--tol", opts.tol, "numeric tolerance (default 1e-9)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opts.seed,
                 "seed for the randomized structure-recovery steps");
  app.add_flag("--json", opts.json, "machine-readable output");

  std::string channel_path, rep_path, algebra_path, code_path;
  std::string method = "definition";
  std::string example_name;

  auto* info = app.add_subcommand("info", "channel flags, residuals, Choi rank");
  info->add_option("channel", channel_path, "channel JSON file")->required();

  auto* md = app.add_subcommand("md", "standard multiplicative domain");
  md->add_option("channel", channel_path, "channel JSON file")->required();

  auto* mdpi = app.add_subcommand(
      "mdpi", "generalized multiplicative domain for a representation");
  mdpi->add_option("channel", channel_path, "channel JSON file")->required();
  mdpi->add_option("representation", rep_path, "representation JSON file")
      ->required();
  mdpi->add_option("--method", method, "definition|kraus|unit|all");

  auto* bimodule =
      app.add_subcommand("bimodule", "is the algebra a channel bimodule?");
  bimodule->add_option("channel", channel_path, "channel JSON file")->required();
  bimodule->add_option("algebra", algebra_path, "algebra JSON file")->required();

  auto* qec = app.add_subcommand(
      "qec", "run the correctability condition suite on a code");
  qec->add_option("channel", channel_path, "channel JSON file")->required();
  qec->add_option("code", code_path, "code JSON file")->required();

  auto* examples =
      app.add_subcommand("examples", "replay the bundled worked examples");
  auto* examples_run = examples->add_subcommand("run", "run one or all");
  examples_run->add_option("name", example_name, "2.1|3.2|3.5|4.2|all")
      ->required();
  examples->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qmdcli::kExitInputError;
  }

  try {
    if (*info) return qmdcli::cmd_info(channel_path, opts);
    if (*md) return qmdcli::cmd_md(channel_path, opts);
    if (*mdpi) return qmdcli::cmd_mdpi(channel_path, rep_path, method, opts);
    if (*bimodule) return qmdcli::cmd_bimodule(channel_path, algebra_path, opts);
    if (*qec) return qmdcli::cmd_qec(channel_path, code_path, opts);
    if (*examples_run) return qmdcli::cmd_examples(example_name, opts);
  } catch (const qmd::RefusalError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return qmdcli::kExitRefused;
  } catch (const qmd::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return qmdcli::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qmdcli::kExitInputError;
  }
  return qmdcli::kExitInputError;
}
