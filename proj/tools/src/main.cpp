#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "frobcount/cli/run.hpp"
#include "frobcount/error.hpp"

namespace {

using frobcount::cli::Format;
using frobcount::cli::RunConfig;
using frobcount::cli::Subcommand;

void add_input(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--input,-i", cfg.input, "System file (.dsys)");
  sub->add_option("--preset", cfg.preset, "Bundled preset instead of a file");
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out,-o", cfg.out, "Write the artifact here instead of stdout");
  sub->add_option("--budget", cfg.budget, "Largest tuple count p^(t*n) to enumerate")->capture_default_str();
  sub->add_option("--shards", cfg.shards, "Contiguous shards over the first coordinate")->capture_default_str();
  sub->add_option("--threads", cfg.threads, "Worker threads, 0 = hardware")->capture_default_str();
  sub->add_option("--seed", cfg.seed, "Field modulus seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point counts and bound checks for difference equations over finite difference fields"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::string> field_texts;
  std::string format = "csv";
  bool no_timing = false;
  const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};

  auto* count = app.add_subcommand("count", "Count solutions and evaluate bound verdicts");
  auto* sweep = app.add_subcommand("sweep", "Coarse-dimension sweep over the file's schedule");
  auto* reduce = app.add_subcommand("reduce", "Print the Frobenius reduction of each polynomial");
  auto* twist = app.add_subcommand("twist", "Print the twisting reduction of each polynomial");
  auto* bounds = app.add_subcommand("bounds", "Count and print a verdict table");
  auto* examples = app.add_subcommand("examples", "Run the bundled preset checks");

  for (auto* sub : {count, sweep, reduce, twist, bounds}) {
    add_input(sub, cfg);
    add_common(sub, cfg);
  }
  for (auto* sub : {count, reduce, twist, bounds}) {
    sub->add_option("--field", field_texts, "Override the field: p,t,m (repeatable)");
  }
  for (auto* sub : {count, sweep, bounds}) {
    sub->add_option("--format", format, "Artifact format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--no-timing", no_timing, "Write elapsed_ms as 0");
  }
  for (auto* sub : {count, bounds}) {
    sub->add_option("--c", cfg.c_values, "Theorem B exponent c (repeatable; default: from the degree bound)");
    sub->add_option("--witnesses", cfg.witnesses, "Smooth witness cap")->capture_default_str();
  }
  sweep->add_option("--tolerance", cfg.tolerance, "Tail match tolerance")->capture_default_str();
  reduce->add_option("--q", cfg.q, "Frobenius exponent q (default: the field's)");
  examples->add_option("name", cfg.preset, "Preset to check (default: all)");
  add_common(examples, cfg);

  try {
    app.parse(argc, argv);
    for (const auto& text : field_texts) cfg.fields.push_back(frobcount::cli::parse_field_spec(text));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : frobcount::cli::exit_code::kUsage;
  } catch (const frobcount::Error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return frobcount::cli::exit_code::kUsage;
  }

  cfg.format = formats.at(format);
  cfg.timing = !no_timing;
  if (count->parsed()) cfg.subcommand = Subcommand::Count;
  if (sweep->parsed()) cfg.subcommand = Subcommand::Sweep;
  if (reduce->parsed()) cfg.subcommand = Subcommand::Reduce;
  if (twist->parsed()) cfg.subcommand = Subcommand::Twist;
  if (bounds->parsed()) cfg.subcommand = Subcommand::Bounds;
  if (examples->parsed()) cfg.subcommand = Subcommand::Examples;
  return frobcount::cli::run(cfg, std::cout, std::cerr);
}
