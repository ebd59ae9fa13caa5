// svc-miner: rank cross-lingual support verb construction candidates in a
// dependency-parsed, word-aligned bitext.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "svcminer/fixture.hpp"
#include "svcminer/pipeline.hpp"

namespace {

using namespace svcminer;

struct CliOptions {
  PipelineConfig config;
  std::string config_file;
  std::string labels1 = "obj,dobj";
  std::string labels2 = "obj,dobj";
  std::string x = "local-mi";
  std::string y = "oe";
  bool strict = false;
};

void add_input_options(CLI::App& cmd, CliOptions& o) {
  auto& c = o.config;
  cmd.add_option("--config", o.config_file, "key=value file; command-line flags take precedence");
  cmd.add_option("--l1", c.l1, "L1 language code")->capture_default_str();
  cmd.add_option("--l2", c.l2, "L2 language code")->capture_default_str();
  cmd.add_option("--conllu1", c.conllu1, "L1 CoNLL-U file")->required();
  cmd.add_option("--conllu2", c.conllu2, "L2 CoNLL-U file")->required();
  cmd.add_option("--align", c.align, "Pharaoh alignment file (0-based i-j)")->required();
  cmd.add_option("--labels1", o.labels1, "L1 direct-object labels")->capture_default_str();
  cmd.add_option("--labels2", o.labels2, "L2 direct-object labels")->capture_default_str();
  cmd.add_flag("--strict", o.strict, "abort on the first format error");
  cmd.add_option("--jobs", c.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

std::set<std::string> split_labels(const std::string& list) {
  std::set<std::string> out;
  for (const auto& label : CLI::detail::split(list, ',')) {
    auto trimmed = CLI::detail::trim_copy(label);
    if (!trimmed.empty()) out.insert(trimmed);
  }
  return out;
}

void finish_options(CliOptions& o) {
  auto& c = o.config;
  c.extraction.l1_object_labels = split_labels(o.labels1);
  c.extraction.l2_object_labels = split_labels(o.labels2);
  c.mode = o.strict ? ParseMode::kStrict : ParseMode::kLenient;
  auto x = parse_measure(o.x);
  auto y = parse_measure(o.y);
  if (!x) throw CLI::ValidationError("--x", "unknown measure '" + o.x + "'");
  if (!y) throw CLI::ValidationError("--y", "unknown measure '" + o.y + "'");
  c.ranking.x = *x;
  c.ranking.y = *y;
}

int run_command(CliOptions& o) {
  try {
    finish_options(o);
    run_pipeline(o.config, std::cerr);
    return exit_code::kSuccess;
  } catch (const PipelineError& e) {
    fmt::print(std::cerr, "svc-miner: {}\n", e.what());
    return e.exit_code();
  }
}

int stats_command(CliOptions& o) {
  try {
    finish_options(o);
    o.config.validate();
    LoadedCorpus loaded = load_corpus(o.config);
    for (const auto& d : loaded.diagnostics) {
      fmt::print(std::cerr, "[ingest] warning: {}\n", d.to_string());
    }
    if (loaded.corpus.pairs.empty()) fmt::print(std::cerr, "[stats] warning: corpus is empty\n");
    write_stats(std::cout, stage_stats(loaded.corpus, o.config.extraction, o.config.jobs));
    return exit_code::kSuccess;
  } catch (const PipelineError& e) {
    fmt::print(std::cerr, "svc-miner: {}\n", e.what());
    return e.exit_code();
  } catch (const std::invalid_argument& e) {
    fmt::print(std::cerr, "svc-miner: {}\n", e.what());
    return exit_code::kUsage;
  }
}

// Splices the entries of `--config FILE` in as `--key=value` arguments right
// after the subcommand, so later command-line flags override them.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  if (args.empty() || (args[0] != "run" && args[0] != "stats")) return args;
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return args;
  if (!std::filesystem::exists(path)) {
    throw PipelineError("config", exit_code::kInputFormat, "config file not found: " + path);
  }
  std::vector<std::string> injected;
  for (const auto& item : CLI::ConfigINI().from_file(path)) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == args[0])) continue;
    std::string value;
    for (const auto& v : item.inputs) value += (value.empty() ? "" : ",") + v;
    injected.push_back("--" + item.name + "=" + value);
  }
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank support verb construction candidates from aligned, parsed bitexts",
               "svc-miner"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CliOptions run_opts;
  auto* run = app.add_subcommand("run", "extract, score and rank candidates");
  add_input_options(*run, run_opts);
  auto& rp = run_opts.config.ranking;
  run->add_option("--x", run_opts.x, "interlingual measure for q")->capture_default_str();
  run->add_option("--y", run_opts.y, "intralingual measure for r")->capture_default_str();
  run->add_option("--alpha", rp.alpha, "L1 weight")->capture_default_str();
  run->add_option("--beta", rp.beta, "L2 weight")->capture_default_str();
  run->add_option("--delta", rp.delta, "q damping")->capture_default_str();
  run->add_option("--min-freq", rp.min_freq, "minimum tuple frequency")->capture_default_str();
  run->add_option("--out", run_opts.config.out_dir, "output directory")->required();
  run->add_flag("--dump-tuples", run_opts.config.dump_tuples, "write tuples.tsv");
  run->add_flag("--dump-scores", run_opts.config.dump_scores, "write one score table per context and measure");

  CliOptions stats_opts;
  auto* stats = app.add_subcommand("stats", "report per-stage counts as TSV on stdout");
  add_input_options(*stats, stats_opts);

  FixtureSpec fixture_spec;
  std::string fixture_out;
  auto* fixture = app.add_subcommand("fixture", "write a synthetic bitext with expected ranking");
  fixture->add_option("--seed", fixture_spec.seed, "RNG seed")->capture_default_str();
  fixture->add_option("--pairs", fixture_spec.n_pairs, "sentence pairs (>= 20)")->capture_default_str();
  fixture->add_option("--defects", fixture_spec.defects, "malformed lines to inject")->capture_default_str();
  fixture->add_option("--out", fixture_out, "output directory")->required();

  try {
    std::vector<std::string> args = expand_config({argv + 1, argv + argc});
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (run->parsed()) return run_command(run_opts);
    if (stats->parsed()) return stats_command(stats_opts);
    if (fixture->parsed()) {
      fixture_spec.validate();
      auto files = generate_fixture(fixture_spec, fixture_out);
      fmt::print(std::cerr, "[fixture] wrote {}, {}, {}\n", files.l1_conllu.string(),
                 files.l2_conllu.string(), files.align.string());
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::kUsage;
  } catch (const PipelineError& e) {
    fmt::print(std::cerr, "svc-miner: {}\n", e.what());
    return e.exit_code();
  } catch (const std::invalid_argument& e) {
    fmt::print(std::cerr, "svc-miner: {}\n", e.what());
    return exit_code::kUsage;
  }
  return exit_code::kSuccess;
}
