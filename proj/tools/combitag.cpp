// Command-line front end: each pipeline stage as a subcommand plus a
// one-shot `pipeline` driven by an experiment config file. Exit codes:
// 0 success, 1 usage error, 2 data/config/alignment error.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "combitag/config.hpp"
#include "combitag/corpus.hpp"
#include "combitag/errors.hpp"
#include "combitag/eval.hpp"
#include "combitag/hmm.hpp"
#include "combitag/lexicon.hpp"
#include "combitag/mbl.hpp"
#include "combitag/mbt.hpp"
#include "combitag/serialize.hpp"
#include "combitag/stacking.hpp"

namespace fs = std::filesystem;
using namespace combitag;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write file: " + path);
  out << content;
}

Corpus read_corpus(const std::string& path) {
  return parse_vertical(read_file(path), fs::path(path).stem().string());
}

json tagger_to_json(const Tagger& tagger) {
  if (auto* hmm = dynamic_cast<const HmmTagger*>(&tagger))
    return to_json(hmm->model());
  if (auto* mbt = dynamic_cast<const MbtTagger*>(&tagger))
    return to_json(mbt->model());
  if (auto* uni = dynamic_cast<const UnigramTagger*>(&tagger))
    return to_json(uni->model());
  throw Error("cannot serialize this tagger type");
}

// Wraps a trainer so every model trained during an experiment lands in
// the run directory. run_experiment trains the fold models first (in
// fold order), then the full-training model.
TaggerTrainer dumping_trainer(TaggerTrainer inner, const std::string& name,
                              std::size_t folds, const fs::path& out_dir) {
  auto counter = std::make_shared<std::size_t>(0);
  return [inner, name, folds, out_dir,
          counter](const Corpus& train) -> std::unique_ptr<Tagger> {
    std::unique_ptr<Tagger> tagger = inner(train);
    std::size_t call = (*counter)++;
    std::string file = call < folds
                           ? name + ".fold" + std::to_string(call) + ".model.json"
                           : name + ".model.json";
    write_file((out_dir / file).string(), tagger_to_json(*tagger).dump(2) + "\n");
    return tagger;
  };
}

struct PipelineOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
};

int run_pipeline(const PipelineOptions& options) {
  ExperimentConfig config = parse_config(read_file(options.config_path));
  if (options.seed_override)
    config.seed = *options.seed_override;

  const bool dump = !options.out_dir.empty();
  fs::path out_dir(options.out_dir);
  if (dump)
    fs::create_directories(out_dir);

  ExperimentPlan plan;
  plan.folds = config.folds;
  plan.combiner = config.combiner;
  plan.seed = config.seed;

  Corpus full = read_corpus(config.train_path);
  if (config.test_path) {
    plan.train = full;
    plan.test = read_corpus(*config.test_path);
  } else {
    std::optional<std::uint64_t> shuffle_seed;
    if (config.shuffle)
      shuffle_seed = config.seed;
    auto parts = split_train_test(full, config.fraction, shuffle_seed);
    plan.train = std::move(parts.first);
    plan.test = std::move(parts.second);
    if (dump) {
      write_file((out_dir / "train.tsv").string(), write_vertical(plan.train));
      write_file((out_dir / "test.tsv").string(), write_vertical(plan.test));
    }
  }

  for (const auto& sc : config.sources) {
    SourceSpec spec;
    spec.name = sc.name;
    spec.kind = sc.kind;
    switch (sc.kind) {
    case SourceKind::word:
      break;
    case SourceKind::lexicon:
      spec.lexicon = parse_lexicon(read_file(sc.lexicon_path), sc.name);
      break;
    case SourceKind::external_column:
      spec.train_column_text = read_file(sc.train_path);
      spec.test_column_text = read_file(sc.test_path);
      break;
    case SourceKind::internal_tagger:
      spec.trainer = trainer_for(sc.engine);
      if (dump)
        spec.trainer =
            dumping_trainer(spec.trainer, sc.name, plan.folds, out_dir);
      break;
    }
    plan.sources.push_back(std::move(spec));
  }

  ExperimentResult result = run_experiment(plan);

  std::string report_text;
  report_text += "sources on test (raw columns)\n";
  report_text += render_table(result.source_reports, TableLayout::baseline);
  report_text += "\n";
  // the best raw source is the single-system baseline to beat
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.source_reports.size(); ++i)
    if (result.source_reports[i].total_acc >
        result.source_reports[best].total_acc)
      best = i;
  report_text += "combined vs best single source\n";
  if (result.source_reports[best].total_acc &&
      *result.source_reports[best].total_acc < 100.0) {
    report_text += render_table({result.source_reports[best], result.report},
                                TableLayout::reduction);
  } else {
    report_text += render_table({result.source_reports[best], result.report},
                                TableLayout::baseline);
  }
  std::cout << report_text;

  if (dump) {
    for (std::size_t i = 0; i < plan.sources.size(); ++i) {
      const std::string& name = plan.sources[i].name;
      write_file((out_dir / (name + ".train.col")).string(),
                 write_column(plan.train, result.train_columns[i]));
      write_file((out_dir / (name + ".test.col")).string(),
                 write_column(plan.test, result.test_columns[i]));
    }
    write_file((out_dir / "level1_cases.tsv").string(),
               mbl::write_cases(result.level1_cases));
    write_file((out_dir / "test_cases.tsv").string(),
               mbl::write_cases(result.test_cases));
    mbl::InstanceBase combiner = mbl::train(result.level1_cases, plan.combiner);
    json combiner_json = to_json(combiner);
    combiner_json["config"] = to_json(plan.combiner);
    write_file((out_dir / "combiner.json").string(),
               combiner_json.dump(2) + "\n");
    write_file((out_dir / "predictions.col").string(),
               write_column(plan.test, result.predictions));
    write_file((out_dir / "report.txt").string(), report_text);
    write_file((out_dir / "report.tsv").string(), render_tsv(result.report));
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"combi-bootstrap tagging toolkit"};
  app.require_subcommand(1);

  // split
  auto* split = app.add_subcommand("split", "split a corpus into train/test");
  std::string split_input, split_train, split_test;
  double split_fraction = 0.9;
  bool split_shuffle = false;
  std::uint64_t split_seed = 0;
  split->add_option("--input", split_input, "corpus file")->required();
  split->add_option("--fraction", split_fraction, "train token fraction");
  split->add_flag("--shuffle", split_shuffle, "shuffle sentences first");
  split->add_option("--seed", split_seed, "shuffle seed");
  split->add_option("--train", split_train, "train output")->required();
  split->add_option("--test", split_test, "test output")->required();

  // train-tagger
  auto* train_cmd = app.add_subcommand("train-tagger", "train a level-0 tagger");
  std::string tt_engine, tt_train, tt_model;
  HmmConfig tt_hmm;
  MbtConfig tt_mbt;
  train_cmd->add_option("--tagger", tt_engine, "hmm, mbt or unigram")
      ->required();
  train_cmd->add_option("--train", tt_train, "training corpus")->required();
  train_cmd->add_option("--model", tt_model, "model output")->required();
  train_cmd->add_option("--beam", tt_hmm.beam, "hmm beam width (0 = unlimited)");
  train_cmd->add_option("--max-suffix-len", tt_hmm.max_suffix_len,
                        "hmm unknown-word suffix length");
  train_cmd->add_option("--rare-threshold", tt_hmm.rare_word_threshold,
                        "hmm/mbt rare-word frequency threshold");

  // tag
  auto* tag_cmd = app.add_subcommand("tag", "tag a corpus with a trained model");
  std::string tg_model, tg_input, tg_output;
  tag_cmd->add_option("--model", tg_model, "model file")->required();
  tag_cmd->add_option("--input", tg_input, "corpus to tag")->required();
  tag_cmd->add_option("--output", tg_output, "column output")->required();

  // annotate-lexicon
  auto* lex_cmd = app.add_subcommand("annotate-lexicon",
                                     "emit ambiguity classes per token");
  std::string lx_lexicon, lx_input, lx_output;
  lex_cmd->add_option("--lexicon", lx_lexicon, "lexicon file")->required();
  lex_cmd->add_option("--input", lx_input, "corpus file")->required();
  lex_cmd->add_option("--output", lx_output, "column output")->required();

  // stack-train-cases
  auto* stack_cmd = app.add_subcommand(
      "stack-train-cases", "build leak-free level-1 training cases");
  std::string st_train, st_output;
  std::size_t st_folds = 9;
  std::vector<std::string> st_sources;
  stack_cmd->add_option("--train", st_train, "training corpus")->required();
  stack_cmd->add_option("--folds", st_folds, "cross-validation folds");
  stack_cmd->add_option("--source", st_sources, "name:kind:payload")
      ->required();
  stack_cmd->add_option("--output", st_output, "case file output")->required();

  // combine-train
  auto* ctrain_cmd =
      app.add_subcommand("combine-train", "train the IB1 combiner");
  std::string ct_cases, ct_model, ct_weighting = "none";
  std::size_t ct_k = 1;
  ctrain_cmd->add_option("--cases", ct_cases, "training case file")
      ->required();
  ctrain_cmd->add_option("--k", ct_k, "nearest distinct distances");
  ctrain_cmd->add_option("--weighting", ct_weighting, "none or gain_ratio");
  ctrain_cmd->add_option("--model", ct_model, "combiner output")->required();

  // combine-apply
  auto* capply_cmd =
      app.add_subcommand("combine-apply", "classify stacked test cases");
  std::string ca_model, ca_cases, ca_input, ca_output;
  capply_cmd->add_option("--model", ca_model, "combiner model")->required();
  capply_cmd->add_option("--cases", ca_cases, "test case file")->required();
  capply_cmd->add_option("--input", ca_input, "test corpus (for forms)")
      ->required();
  capply_cmd->add_option("--output", ca_output, "prediction column output")
      ->required();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "score a prediction column");
  std::string ev_pred, ev_gold, ev_vocab;
  bool ev_tsv = false;
  eval_cmd->add_option("--pred", ev_pred, "prediction column file")
      ->required();
  eval_cmd->add_option("--gold", ev_gold, "gold corpus file")->required();
  eval_cmd
      ->add_option("--train-vocab-from", ev_vocab,
                   "corpus defining known words")
      ->required();
  eval_cmd->add_flag("--tsv", ev_tsv, "machine-readable output");

  // pipeline
  auto* pipe_cmd =
      app.add_subcommand("pipeline", "run a whole experiment from a config");
  PipelineOptions pipe;
  std::uint64_t pipe_seed = 0;
  pipe_cmd->add_option("--config", pipe.config_path, "experiment config file")
      ->required();
  pipe_cmd->add_option("--out-dir", pipe.out_dir,
                       "directory for intermediate artifacts");
  auto* pipe_seed_opt =
      pipe_cmd->add_option("--seed", pipe_seed, "override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e); // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << app.help() << "\n";
    return 1;
  }

  try {
    if (*split) {
      Corpus corpus = read_corpus(split_input);
      std::optional<std::uint64_t> seed;
      if (split_shuffle)
        seed = split_seed;
      auto parts = split_train_test(corpus, split_fraction, seed);
      write_file(split_train, write_vertical(parts.first));
      write_file(split_test, write_vertical(parts.second));
    } else if (*train_cmd) {
      Corpus train = read_corpus(tt_train);
      json model;
      if (tt_engine == "hmm") {
        model = to_json(train_hmm(train, tt_hmm));
      } else if (tt_engine == "mbt") {
        tt_mbt.rare_threshold =
            train_cmd->count("--rare-threshold") ? tt_hmm.rare_word_threshold
                                                 : tt_mbt.rare_threshold;
        model = to_json(train_mbt(train, tt_mbt));
      } else if (tt_engine == "unigram") {
        model = to_json(train_unigram(train));
      } else {
        throw ConfigError("unknown tagger engine: " + tt_engine);
      }
      write_file(tt_model, model.dump(2) + "\n");
    } else if (*tag_cmd) {
      Corpus corpus = read_corpus(tg_input);
      auto tagger = tagger_from_json(json::parse(read_file(tg_model)));
      write_file(tg_output, write_column(corpus, tagger->tag(corpus)));
    } else if (*lex_cmd) {
      Corpus corpus = read_corpus(lx_input);
      Lexicon lexicon = parse_lexicon(read_file(lx_lexicon),
                                      fs::path(lx_lexicon).stem().string());
      write_file(lx_output, write_column(corpus, lexicon.annotate(corpus)));
    } else if (*stack_cmd) {
      Corpus train = read_corpus(st_train);
      std::vector<SourceSpec> sources;
      for (const auto& text : st_sources) {
        SourceConfig sc = detail::parse_source_value(0, text);
        SourceSpec spec;
        spec.name = sc.name;
        spec.kind = sc.kind;
        if (sc.kind == SourceKind::lexicon)
          spec.lexicon = parse_lexicon(read_file(sc.lexicon_path), sc.name);
        if (sc.kind == SourceKind::external_column) {
          spec.train_column_text = read_file(sc.train_path);
          // the test-side column is not needed to build training cases
        }
        if (sc.kind == SourceKind::internal_tagger)
          spec.trainer = trainer_for(sc.engine);
        sources.push_back(std::move(spec));
      }
      FoldPlan folds = make_folds(train, st_folds);
      write_file(st_output, mbl::write_cases(generate_level1_training(
                                train, sources, folds)));
    } else if (*ctrain_cmd) {
      mbl::ClassifierConfig config;
      config.k = ct_k;
      if (ct_weighting == "gain_ratio")
        config.weighting = mbl::Weighting::gain_ratio;
      else if (ct_weighting != "none")
        throw ConfigError("weighting must be none or gain_ratio");
      mbl::InstanceBase base =
          mbl::train(mbl::read_cases(read_file(ct_cases)), config);
      json model = to_json(base);
      model["config"] = to_json(config);
      write_file(ct_model, model.dump(2) + "\n");
    } else if (*capply_cmd) {
      json model = json::parse(read_file(ca_model));
      mbl::InstanceBase base = instance_base_from_json(model);
      mbl::ClassifierConfig config =
          classifier_config_from_json(model.at("config"));
      Corpus corpus = read_corpus(ca_input);
      auto cases = mbl::read_cases(read_file(ca_cases));
      AnnotationColumn pred{"combined", {}};
      for (const auto& c : cases)
        pred.values.push_back(mbl::classify(base, c.features, config).first);
      write_file(ca_output, write_column(corpus, pred));
    } else if (*eval_cmd) {
      Corpus gold = read_corpus(ev_gold);
      AnnotationColumn pred = load_external_column(
          gold, read_file(ev_pred), fs::path(ev_pred).stem().string());
      Corpus vocab_corpus = read_corpus(ev_vocab);
      EvalReport report = accuracy(pred, gold, vocabulary(vocab_corpus));
      if (ev_tsv)
        std::cout << render_tsv(report);
      else
        std::cout << render_table({report}, TableLayout::baseline);
    } else if (*pipe_cmd) {
      if (*pipe_seed_opt)
        pipe.seed_override = pipe_seed;
      return run_pipeline(pipe);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
