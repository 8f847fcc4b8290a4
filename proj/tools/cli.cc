// Copyright 2026 The Labov Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "labov/adjudication.h"
#include "labov/bundle.h"
#include "labov/errors.h"
#include "labov/lat_format.h"
#include "labov/lint.h"
#include "labov/report.h"
#include "labov/seg_agreement.h"
#include "labov/service.h"
#include "labov/wizard.h"

namespace labov {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct Options {
  std::string format;
  bool timestamps = false;
  int nt = kDefaultNearMissWindow;
  std::string rules;
  std::string chart;
  std::string seeds = "0..99";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data = ".";
  std::string pooling = "global";
  std::string denominator = "any-coder";
  std::string rounding = "nearest";
  std::string resolutions;
  std::string layer;
  std::string output;
  std::vector<std::string> answers;
  bool print_chart = false;
  std::vector<std::string> inputs;
};

// Thrown for input that cannot be processed; exit code 1.
struct InputFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string ReadText(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFailure("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json ReadJsonFile(const fs::path &path) {
  try {
    return nlohmann::json::parse(ReadText(path));
  } catch (const nlohmann::json::parse_error &e) {
    throw InputFailure(path.string() + ": " + e.what());
  }
}

bool IsBundlePath(const std::string &path) {
  return fs::path(path).extension() == ".json";
}

void ApplyConfigFile(Options &opt) {
  const char *env = std::getenv("LABOV_CONFIG");
  if (env == nullptr || *env == '\0') return;
  const nlohmann::json j = ReadJsonFile(env);
  if (!j.is_object()) throw InputFailure(std::string(env) + ": not an object");
  opt.nt = j.value("nt", opt.nt);
  opt.format = j.value("format", opt.format);
  opt.rules = j.value("rules", opt.rules);
  opt.chart = j.value("chart", opt.chart);
  opt.seeds = j.value("seeds", opt.seeds);
  opt.host = j.value("host", opt.host);
  opt.port = j.value("port", opt.port);
  opt.data = j.value("data", opt.data);
  opt.pooling = j.value("pooling", opt.pooling);
  opt.denominator = j.value("denominator", opt.denominator);
  opt.rounding = j.value("rounding", opt.rounding);
}

LintConfig LoadLintConfig(const Options &opt) {
  if (opt.rules.empty()) return LintConfig::Default();
  return LintConfig::FromJson(ReadJsonFile(opt.rules));
}

MicroChart LoadChart(const Options &opt) {
  if (opt.chart.empty()) return MicroChart::Default();
  return MicroChart::FromFile(opt.chart);
}

std::vector<Bundle> LoadInputBundles(const Options &opt) {
  std::vector<fs::path> paths(opt.inputs.begin(), opt.inputs.end());
  return LoadBundles(paths);
}

std::string Timestamp() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}",
                     fmt::gmtime(std::chrono::system_clock::to_time_t(
                         std::chrono::system_clock::now())));
}

void Emit(const Options &opt, std::ostream &out, ojson json,
          const std::string &table) {
  if (opt.format == "table") {
    out << table;
    if (opt.timestamps) out << "generated " << Timestamp() << "\n";
    return;
  }
  if (opt.timestamps) json["generated_at"] = Timestamp();
  out << DumpJson(json);
}

int Validate(const Options &opt, std::ostream &out, std::ostream &err) {
  ojson files = ojson::array();
  std::string table;
  bool all_valid = true;
  for (const std::string &path : opt.inputs) {
    ojson violations = ojson::array();
    auto add = [&](const std::string &annotator, const SchemaViolation &v) {
      ojson e;
      if (!annotator.empty()) e["annotator"] = annotator;
      e["rule_id"] = v.rule_id;
      e["clause"] = v.clause;
      e["message"] = v.message;
      violations.push_back(e);
      table += fmt::format("{}:{}: {}{}: {}\n", path, v.clause,
                           annotator.empty() ? "" : annotator + ": ", v.rule_id,
                           v.message);
    };
    try {
      if (IsBundlePath(path)) {
        const Bundle b = ParseBundle(ReadText(path));
        for (const AnnotatorLayer &l : b.layers) {
          for (const auto &v : CheckFragment(LayerToFragment(b, l))) {
            add(l.annotator_id, v);
          }
        }
        if (b.gold) {
          for (const auto &v : CheckFragment(*b.gold)) add("gold", v);
        }
      } else {
        for (const auto &v : CheckFragment(ReadLatFile(path))) add("", v);
      }
    } catch (const ParseError &e) {
      add("", SchemaViolation{"parse", 0, e.what()});
    } catch (const ValidationError &e) {
      add("", SchemaViolation{"bundle", 0, e.what()});
    }
    const bool valid = violations.empty();
    all_valid = all_valid && valid;
    if (valid) table += path + ": ok\n";
    ojson f;
    f["path"] = path;
    f["valid"] = valid;
    f["violations"] = std::move(violations);
    files.push_back(std::move(f));
  }
  ojson j;
  j["report"] = "validate";
  j["files"] = std::move(files);
  Emit(opt, out, std::move(j), table);
  if (!all_valid) err << "validation failed\n";
  return all_valid ? kExitOk : kExitFailure;
}

int Lint(const Options &opt, std::ostream &out, std::ostream &err) {
  const LintConfig config = LoadLintConfig(opt);
  std::vector<LintFinding> findings;
  for (const std::string &path : opt.inputs) {
    std::vector<LintFinding> part =
        IsBundlePath(path) ? LintBundle(ParseBundle(ReadText(path)), config)
                           : LintFragment(ReadLatFile(path), config);
    findings.insert(findings.end(), part.begin(), part.end());
  }
  Emit(opt, out, FindingsToJson(findings), FindingsTable(findings));
  if (HasErrors(findings)) {
    err << "lint found errors\n";
    return kExitFailure;
  }
  return kExitOk;
}

int AgreeSeg(const Options &opt, std::ostream &out) {
  const auto report = SegAgreementFor(
      LoadInputBundles(opt), opt.nt,
      opt.pooling == "global" ? BedPooling::kGlobal : BedPooling::kPerFragment);
  Emit(opt, out, SegReportToJson(report), SegReportTable(report));
  return kExitOk;
}

int AgreeLabels(const Options &opt, std::ostream &out) {
  const std::vector<Bundle> bundles = LoadInputBundles(opt);
  const ExactMatchDenominator denominator = opt.denominator == "majority"
                                                ? ExactMatchDenominator::kMajority
                                                : ExactMatchDenominator::kAnyCoder;
  const std::string table =
      LabelReportTable(LabelAgreementFor(bundles, VoteField::kMicro, denominator)) +
      "\n" +
      LabelReportTable(LabelAgreementFor(bundles, VoteField::kMacro, denominator));
  Emit(opt, out, LabelAgreementJson(bundles, denominator), table);
  return kExitOk;
}

int AdjudicateCommand(const Options &opt, std::ostream &out,
                      std::ostream &err) {
  const std::vector<Bundle> bundles = LoadInputBundles(opt);
  std::vector<VoteOutcome> outcomes;
  for (const Bundle &b : bundles) {
    auto part = Adjudicate(b);
    outcomes.insert(outcomes.end(), part.begin(), part.end());
  }
  if (!opt.resolutions.empty()) {
    ApplyResolutions(outcomes,
                     ResolutionsFromJson(ReadJsonFile(opt.resolutions)));
  }
  ojson j = OutcomesToJson(outcomes);
  std::string table = OutcomesTable(outcomes);
  const bool complete = j["needs_discussion"].get<int>() == 0;
  if (!opt.resolutions.empty() && complete && bundles.size() == 1) {
    const Fragment gold = BuildGold(bundles.front(), outcomes);
    j["gold"] = FragmentToJson(gold);
    table += "\n" + SerializeLat(gold);
    if (IsBundlePath(opt.output)) {
      Bundle with_gold = bundles.front();
      with_gold.gold = gold;
      WriteBundleFile(opt.output, with_gold);
    } else if (!opt.output.empty()) {
      WriteLatFile(opt.output, gold);
      std::ofstream audit(opt.output + ".audit.json", std::ios::binary);
      if (!(audit << DumpJson(OutcomesToJson(outcomes)))) {
        throw InputFailure("cannot write " + opt.output + ".audit.json");
      }
    }
  } else if (!opt.output.empty()) {
    err << "gold not written: "
        << (complete ? "give --resolutions and a single bundle"
                     : "outcomes still need discussion")
        << "\n";
  }
  Emit(opt, out, std::move(j), table);
  return kExitOk;
}

int StatsCommand(const Options &opt, std::ostream &out) {
  std::vector<Fragment> gold;
  for (const std::string &path : opt.inputs) {
    if (fs::is_directory(path)) {
      const fs::path dir[] = {path};
      for (Fragment &f : GoldFragments(LoadBundles(dir))) gold.push_back(std::move(f));
    } else {
      gold.push_back(LoadFragment(path));
    }
  }
  const GoldCorpusStats stats = CorpusStats(
      gold, opt.rounding == "floor" ? PercentRounding::kFloor
                                    : PercentRounding::kNearest);
  Emit(opt, out, StatsToJson(stats), StatsTable(stats));
  return kExitOk;
}

int Baseline(const Options &opt, std::ostream &out) {
  std::vector<BaselineFragment> corpus;
  for (const Bundle &b : LoadInputBundles(opt)) {
    corpus.push_back(DescribeForBaseline(SegmentationsOf(b)));
  }
  const std::vector<std::uint64_t> seeds = ParseSeeds(opt.seeds);
  const BaselineReport report = RandomBaselineExperiment(corpus, seeds, opt.nt);
  Emit(opt, out, BaselineReportToJson(report), BaselineReportTable(report));
  return kExitOk;
}

int Convert(const Options &opt, std::ostream &out) {
  const std::string &input = opt.inputs.front();
  std::string text;
  bool to_bundle = !IsBundlePath(input);
  if (to_bundle) {
    text = SerializeBundle(BundleFromFragment(ReadLatFile(input)));
  } else {
    const Bundle b = ParseBundle(ReadText(input));
    if (!opt.layer.empty()) {
      const AnnotatorLayer *layer = b.FindLayer(opt.layer);
      if (layer == nullptr) {
        throw InputFailure(input + " has no layer for '" + opt.layer + "'");
      }
      text = SerializeLat(LayerToFragment(b, *layer));
    } else if (b.gold) {
      text = SerializeLat(*b.gold);
    } else {
      throw InputFailure(input + " has no gold fragment; pick one with --layer");
    }
  }
  if (opt.output.empty()) {
    out << text;
  } else {
    std::ofstream f(opt.output, std::ios::binary);
    if (!(f << text)) throw InputFailure("cannot write " + opt.output);
  }
  return kExitOk;
}

int Wizard(const Options &opt, std::ostream &out) {
  const MicroChart chart = LoadChart(opt);
  if (opt.print_chart) {
    if (opt.chart.empty()) {
      out << DefaultChartJson();
    } else {
      out << ReadText(opt.chart);
    }
    return kExitOk;
  }
  ChartAnswers answers;
  for (const std::string &a : opt.answers) {
    const auto eq = a.find('=');
    const std::string value = eq == std::string::npos ? "" : a.substr(eq + 1);
    if (eq == std::string::npos ||
        (value != "yes" && value != "no" && value != "true" &&
         value != "false")) {
      throw CLI::ValidationError("--answer", "expected <question>=yes|no, got '" + a + "'");
    }
    answers[a.substr(0, eq)] = value == "yes" || value == "true";
  }
  const QuestionDescriptor q = NextQuestion(answers, chart);
  std::string table;
  if (q.terminal) {
    table = fmt::format(
        "micro label: {}\n",
        q.outcome.label ? std::string(MicroToken(*q.outcome.label)) : "none");
  } else {
    table = fmt::format("Q{} [{}] {}\n    {}\n", q.step, q.node_id,
                        q.question_en, q.question_ja);
    for (const std::string &e : q.examples) table += "    e.g. " + e + "\n";
  }
  Emit(opt, out, QuestionToJson(q), table);
  return kExitOk;
}

int Serve(const Options &opt, std::ostream &err) {
  ServiceConfig config;
  config.data_dir = opt.data;
  config.lint = LoadLintConfig(opt);
  config.chart = LoadChart(opt);
  config.nt = opt.nt;
  AnnotationService service(std::move(config));
  HttpServer server(service);
  const int port = server.Bind(opt.host, opt.port);
  if (port < 0) {
    err << "cannot bind " << opt.host << ":" << opt.port << "\n";
    return kExitFailure;
  }
  err << "serving " << service.FragmentIds().size() << " fragments on http://"
      << opt.host << ":" << port << "\n";
  return server.Listen() ? kExitOk : kExitFailure;
}

}  // namespace

std::vector<std::uint64_t> ParseSeeds(std::string_view text) {
  auto number = [](std::string_view s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
      throw std::invalid_argument("bad seed '" + std::string(s) + "'");
    }
    return std::stoull(std::string(s));
  };
  std::vector<std::uint64_t> seeds;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const std::uint64_t lo = number(text.substr(0, dots));
    const std::uint64_t hi = number(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty seed range");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = std::min(text.find(',', start), text.size());
    seeds.push_back(number(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return seeds;
}

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err, bool out_is_terminal) {
  Options opt;
  try {
    ApplyConfigFile(opt);
  } catch (const std::exception &e) {
    err << "LABOV_CONFIG: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Labovian narrative annotation toolkit", "labov"};
  app.require_subcommand(1);
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"table", "json"}));
  app.add_flag("--timestamps", opt.timestamps, "Stamp reports with the time");
  app.add_option("--nt", opt.nt, "Near-miss window for boundary transpositions")
      ->check(CLI::Range(2, 1000));
  app.add_option("--rules", opt.rules, "Lint configuration file");
  app.add_option("--chart", opt.chart, "Micro-label chart file");

  auto files = [&](CLI::App *sub, bool many = true) {
    auto *o = sub->add_option("inputs", opt.inputs, "Input files")->required();
    if (!many) o->expected(1);
    sub->fallthrough();
    return sub;
  };
  auto *validate = files(app.add_subcommand("validate", "Check files against the schema"));
  auto *lint = files(app.add_subcommand("lint", "Report guideline findings"));
  auto *agree_seg = files(app.add_subcommand("agree-seg", "Clause segmentation agreement"));
  agree_seg->add_option("--pooling", opt.pooling, "BED/100 pooling")
      ->check(CLI::IsMember({"global", "per-fragment"}));
  auto *agree_labels = files(app.add_subcommand("agree-labels", "Micro and macro label agreement"));
  agree_labels->add_option("--denominator", opt.denominator, "Exact-match denominator")
      ->check(CLI::IsMember({"any-coder", "majority"}));
  auto *adjudicate = files(app.add_subcommand("adjudicate", "Majority vote with discussion fallback"));
  adjudicate->add_option("--resolutions", opt.resolutions, "Discussion resolutions file");
  adjudicate->add_option("-o,--output", opt.output, "Gold output: a bundle (.json) or a .lat.tsv with an audit sidecar");
  auto *stats = files(app.add_subcommand("stats", "Gold corpus statistics"));
  stats->add_option("--rounding", opt.rounding, "Percent rounding")
      ->check(CLI::IsMember({"nearest", "floor"}));
  auto *baseline = files(app.add_subcommand("baseline", "Random segmentation baseline"));
  baseline->add_option("--seeds", opt.seeds, "Seeds: 0..99, 1,2,3 or 7");
  auto *convert = files(app.add_subcommand("convert", "Convert between .lat.tsv and bundles"), false);
  convert->add_option("-o,--output", opt.output, "Output file (default stdout)");
  convert->add_option("--layer", opt.layer, "Annotator layer to export");
  auto *wizard = app.add_subcommand("wizard", "Walk the micro-label chart");
  wizard->add_option("--answer", opt.answers, "Answer as <question>=yes|no");
  wizard->add_flag("--print-chart", opt.print_chart, "Print the chart definition");
  wizard->fallthrough();
  auto *serve = app.add_subcommand("serve", "Run the annotation service");
  serve->add_option("--data", opt.data, "Directory of bundle files");
  serve->add_option("--host", opt.host, "Address to bind");
  serve->add_option("--port", opt.port, "Port to listen on")->check(CLI::Range(0, 65535));
  serve->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (opt.format.empty()) opt.format = out_is_terminal ? "table" : "json";
    ParseSeeds(opt.seeds);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const std::invalid_argument &e) {
    err << "--seeds: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return Validate(opt, out, err);
    if (lint->parsed()) return Lint(opt, out, err);
    if (agree_seg->parsed()) return AgreeSeg(opt, out);
    if (agree_labels->parsed()) return AgreeLabels(opt, out);
    if (adjudicate->parsed()) return AdjudicateCommand(opt, out, err);
    if (stats->parsed()) return StatsCommand(opt, out);
    if (baseline->parsed()) return Baseline(opt, out);
    if (convert->parsed()) return Convert(opt, out);
    if (wizard->parsed()) return Wizard(opt, out);
    if (serve->parsed()) return Serve(opt, err);
  } catch (const CLI::ValidationError &e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace labov
