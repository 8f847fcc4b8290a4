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

#include "labov/report.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "labov/errors.h"
#include "labov/lat_format.h"

namespace labov {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

ojson OptionalNumber(const std::optional<double> &v) {
  return v ? ojson(*v) : ojson(nullptr);
}

std::string Fixed(const std::optional<double> &v, int digits = 4) {
  return v ? fmt::format("{:.{}f}", *v, digits) : std::string("undefined");
}

bool EndsWith(const std::string &s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string PoolingName(BedPooling p) {
  return p == BedPooling::kGlobal ? "global" : "per-fragment";
}

}  // namespace

std::vector<Bundle> LoadBundles(std::span<const fs::path> paths) {
  std::vector<fs::path> files;
  for (const fs::path &p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto &entry : fs::directory_iterator(p)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  std::vector<Bundle> out;
  for (const fs::path &f : files) out.push_back(ReadBundleFile(f));
  return out;
}

Fragment LoadFragment(const fs::path &path) {
  const std::string name = path.filename().string();
  if (EndsWith(name, ".json")) {
    Bundle b = ParseBundle(ReadFile(path));
    if (!b.gold) {
      throw ValidationError(path.string() + " has no gold fragment");
    }
    return *b.gold;
  }
  return ReadLatFile(path);
}

FragmentSegmentations SegmentationsOf(const Bundle &bundle) {
  FragmentSegmentations f;
  f.fragment_id = bundle.meta.fragment_id;
  for (const AnnotatorLayer &layer : bundle.layers) {
    f.coders.push_back(layer.annotator_id);
    f.layers.push_back(layer.clause_boundaries);
  }
  return f;
}

LabelMatrix LabelMatrixOf(std::span<const Bundle> bundles, VoteField field) {
  if (field == VoteField::kSpanMembership) {
    throw ValidationError("label agreement covers micro and macro labels only");
  }
  std::set<std::string> coder_set;
  for (const Bundle &b : bundles) {
    for (const AnnotatorLayer &l : b.layers) coder_set.insert(l.annotator_id);
  }
  LabelMatrix m;
  m.coders.assign(coder_set.begin(), coder_set.end());
  for (const Bundle &b : bundles) {
    if (b.layers.empty()) continue;
    const Segmentation &shared = LabelSegmentation(b, b.layers.front());
    for (const AnnotatorLayer &l : b.layers) {
      if (!(LabelSegmentation(b, l) == shared)) {
        throw ValidationError("fragment '" + b.meta.fragment_id +
                              "': layer of annotator '" + l.annotator_id +
                              "' labels a different clause segmentation");
      }
    }
    for (int id = 1; id <= shared.segment_count(); ++id) {
      std::vector<std::optional<std::string>> row(m.coders.size());
      bool any = false;
      for (const AnnotatorLayer &l : b.layers) {
        const size_t c = std::lower_bound(m.coders.begin(), m.coders.end(),
                                          l.annotator_id) -
                         m.coders.begin();
        if (field == VoteField::kMicro) {
          if (auto it = l.micro.find(id); it != l.micro.end()) {
            row[c] = std::string(MicroToken(it->second));
          }
        } else if (auto it = l.macro.find(id); it != l.macro.end()) {
          row[c] = std::string(MacroToken(it->second));
        }
        any = any || row[c].has_value();
      }
      if (any) m.AddUnit({b.meta.fragment_id, id}, std::move(row));
    }
  }
  return m;
}

std::vector<Fragment> GoldFragments(std::span<const Bundle> bundles) {
  std::vector<Fragment> out;
  for (const Bundle &b : bundles) {
    if (b.gold) out.push_back(*b.gold);
  }
  return out;
}

SegAgreementReport SegAgreementFor(std::span<const Bundle> bundles, int nt,
                                   BedPooling pooling) {
  std::vector<FragmentSegmentations> corpus;
  for (const Bundle &b : bundles) corpus.push_back(SegmentationsOf(b));
  return FleissKappaB(corpus, nt, pooling);
}

LabelAgreementReport LabelAgreementFor(std::span<const Bundle> bundles,
                                       VoteField field,
                                       ExactMatchDenominator denominator) {
  return ComputeLabelAgreement(LabelMatrixOf(bundles, field),
                               std::string(VoteFieldName(field)), denominator);
}

ojson LabelAgreementJson(std::span<const Bundle> bundles,
                         ExactMatchDenominator denominator) {
  ojson j;
  j["micro"] = LabelReportToJson(
      LabelAgreementFor(bundles, VoteField::kMicro, denominator));
  j["macro"] = LabelReportToJson(
      LabelAgreementFor(bundles, VoteField::kMacro, denominator));
  return j;
}

std::vector<LintFinding> LintBundle(const Bundle &bundle,
                                    const LintConfig &config) {
  std::vector<LintFinding> out;
  for (const AnnotatorLayer &layer : bundle.layers) {
    for (LintFinding f : LintFragment(LayerToFragment(bundle, layer), config)) {
      f.message = "annotator " + layer.annotator_id + ": " + f.message;
      out.push_back(std::move(f));
    }
  }
  return out;
}

ojson DecisionToJson(const ChartOutcome &outcome) {
  ojson j;
  j["label"] = outcome.label ? ojson(std::string(MicroToken(*outcome.label)))
                             : ojson(nullptr);
  return j;
}

std::string DumpJson(const ojson &json) { return json.dump(2) + "\n"; }

ojson SegReportToJson(const SegAgreementReport &r) {
  ojson j;
  j["report"] = "segmentation-agreement";
  j["nt"] = r.nt;
  j["atom_basis"] = AtomBasisName(r.atom_basis);
  j["fragments"] = r.fragments;
  j["coders"] = r.coders;
  j["mean_b"] = r.mean_b;
  j["expected_agreement"] = r.expected_agreement;
  j["kappa_b"] = OptionalNumber(r.kappa_b);
  if (!r.kappa_b) j["kappa_b_undefined"] = r.kappa_undefined_reason;
  j["bed_per_100"] = r.bed_per_100;
  j["bed_pooling"] = PoolingName(r.bed_pooling);
  ojson pairs = ojson::array();
  for (const PairwiseSimilarity &p : r.pairwise) {
    ojson e;
    e["fragment_id"] = p.fragment_id;
    e["coder_a"] = p.coder_a;
    e["coder_b"] = p.coder_b;
    e["b"] = ToDouble(p.b);
    e["edits"] = p.edit_count;
    e["potential_boundaries"] = p.potential_boundaries;
    pairs.push_back(std::move(e));
  }
  j["pairwise"] = std::move(pairs);
  return j;
}

ojson LabelReportToJson(const LabelAgreementReport &r) {
  ojson j;
  j["report"] = "label-agreement";
  j["level"] = r.level;
  j["coders"] = r.coders;
  j["units"] = r.units;
  j["pairable_units"] = r.pairable_units;
  j["alpha"] = OptionalNumber(r.alpha);
  if (!r.alpha) j["alpha_undefined"] = r.alpha_undefined_reason;
  j["exact_match_denominator"] =
      r.denominator == ExactMatchDenominator::kAnyCoder ? "any-coder"
                                                        : "majority";
  ojson em = ojson::object();
  for (const auto &[label, m] : r.exact_match) {
    ojson e;
    e["agreed"] = m.agreed;
    e["chosen"] = m.chosen;
    e["rate"] = ToDouble(m.rate());
    em[label] = std::move(e);
  }
  j["exact_match"] = std::move(em);
  ojson counts = ojson::object();
  for (const auto &[label, n] : r.label_counts) counts[label] = n;
  j["label_counts"] = std::move(counts);
  ojson confusion = ojson::array();
  for (const auto &[pair, n] : r.confusion) {
    confusion.push_back(ojson::array({pair.first, pair.second, n}));
  }
  j["confusion"] = std::move(confusion);
  return j;
}

ojson BaselineReportToJson(const BaselineReport &r) {
  auto summary = [](const DistributionSummary &s) {
    ojson j;
    j["mean"] = s.defined ? ojson(s.mean) : ojson(nullptr);
    j["min"] = s.defined ? ojson(s.min) : ojson(nullptr);
    j["max"] = s.defined ? ojson(s.max) : ojson(nullptr);
    j["samples"] = s.defined;
    return j;
  };
  ojson j;
  j["report"] = "random-baseline";
  j["nt"] = r.nt;
  j["atom_basis"] = AtomBasisName(r.atom_basis);
  j["seeds"] = r.runs.size();
  j["kappa_b"] = summary(r.kappa_b);
  j["kappa_b_undefined_runs"] = r.undefined_kappa;
  j["bed_per_100"] = summary(r.bed_per_100);
  ojson runs = ojson::array();
  for (const BaselineRun &run : r.runs) {
    ojson e;
    e["seed"] = run.seed;
    e["kappa_b"] = OptionalNumber(run.kappa_b);
    e["mean_b"] = run.mean_b;
    e["bed_per_100"] = run.bed_per_100;
    runs.push_back(std::move(e));
  }
  j["runs"] = std::move(runs);
  return j;
}

ojson OutcomesToJson(std::span<const VoteOutcome> outcomes) {
  ojson j;
  j["report"] = "adjudication";
  int pending = 0;
  ojson list = ojson::array();
  for (const VoteOutcome &o : outcomes) {
    pending += o.needs_discussion;
    list.push_back(OutcomeToJson(o));
  }
  j["outcomes"] = std::move(list);
  j["needs_discussion"] = pending;
  return j;
}

ojson StatsToJson(const GoldCorpusStats &s) {
  ojson j;
  j["report"] = "corpus-stats";
  j["fragments"] = s.fragments;
  j["clauses"] = s.total_clauses;
  j["interviewee_clauses"] = s.interviewee_clauses;
  j["interviewer_clauses"] = s.interviewer_clauses;
  ojson macro = ojson::object();
  for (MacroLabel m : kAllMacroLabels) {
    auto it = s.macro_counts.find(m);
    macro[std::string(MacroName(m))] = it == s.macro_counts.end() ? 0 : it->second;
  }
  j["macro"] = std::move(macro);
  ojson spans = ojson::object();
  for (NarrativeType t : kAllNarrativeTypes) {
    ojson e;
    auto it = s.spans.find(t);
    const SpanLengthStats st = it == s.spans.end() ? SpanLengthStats{} : it->second;
    e["spans"] = st.count;
    const auto mean = st.mean_length();
    e["mean_length"] = mean ? ojson(ToDouble(*mean)) : ojson(nullptr);
    spans[std::string(NarrativeTypeName(t))] = std::move(e);
  }
  j["spans"] = std::move(spans);
  ojson micro = ojson::object();
  int percent_sum = 0;
  for (MicroLabel m : kAllMicroLabels) {
    auto it = s.micro.find(m);
    const MicroShare share = it == s.micro.end() ? MicroShare{} : it->second;
    ojson e;
    e["count"] = share.count;
    e["percent"] = share.percent;
    percent_sum += share.percent;
    micro[std::string(MicroName(m))] = std::move(e);
  }
  j["micro"] = std::move(micro);
  j["micro_labeled"] = s.micro_labeled;
  j["micro_percent_sum"] = percent_sum;
  j["percent_rounding"] =
      s.rounding == PercentRounding::kNearest ? "nearest" : "floor";
  return j;
}

ojson FindingsToJson(std::span<const LintFinding> findings) {
  ojson j;
  j["report"] = "lint";
  int counts[3] = {0, 0, 0};
  ojson list = ojson::array();
  for (const LintFinding &f : findings) {
    ++counts[static_cast<int>(f.severity)];
    list.push_back(FindingToJson(f));
  }
  j["errors"] = counts[0];
  j["warnings"] = counts[1];
  j["infos"] = counts[2];
  j["findings"] = std::move(list);
  return j;
}

std::string SegReportTable(const SegAgreementReport &r) {
  std::string out = fmt::format(
      "Clause segmentation agreement (nt={}, {} atoms)\n"
      "  fragments            {}\n"
      "  coders               {}\n"
      "  mean B               {:.4f}\n"
      "  chance agreement     {:.4f}\n"
      "  kappa_B              {}\n"
      "  BED per 100 ({})  {:.4f}\n",
      r.nt, AtomBasisName(r.atom_basis), r.fragments, r.coders, r.mean_b,
      r.expected_agreement, Fixed(r.kappa_b), PoolingName(r.bed_pooling),
      r.bed_per_100);
  if (!r.kappa_b) out += "  (" + r.kappa_undefined_reason + ")\n";
  out += fmt::format("\n  {:<16} {:<12} {:<12} {:>8} {:>6}\n", "fragment",
                     "coder a", "coder b", "B", "edits");
  for (const PairwiseSimilarity &p : r.pairwise) {
    out += fmt::format("  {:<16} {:<12} {:<12} {:>8.4f} {:>6}\n",
                       p.fragment_id, p.coder_a, p.coder_b, ToDouble(p.b),
                       p.edit_count);
  }
  return out;
}

std::string LabelReportTable(const LabelAgreementReport &r) {
  std::string out = fmt::format(
      "{} label agreement\n"
      "  coders          {}\n"
      "  units           {}\n"
      "  pairable units  {}\n"
      "  alpha           {}\n",
      r.level, r.coders.size(), r.units, r.pairable_units, Fixed(r.alpha));
  if (!r.alpha) out += "  (" + r.alpha_undefined_reason + ")\n";
  out += fmt::format("\n  {:<14} {:>7} {:>7} {:>7}\n", "label", "agreed",
                     "chosen", "rate");
  for (const auto &[label, m] : r.exact_match) {
    out += fmt::format("  {:<14} {:>7} {:>7} {:>7.2f}\n", label, m.agreed,
                       m.chosen, ToDouble(m.rate()));
  }
  if (!r.confusion.empty()) {
    out += fmt::format("\n  {:<14} {:<14} {:>7}\n", "label", "label", "pairs");
    for (const auto &[pair, n] : r.confusion) {
      out += fmt::format("  {:<14} {:<14} {:>7}\n", pair.first, pair.second, n);
    }
  }
  return out;
}

std::string BaselineReportTable(const BaselineReport &r) {
  auto row = [](std::string_view name, const DistributionSummary &s) {
    if (!s.defined) return fmt::format("  {:<12} undefined\n", name);
    return fmt::format("  {:<12} {:>9.4f} {:>9.4f} {:>9.4f} {:>7}\n", name,
                       s.mean, s.min, s.max, s.defined);
  };
  std::string out = fmt::format(
      "Random segmentation baseline (nt={}, {} seeds)\n"
      "  {:<12} {:>9} {:>9} {:>9} {:>7}\n",
      r.nt, r.runs.size(), "", "mean", "min", "max", "runs");
  out += row("kappa_B", r.kappa_b);
  out += row("BED/100", r.bed_per_100);
  if (r.undefined_kappa > 0) {
    out += fmt::format("  kappa_B undefined in {} runs\n", r.undefined_kappa);
  }
  return out;
}

std::string OutcomesTable(std::span<const VoteOutcome> outcomes) {
  std::string out = fmt::format("  {:<16} {:>6} {:<24} {:<14} {:<10} {}\n",
                                "fragment", "clause", "field", "votes",
                                "decided", "basis");
  int pending = 0;
  for (const VoteOutcome &o : outcomes) {
    std::string field(VoteFieldName(o.field));
    if (o.span_kind) field += ":" + std::string(NarrativeTypeName(*o.span_kind));
    std::string votes;
    for (const auto &v : o.votes) votes += (votes.empty() ? "" : ",") + v;
    pending += o.needs_discussion;
    out += fmt::format("  {:<16} {:>6} {:<24} {:<14} {:<10} {}\n",
                       o.unit.fragment_id, o.unit.clause, field, votes,
                       o.decided.value_or("?"), o.basis);
  }
  out += fmt::format("{} outcomes, {} need discussion\n", outcomes.size(),
                     pending);
  return out;
}

std::string StatsTable(const GoldCorpusStats &s) {
  std::string out = fmt::format(
      "Gold corpus: {} fragments, {} clauses ({} interviewee, {} "
      "interviewer)\n\n",
      s.fragments, s.total_clauses, s.interviewee_clauses,
      s.interviewer_clauses);
  out += fmt::format("  {:<14} {:>6}\n", "Macro label", "Total");
  for (MacroLabel m : kAllMacroLabels) {
    auto it = s.macro_counts.find(m);
    out += fmt::format("  {:<14} {:>6}\n", MacroName(m),
                       it == s.macro_counts.end() ? 0 : it->second);
  }
  out += fmt::format("\n  {:<14} {:>6} {:>12}\n", "Span type", "Spans",
                     "Mean length");
  for (NarrativeType t : kAllNarrativeTypes) {
    auto it = s.spans.find(t);
    const SpanLengthStats st = it == s.spans.end() ? SpanLengthStats{} : it->second;
    const auto mean = st.mean_length();
    out += fmt::format("  {:<14} {:>6} {:>12}\n", NarrativeTypeName(t), st.count,
                       mean ? fmt::format("{:.2f}", ToDouble(*mean)) : "-");
  }
  out += fmt::format("\n  {:<14} {:>6} {:>6}\n", "Micro label", "Count", "%");
  int sum = 0;
  for (MicroLabel m : kAllMicroLabels) {
    auto it = s.micro.find(m);
    const MicroShare share = it == s.micro.end() ? MicroShare{} : it->second;
    sum += share.percent;
    out += fmt::format("  {:<14} {:>6} {:>6}\n",
                       fmt::format("{} ({})", MicroName(m), MicroToken(m)),
                       share.count, share.percent);
  }
  out += fmt::format("  {:<14} {:>6} {:>6}\n", "Total", s.micro_labeled, sum);
  return out;
}

std::string FindingsTable(std::span<const LintFinding> findings) {
  std::string out;
  for (const LintFinding &f : findings) {
    std::string where = f.location.fragment_id;
    if (f.location.clause > 0) {
      where += fmt::format(":{}", f.location.clause);
    } else if (f.location.boundary > 0) {
      where += fmt::format("@{}", f.location.boundary);
    }
    out += fmt::format("{}: {}: [{}] {} ({})\n", where,
                       SeverityName(f.severity), f.rule_id, f.message,
                       f.guideline_ref);
  }
  if (findings.empty()) out += "no findings\n";
  return out;
}

}  // namespace labov
