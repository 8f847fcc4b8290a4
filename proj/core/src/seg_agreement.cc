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

#include "labov/seg_agreement.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "labov/errors.h"

namespace labov {
namespace {

void CheckComparable(const Segmentation &a, const Segmentation &b, int nt) {
  if (nt < 2) {
    throw ValidationError("near-miss window nt must be at least 2, got " +
                          std::to_string(nt));
  }
  if (a.atoms() != b.atoms()) {
    throw ValidationError("segmentations cover different atom counts (" +
                          std::to_string(a.atoms()) + " vs " +
                          std::to_string(b.atoms()) + ")");
  }
}

enum class Step { kAddA, kAddB, kPair };

// Best edit script for prefixes of the unmatched boundaries of a and b. cost
// is scaled by nt so it stays integral.
struct Cell {
  std::int64_t cost = 0;
  int transpositions = 0;
  Step step = Step::kAddA;
};

bool Better(std::int64_t cost, int t, const Cell &than) {
  return cost < than.cost || (cost == than.cost && t > than.transpositions);
}

}  // namespace

std::int64_t BoundaryEditResult::offset_sum() const {
  std::int64_t sum = 0;
  for (const Transposition &t : transpositions) sum += std::abs(t.offset);
  return sum;
}

BoundaryEditResult BoundaryEditDistance(const Segmentation &a,
                                        const Segmentation &b, int nt) {
  CheckComparable(a, b, nt);
  const std::vector<int> ba = a.Boundaries();
  const std::vector<int> bb = b.Boundaries();

  BoundaryEditResult result;
  std::vector<int> ua, ub;  // boundaries without a coincident counterpart
  size_t i = 0, j = 0;
  while (i < ba.size() || j < bb.size()) {
    if (j == bb.size() || (i < ba.size() && ba[i] < bb[j])) {
      ua.push_back(ba[i++]);
    } else if (i == ba.size() || bb[j] < ba[i]) {
      ub.push_back(bb[j++]);
    } else {
      ++result.matches;
      ++i;
      ++j;
    }
  }

  // Uncrossing two transpositions never raises the offset sum or the largest
  // offset, so an order-preserving pairing of ua with ub is optimal.
  const size_t n = ua.size();
  const size_t m = ub.size();
  std::vector<Cell> dp((n + 1) * (m + 1));
  auto at = [m](size_t x, size_t y) { return x * (m + 1) + y; };
  for (size_t x = 0; x <= n; ++x) {
    for (size_t y = 0; y <= m; ++y) {
      if (x == 0 && y == 0) continue;
      Cell best;
      best.cost = std::numeric_limits<std::int64_t>::max();
      best.transpositions = -1;
      auto offer = [&best](std::int64_t cost, int t, Step step) {
        if (Better(cost, t, best)) best = {cost, t, step};
      };
      if (x > 0) {
        const Cell &c = dp[at(x - 1, y)];
        offer(c.cost + nt, c.transpositions, Step::kAddA);
      }
      if (y > 0) {
        const Cell &c = dp[at(x, y - 1)];
        offer(c.cost + nt, c.transpositions, Step::kAddB);
      }
      if (x > 0 && y > 0) {
        const int distance = std::abs(ub[y - 1] - ua[x - 1]);
        if (distance <= nt - 1) {
          const Cell &c = dp[at(x - 1, y - 1)];
          offer(c.cost + distance, c.transpositions + 1, Step::kPair);
        }
      }
      dp[at(x, y)] = best;
    }
  }

  for (size_t x = n, y = m; x > 0 || y > 0;) {
    switch (dp[at(x, y)].step) {
      case Step::kPair:
        result.transpositions.push_back({ua[x - 1], ub[y - 1] - ua[x - 1]});
        --x;
        --y;
        break;
      case Step::kAddA:
        ++result.additions;
        --x;
        break;
      case Step::kAddB:
        ++result.additions;
        --y;
        break;
    }
  }
  std::reverse(result.transpositions.begin(), result.transpositions.end());
  result.raw_distance = Rational(dp[at(n, m)].cost, nt);
  return result;
}

Rational BoundarySimilarity(const BoundaryEditResult &edits, int nt) {
  const std::int64_t units = edits.additions +
                             static_cast<std::int64_t>(
                                 edits.transpositions.size()) +
                             edits.matches;
  if (units == 0) return Rational(1);
  const Rational penalty =
      Rational(edits.additions) + Rational(edits.offset_sum(), nt);
  return Rational(1) - penalty / Rational(units);
}

Rational BoundarySimilarity(const Segmentation &a, const Segmentation &b,
                            int nt) {
  return BoundarySimilarity(BoundaryEditDistance(a, b, nt), nt);
}

SegAgreementReport FleissKappaB(std::span<const FragmentSegmentations> corpus,
                                int nt, BedPooling pooling) {
  if (nt < 2) throw ValidationError("near-miss window nt must be at least 2");
  SegAgreementReport report;
  report.nt = nt;
  report.bed_pooling = pooling;
  report.fragments = static_cast<int>(corpus.size());

  struct Placement {
    std::int64_t placed = 0;
    std::int64_t potential = 0;
  };
  std::map<std::string, Placement> placement;
  std::set<std::pair<std::string, std::string>> coder_pairs;

  double b_sum = 0;
  std::int64_t edits_total = 0;
  std::int64_t potential_total = 0;
  std::vector<double> fragment_rates;

  for (const FragmentSegmentations &frag : corpus) {
    if (frag.layers.size() < 2 || frag.coders.size() != frag.layers.size()) {
      throw ValidationError("fragment '" + frag.fragment_id +
                            "' needs at least two coder layers");
    }
    std::int64_t frag_edits = 0;
    std::int64_t frag_potential = 0;
    for (size_t i = 0; i < frag.layers.size(); ++i) {
      Placement &p = placement[frag.coders[i]];
      p.placed += frag.layers[i].boundary_count();
      p.potential += frag.layers[i].potential_boundaries();
      for (size_t j = i + 1; j < frag.layers.size(); ++j) {
        const BoundaryEditResult e =
            BoundaryEditDistance(frag.layers[i], frag.layers[j], nt);
        PairwiseSimilarity pair;
        pair.fragment_id = frag.fragment_id;
        pair.coder_a = frag.coders[i];
        pair.coder_b = frag.coders[j];
        pair.b = BoundarySimilarity(e, nt);
        pair.edit_count = e.edit_count();
        pair.potential_boundaries = frag.layers[i].potential_boundaries();
        b_sum += ToDouble(pair.b);
        frag_edits += pair.edit_count;
        frag_potential += pair.potential_boundaries;
        coder_pairs.insert(std::minmax(frag.coders[i], frag.coders[j]));
        report.pairwise.push_back(std::move(pair));
      }
    }
    edits_total += frag_edits;
    potential_total += frag_potential;
    if (frag_potential > 0) {
      fragment_rates.push_back(100.0 * static_cast<double>(frag_edits) /
                               static_cast<double>(frag_potential));
    }
  }
  report.coders = static_cast<int>(placement.size());

  if (report.pairwise.empty()) {
    throw ValidationError("no coder pairs to compare");
  }
  report.mean_b = b_sum / static_cast<double>(report.pairwise.size());

  if (pooling == BedPooling::kGlobal) {
    report.bed_per_100 =
        potential_total > 0 ? 100.0 * static_cast<double>(edits_total) /
                                  static_cast<double>(potential_total)
                            : 0.0;
  } else {
    double sum = 0;
    for (double r : fragment_rates) sum += r;
    report.bed_per_100 =
        fragment_rates.empty() ? 0.0
                               : sum / static_cast<double>(fragment_rates.size());
  }

  auto rate = [&placement](const std::string &coder) {
    const Placement &p = placement.at(coder);
    return p.potential > 0 ? static_cast<double>(p.placed) /
                                 static_cast<double>(p.potential)
                           : 0.0;
  };
  double ae = 0;
  for (const auto &[c1, c2] : coder_pairs) ae += rate(c1) * rate(c2);
  ae /= static_cast<double>(coder_pairs.size());
  report.expected_agreement = ae;

  std::int64_t placed_total = 0;
  for (const auto &[coder, p] : placement) placed_total += p.placed;
  if (placed_total == 0) {
    report.kappa_undefined_reason = "no coder placed any boundary";
  } else if (ae >= 1.0) {
    report.kappa_undefined_reason = "chance agreement is 1";
  } else {
    report.kappa_b = (report.mean_b - ae) / (1.0 - ae);
  }
  return report;
}

BaselineFragment DescribeForBaseline(const FragmentSegmentations &fragment) {
  BaselineFragment out;
  out.fragment_id = fragment.fragment_id;
  if (fragment.layers.empty()) return out;
  out.atoms = fragment.layers.front().atoms();
  double sum = 0;
  for (const Segmentation &s : fragment.layers) sum += s.boundary_count();
  out.mean_boundaries = sum / static_cast<double>(fragment.layers.size());
  return out;
}

Segmentation BaselineSegmentation(const BaselineFragment &fragment,
                                  std::uint64_t seed, int coder) {
  const int potential = fragment.atoms > 0 ? fragment.atoms - 1 : 0;
  const int count = std::clamp(
      static_cast<int>(std::llround(fragment.mean_boundaries)), 0, potential);
  // Derive an independent stream per (seed, fragment, coder).
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(coder)};
  std::vector<std::uint32_t> words(2);
  seq.generate(words.begin(), words.end());
  std::uint64_t stream = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  for (unsigned char ch : fragment.fragment_id) {
    stream = (stream ^ ch) * 0x100000001b3ULL;
  }
  return RandomSegmentation(fragment.atoms, count, stream);
}

BaselineReport RandomBaselineExperiment(
    std::span<const BaselineFragment> corpus,
    std::span<const std::uint64_t> seeds, int nt) {
  BaselineReport report;
  report.nt = nt;
  double kappa_sum = 0;
  double bed_sum = 0;
  for (std::uint64_t seed : seeds) {
    std::vector<FragmentSegmentations> simulated;
    simulated.reserve(corpus.size());
    for (const BaselineFragment &f : corpus) {
      FragmentSegmentations fs;
      fs.fragment_id = f.fragment_id;
      fs.coders = {"random-1", "random-2"};
      fs.layers = {BaselineSegmentation(f, seed, 1),
                   BaselineSegmentation(f, seed, 2)};
      simulated.push_back(std::move(fs));
    }
    const SegAgreementReport r = FleissKappaB(simulated, nt);
    BaselineRun run{seed, r.kappa_b, r.bed_per_100, r.mean_b};
    if (run.kappa_b) {
      const double k = *run.kappa_b;
      if (report.kappa_b.defined == 0) {
        report.kappa_b.min = report.kappa_b.max = k;
      }
      report.kappa_b.min = std::min(report.kappa_b.min, k);
      report.kappa_b.max = std::max(report.kappa_b.max, k);
      kappa_sum += k;
      ++report.kappa_b.defined;
    } else {
      ++report.undefined_kappa;
    }
    if (report.bed_per_100.defined == 0) {
      report.bed_per_100.min = report.bed_per_100.max = run.bed_per_100;
    }
    report.bed_per_100.min = std::min(report.bed_per_100.min, run.bed_per_100);
    report.bed_per_100.max = std::max(report.bed_per_100.max, run.bed_per_100);
    bed_sum += run.bed_per_100;
    ++report.bed_per_100.defined;
    report.runs.push_back(run);
  }
  if (report.kappa_b.defined > 0) {
    report.kappa_b.mean = kappa_sum / report.kappa_b.defined;
  }
  if (report.bed_per_100.defined > 0) {
    report.bed_per_100.mean = bed_sum / report.bed_per_100.defined;
  }
  return report;
}

}  // namespace labov
