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

#ifndef LABOV_SEG_AGREEMENT_H_
#define LABOV_SEG_AGREEMENT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "labov/model.h"
#include "labov/segmentation.h"

namespace labov {

inline constexpr int kDefaultNearMissWindow = 2;

// A boundary of `a` at `position` paired with a boundary of `b` at
// position + offset.
struct Transposition {
  int position = 0;
  int offset = 0;

  bool operator==(const Transposition &) const = default;
};

// Minimal boundary edit decomposition between two segmentations of the same
// text. Coincident boundaries are matches. Remaining boundaries are paired
// into transpositions when they lie within nt-1 positions of each other, and
// every boundary left over is an addition (an insertion or deletion, which
// cost the same). Among all pairings the one with the lowest cost
//   additions + sum(|offset|) / nt
// is chosen; ties go to the pairing with more transpositions.
struct BoundaryEditResult {
  int additions = 0;
  std::vector<Transposition> transpositions;
  int matches = 0;
  Rational raw_distance{0};  // additions + sum(|offset|) / nt

  // Number of edit operations (additions plus transpositions).
  int edit_count() const {
    return additions + static_cast<int>(transpositions.size());
  }
  std::int64_t offset_sum() const;
};

// Throws ValidationError if the atom counts differ or nt < 2.
BoundaryEditResult BoundaryEditDistance(const Segmentation &a,
                                        const Segmentation &b,
                                        int nt = kDefaultNearMissWindow);

// B = 1 - (additions + sum|offset|/nt) / (additions + transpositions +
// matches). Two segmentations without any boundary have B = 1.
Rational BoundarySimilarity(const Segmentation &a, const Segmentation &b,
                            int nt = kDefaultNearMissWindow);
Rational BoundarySimilarity(const BoundaryEditResult &edits, int nt);

// The coders' segmentations of one fragment.
struct FragmentSegmentations {
  std::string fragment_id;
  std::vector<std::string> coders;
  std::vector<Segmentation> layers;  // parallel to coders
};

struct PairwiseSimilarity {
  std::string fragment_id;
  std::string coder_a;
  std::string coder_b;
  Rational b{1};
  int edit_count = 0;
  int potential_boundaries = 0;
};

enum class BedPooling { kGlobal, kPerFragment };

struct SegAgreementReport {
  int nt = kDefaultNearMissWindow;
  AtomBasis atom_basis = AtomBasis::kCharacter;
  BedPooling bed_pooling = BedPooling::kGlobal;
  std::vector<PairwiseSimilarity> pairwise;
  double mean_b = 1.0;                  // observed agreement A_a
  double expected_agreement = 0.0;      // chance agreement A_e
  std::optional<double> kappa_b;        // absent when undefined
  std::string kappa_undefined_reason;   // set when kappa_b is absent
  double bed_per_100 = 0.0;
  int fragments = 0;
  int coders = 0;
};

// Fleiss-style kappa with pairwise agreement replaced by B.
//   A_a = mean B over all coder pairs and fragments
//   p_c = boundaries placed by coder c / potential positions (pooled)
//   A_e = mean over coder pairs of p_c * p_c'
//   kappa_B = (A_a - A_e) / (1 - A_e)
// kappa_B is undefined when A_e = 1 or when no coder placed any boundary.
// BED per 100 potential positions is pooled over all pairs (kGlobal) or
// averaged over per-fragment rates (kPerFragment).
// Throws ValidationError for fragments with fewer than two layers or
// mismatched atom counts.
SegAgreementReport FleissKappaB(std::span<const FragmentSegmentations> corpus,
                                int nt = kDefaultNearMissWindow,
                                BedPooling pooling = BedPooling::kGlobal);

// What the random baseline needs to know about a fragment.
struct BaselineFragment {
  std::string fragment_id;
  int atoms = 0;
  double mean_boundaries = 0.0;  // mean over human coders
};

BaselineFragment DescribeForBaseline(const FragmentSegmentations &fragment);

struct DistributionSummary {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  int defined = 0;  // samples that contributed
};

struct BaselineRun {
  std::uint64_t seed = 0;
  std::optional<double> kappa_b;
  double bed_per_100 = 0.0;
  double mean_b = 0.0;
};

struct BaselineReport {
  int nt = kDefaultNearMissWindow;
  AtomBasis atom_basis = AtomBasis::kCharacter;
  std::vector<BaselineRun> runs;
  DistributionSummary kappa_b;
  DistributionSummary bed_per_100;
  int undefined_kappa = 0;
};

// Random segmentation of one fragment for one simulated coder.
Segmentation BaselineSegmentation(const BaselineFragment &fragment,
                                  std::uint64_t seed, int coder);

// For every seed, two random coders segment every fragment with
// round(mean_boundaries) boundaries and the pair is scored like humans.
BaselineReport RandomBaselineExperiment(
    std::span<const BaselineFragment> corpus,
    std::span<const std::uint64_t> seeds, int nt = kDefaultNearMissWindow);

}  // namespace labov

#endif  // LABOV_SEG_AGREEMENT_H_
