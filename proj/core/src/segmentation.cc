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

#include "labov/segmentation.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "labov/errors.h"
#include "labov/text.h"

namespace labov {

std::string_view AtomBasisName(AtomBasis basis) {
  switch (basis) {
    case AtomBasis::kCharacter: return "character";
  }
  return "";
}

Segmentation::Segmentation(std::vector<int> masses, AtomBasis basis)
    : masses_(std::move(masses)), basis_(basis) {
  for (int m : masses_) {
    if (m < 1) {
      throw ValidationError("segment mass " + std::to_string(m) +
                            " is not positive");
    }
    atoms_ += m;
  }
}

Segmentation Segmentation::FromBoundaries(int atoms,
                                          std::span<const int> positions,
                                          AtomBasis basis) {
  if (atoms < 0) throw ValidationError("negative atom count");
  std::vector<int> sorted(positions.begin(), positions.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("duplicate boundary position");
  }
  if (!sorted.empty() && (sorted.front() < 1 || sorted.back() > atoms - 1)) {
    throw std::out_of_range("boundary position outside 1.." +
                            std::to_string(atoms - 1));
  }
  if (atoms == 0) return Segmentation({}, basis);
  std::vector<int> masses;
  masses.reserve(sorted.size() + 1);
  int prev = 0;
  for (int p : sorted) {
    masses.push_back(p - prev);
    prev = p;
  }
  masses.push_back(atoms - prev);
  return Segmentation(std::move(masses), basis);
}

std::vector<int> Segmentation::Boundaries() const {
  std::vector<int> out;
  if (masses_.empty()) return out;
  out.reserve(masses_.size() - 1);
  int pos = 0;
  for (size_t i = 0; i + 1 < masses_.size(); ++i) {
    pos += masses_[i];
    out.push_back(pos);
  }
  return out;
}

int Segmentation::SegmentStart(int i) const {
  if (i < 0 || i > segment_count()) throw std::out_of_range("segment index");
  return std::accumulate(masses_.begin(), masses_.begin() + i, 0);
}

Segmentation ToSegmentation(std::span<const int> boundaries,
                            std::string_view text) {
  const int atoms = AtomCount(NormalizeText(text));
  return Segmentation::FromBoundaries(atoms, boundaries);
}

Segmentation RandomSegmentation(int atoms, int boundary_count,
                                std::uint64_t seed) {
  if (atoms < 0) throw ValidationError("negative atom count");
  const int potential = atoms > 0 ? atoms - 1 : 0;
  if (boundary_count < 0 || boundary_count > potential) {
    throw ValidationError("cannot place " + std::to_string(boundary_count) +
                          " boundaries in " + std::to_string(potential) +
                          " positions");
  }
  std::vector<int> all(potential);
  std::iota(all.begin(), all.end(), 1);
  std::vector<int> chosen;
  chosen.reserve(boundary_count);
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(chosen),
              boundary_count, rng);
  return Segmentation::FromBoundaries(atoms, chosen);
}

}  // namespace labov
