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

#ifndef LABOV_SEGMENTATION_H_
#define LABOV_SEGMENTATION_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace labov {

enum class AtomBasis { kCharacter };

std::string_view AtomBasisName(AtomBasis basis);

// A segmentation of a text of atoms() atoms, stored as segment masses.
// Boundary positions are numbered 1..atoms()-1; position p lies between
// atom p-1 and atom p (0-based atoms).
class Segmentation {
 public:
  Segmentation() = default;

  // Throws ValidationError if any mass is < 1.
  explicit Segmentation(std::vector<int> masses,
                        AtomBasis basis = AtomBasis::kCharacter);

  // Builds a segmentation from boundary positions. Positions may be given in
  // any order; duplicates and positions outside 1..atoms-1 throw
  // std::out_of_range / ValidationError.
  static Segmentation FromBoundaries(int atoms, std::span<const int> positions,
                                     AtomBasis basis = AtomBasis::kCharacter);

  const std::vector<int> &masses() const { return masses_; }
  AtomBasis basis() const { return basis_; }

  int atoms() const { return atoms_; }
  int segment_count() const { return static_cast<int>(masses_.size()); }
  int boundary_count() const {
    return masses_.empty() ? 0 : segment_count() - 1;
  }
  int potential_boundaries() const { return atoms_ > 0 ? atoms_ - 1 : 0; }

  // Sorted boundary positions.
  std::vector<int> Boundaries() const;

  // Atom offset at which segment i (0-based) starts.
  int SegmentStart(int i) const;

  bool operator==(const Segmentation &other) const = default;

 private:
  std::vector<int> masses_;
  AtomBasis basis_ = AtomBasis::kCharacter;
  int atoms_ = 0;
};

// Segmentation over a text's atoms. `text` is normalized before counting.
// Throws std::out_of_range for a boundary beyond the text.
Segmentation ToSegmentation(std::span<const int> boundaries,
                            std::string_view text);

// Uniformly samples boundary_count distinct positions out of atoms-1.
// Deterministic for a given seed.
Segmentation RandomSegmentation(int atoms, int boundary_count,
                                std::uint64_t seed);

}  // namespace labov

#endif  // LABOV_SEGMENTATION_H_
