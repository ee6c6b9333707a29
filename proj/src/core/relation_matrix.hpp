// Copyright 2026 The hcdgraph Authors.
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

// Token x token relation matrices over the packed pair
//
//   [CLS] advice-1 subtokens [SEP] advice-2 subtokens [SEP]
//
// Cell (i, j) holds a relation-vocabulary id:
//   - words u != w whose aligned concepts are joined by an edge (cu, r, cw)
//     get r, and (w, u) gets the inverse role; the :conflict edge is written
//     in both directions unchanged. Labels missing from the vocabulary map
//     to <unk>. When several edges apply, the first in graph order wins.
//   - the block of a word with itself gets the constant of the first
//     attribute on the word's first aligned concept, otherwise "self".
//   - every non-special position points to its segment start with "bos":
//     [CLS] for advice 1, the first [SEP] for advice 2.
//   - special positions get "self" on the diagonal.
//   - everything else is "None".
// Word-level labels are copied to every subtoken cell of the word block.

#ifndef HCD_CORE_RELATION_MATRIX_HPP_
#define HCD_CORE_RELATION_MATRIX_HPP_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "core/alignment.hpp"
#include "core/amr.hpp"
#include "core/tdgl.hpp"

namespace hcd::relmat {

using LabelId = std::uint32_t;

class RelationVocab {
 public:
  static constexpr LabelId kNone = 0;
  static constexpr LabelId kSelf = 1;
  static constexpr LabelId kBos = 2;
  static constexpr LabelId kUnk = 3;
  static constexpr LabelId kConflict = 4;
  static constexpr std::size_t kReservedCount = 5;

  // Holds exactly the reserved labels.
  RelationVocab();

  // Returns the id of label, appending it if new.
  LabelId add(std::string_view label);

  // Id of label, or kUnk when absent.
  LabelId lookup(std::string_view label) const;
  bool contains(std::string_view label) const;

  const std::string& label(LabelId id) const { return labels_.at(id); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

  // One label per line; line number (from 0) is the id.
  void write(std::ostream& out) const;
  // Throws FormatError when the reserved prefix is missing or a label
  // repeats.
  static RelationVocab read(std::istream& in);

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, LabelId> index_;
};

// Reserved labels, then for each graph in order: every edge role followed by
// its inverse, then every attribute constant.
RelationVocab build_vocab(std::span<const amr::Graph> training_graphs);

struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const { return end - begin; }
  bool operator==(const Range&) const = default;
};

struct SubtokenMap {
  // One contiguous range per packed word: advice-1 words, then advice-2
  // words.
  std::vector<Range> groups;
  std::size_t cls = 0;
  std::size_t first_sep = 0;
  std::size_t final_sep = 0;
  std::size_t length = 0;

  // Builds the standard layout from per-word subtoken counts (each >= 1).
  static SubtokenMap from_counts(std::span<const std::size_t> first,
                                 std::span<const std::size_t> second);
};

// Test splitter: words longer than threshold code points become two
// subtokens, all others one. threshold 0 disables splitting.
std::vector<std::size_t> naive_subtoken_counts(
    const std::vector<std::string>& words, std::size_t threshold);

class RelationMatrix {
 public:
  RelationMatrix() = default;
  explicit RelationMatrix(std::size_t size)
      : size_(size), cells_(size * size, RelationVocab::kNone) {}

  std::size_t size() const { return size_; }
  LabelId at(std::size_t i, std::size_t j) const {
    return cells_[i * size_ + j];
  }
  void set(std::size_t i, std::size_t j, LabelId id) {
    cells_[i * size_ + j] = id;
  }
  std::size_t non_none_count() const;

  bool operator==(const RelationMatrix&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<LabelId> cells_;
};

// Throws LayoutMismatch when the subtoken map does not tile the packed
// sequence or its word counts disagree with the alignments, and
// AlignmentOutOfRange when an alignment entry falls outside its advice or
// names an unknown variable.
RelationMatrix build_matrix(const tdgl::LinkedGraph& lg,
                            const align::TokenAlignment& first,
                            const align::TokenAlignment& second,
                            const SubtokenMap& layout,
                            const RelationVocab& vocab);

// A single graph over advice 1 with an empty second segment.
RelationMatrix build_single_matrix(const amr::Graph& graph,
                                   const align::TokenAlignment& alignment,
                                   const SubtokenMap& layout,
                                   const RelationVocab& vocab);

// Sparse stream: a header line "L<TAB>V", then "i<TAB>j<TAB>id" for every
// non-None cell in row-major order. Every line ends with '\n'.
void write_matrix(std::ostream& out, const RelationMatrix& m,
                  const RelationVocab& vocab);
void write_matrix(std::ostream& out, const RelationMatrix& m,
                  std::size_t vocab_size);
std::string serialize_matrix(const RelationMatrix& m,
                             const RelationVocab& vocab);

struct MatrixFile {
  RelationMatrix matrix;
  std::size_t vocab_size = 0;
};

// Throws FormatError on any deviation from the stream format.
MatrixFile read_matrix(std::istream& in);

}  // namespace hcd::relmat

#endif  // HCD_CORE_RELATION_MATRIX_HPP_
