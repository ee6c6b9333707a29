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

#include "core/relation_matrix.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "core/error.hpp"
#include "core/text.hpp"

namespace hcd::relmat {

// ---------------------------------------------------------------------------
// Vocabulary

RelationVocab::RelationVocab() {
  for (const char* label : {"None", "self", "bos", "<unk>", ":conflict"}) {
    add(label);
  }
}

LabelId RelationVocab::add(std::string_view label) {
  auto it = index_.find(std::string(label));
  if (it != index_.end()) return it->second;
  const auto id = static_cast<LabelId>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), id);
  return id;
}

LabelId RelationVocab::lookup(std::string_view label) const {
  auto it = index_.find(std::string(label));
  return it == index_.end() ? kUnk : it->second;
}

bool RelationVocab::contains(std::string_view label) const {
  return index_.count(std::string(label)) > 0;
}

void RelationVocab::write(std::ostream& out) const {
  for (const std::string& label : labels_) {
    if (label.find_first_of("\r\n") != std::string::npos) {
      throw Error(ErrorCode::kFormatError,
                  "label contains a line break: '" + label + "'");
    }
    out << label << '\n';
  }
}

RelationVocab RelationVocab::read(std::istream& in) {
  RelationVocab reserved;
  RelationVocab v;
  v.labels_.clear();
  v.index_.clear();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no < kReservedCount && line != reserved.label(line_no)) {
      throw Error(ErrorCode::kFormatError,
                  "vocabulary line " + std::to_string(line_no + 1) +
                      " must be '" + reserved.label(line_no) + "'");
    }
    if (v.contains(line)) {
      throw Error(ErrorCode::kFormatError,
                  "vocabulary label '" + line + "' repeats on line " +
                      std::to_string(line_no + 1));
    }
    v.add(line);
    ++line_no;
  }
  if (line_no < kReservedCount) {
    throw Error(ErrorCode::kFormatError,
                "vocabulary is missing reserved labels");
  }
  return v;
}

RelationVocab build_vocab(std::span<const amr::Graph> training_graphs) {
  RelationVocab v;
  for (const amr::Graph& g : training_graphs) {
    for (const amr::Edge& e : g.edges) {
      v.add(e.relation);
      v.add(amr::inverse_relation(e.relation));
    }
    for (const amr::Attribute& a : g.attributes) v.add(a.value);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Layout

SubtokenMap SubtokenMap::from_counts(std::span<const std::size_t> first,
                                     std::span<const std::size_t> second) {
  SubtokenMap m;
  std::size_t pos = 0;
  m.cls = pos++;
  auto place = [&](std::span<const std::size_t> counts) {
    for (std::size_t c : counts) {
      if (c == 0) {
        throw Error(ErrorCode::kLayoutMismatch,
                    "a word must have at least one subtoken");
      }
      m.groups.push_back({pos, pos + c});
      pos += c;
    }
  };
  place(first);
  m.first_sep = pos++;
  place(second);
  m.final_sep = pos++;
  m.length = pos;
  return m;
}

std::vector<std::size_t> naive_subtoken_counts(
    const std::vector<std::string>& words, std::size_t threshold) {
  std::vector<std::size_t> counts;
  counts.reserve(words.size());
  for (const std::string& w : words) {
    const bool split = threshold > 0 && text::decode_utf8(w).size() > threshold;
    counts.push_back(split ? 2 : 1);
  }
  return counts;
}

std::size_t RelationMatrix::non_none_count() const {
  return static_cast<std::size_t>(std::count_if(
      cells_.begin(), cells_.end(),
      [](LabelId id) { return id != RelationVocab::kNone; }));
}

// ---------------------------------------------------------------------------
// Construction

namespace {

struct Segment {
  const align::TokenAlignment* alignment;
  // Maps alignment variables to merged-graph variables.
  const tdgl::LinkedGraph* rename = nullptr;
};

// Checks that specials and groups tile [0, length) in the packed order and
// returns the number of advice-1 groups.
std::size_t check_layout(const SubtokenMap& m, std::size_t words1,
                         std::size_t words2) {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::kLayoutMismatch, why);
  };
  if (m.groups.size() != words1 + words2) {
    fail("subtoken map has " + std::to_string(m.groups.size()) +
         " word groups, alignments cover " + std::to_string(words1 + words2) +
         " words");
  }
  std::size_t pos = 0;
  if (m.cls != pos++) fail("[CLS] must open the packed sequence");
  for (std::size_t w = 0; w < m.groups.size(); ++w) {
    if (w == words1) {
      if (m.first_sep != pos++) fail("first [SEP] is misplaced");
    }
    const Range& g = m.groups[w];
    if (g.begin != pos || g.end <= g.begin) {
      fail("word group " + std::to_string(w) + " does not tile the sequence");
    }
    pos = g.end;
  }
  if (words1 == m.groups.size()) {
    if (m.first_sep != pos++) fail("first [SEP] is misplaced");
  }
  if (m.final_sep != pos++) fail("final [SEP] is misplaced");
  if (m.length != pos) fail("sequence length does not match the layout");
  return words1;
}

class Builder {
 public:
  Builder(const std::vector<amr::Node>& nodes,
          const std::vector<amr::Edge>& edges,
          const std::vector<amr::Attribute>& attributes,
          const RelationVocab& vocab)
      : nodes_(nodes), edges_(edges), attributes_(attributes), vocab_(vocab) {}

  RelationMatrix build(const std::vector<Segment>& segments,
                       const SubtokenMap& layout) {
    const std::size_t words1 = segments[0].alignment->token_count;
    const std::size_t words2 =
        segments.size() > 1 ? segments[1].alignment->token_count : 0;
    check_layout(layout, words1, words2);

    // Merged-graph concepts aligned to each packed word, entry order.
    std::vector<std::vector<std::string>> word_concepts;
    for (const Segment& seg : segments) {
      const align::TokenAlignment& a = *seg.alignment;
      for (const align::Entry& e : a.entries) {
        if (e.span.start >= e.span.end || e.span.end > a.token_count) {
          throw Error(ErrorCode::kAlignmentOutOfRange,
                      "span " + std::to_string(e.span.start) + "-" +
                          std::to_string(e.span.end) + " exceeds " +
                          std::to_string(a.token_count) + " words");
        }
      }
      for (std::size_t i = 0; i < a.token_count; ++i) {
        std::vector<std::string> merged;
        for (const std::string& var : align::concepts_for_token(a, i)) {
          merged.push_back(map_variable(seg, var));
        }
        word_concepts.push_back(std::move(merged));
      }
    }

    const std::size_t n = word_concepts.size();
    std::vector<LabelId> words(n * n, RelationVocab::kNone);

    // Off-diagonal relations; first matching edge per cell wins.
    std::unordered_map<std::string, std::vector<std::size_t>> words_of;
    for (std::size_t u = 0; u < n; ++u) {
      for (const std::string& c : word_concepts[u]) words_of[c].push_back(u);
    }
    for (const amr::Edge& e : edges_) {
      if (e.source == e.target) continue;
      auto s = words_of.find(e.source);
      auto t = words_of.find(e.target);
      if (s == words_of.end() || t == words_of.end()) continue;
      const bool conflict = e.relation == tdgl::kConflictRelation;
      const LabelId forward =
          conflict ? RelationVocab::kConflict : vocab_.lookup(e.relation);
      const LabelId backward =
          conflict ? RelationVocab::kConflict
                   : vocab_.lookup(amr::inverse_relation(e.relation));
      // Forward cells first so that, within one edge, the forward label
      // wins a cell both directions reach.
      for (std::size_t u : s->second) {
        for (std::size_t w : t->second) {
          LabelId& fw = words[u * n + w];
          if (u != w && fw == RelationVocab::kNone) fw = forward;
        }
      }
      for (std::size_t u : s->second) {
        for (std::size_t w : t->second) {
          LabelId& bw = words[w * n + u];
          if (u != w && bw == RelationVocab::kNone) bw = backward;
        }
      }
    }

    // Diagonal: modifier constant of the first aligned concept, else self.
    for (std::size_t u = 0; u < n; ++u) {
      LabelId diag = RelationVocab::kSelf;
      if (!word_concepts[u].empty()) {
        const std::string& head = word_concepts[u].front();
        for (const amr::Attribute& a : attributes_) {
          if (a.owner == head) {
            diag = vocab_.lookup(a.value);
            break;
          }
        }
      }
      words[u * n + u] = diag;
    }

    RelationMatrix m(layout.length);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t w = 0; w < n; ++w) {
        const LabelId id = words[u * n + w];
        if (id == RelationVocab::kNone) continue;
        for (std::size_t i = layout.groups[u].begin; i < layout.groups[u].end;
             ++i) {
          for (std::size_t j = layout.groups[w].begin;
               j < layout.groups[w].end; ++j) {
            m.set(i, j, id);
          }
        }
      }
    }
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t start = u < words1 ? layout.cls : layout.first_sep;
      for (std::size_t i = layout.groups[u].begin; i < layout.groups[u].end;
           ++i) {
        m.set(i, start, RelationVocab::kBos);
      }
    }
    for (std::size_t s : {layout.cls, layout.first_sep, layout.final_sep}) {
      m.set(s, s, RelationVocab::kSelf);
    }
    return m;
  }

 private:
  std::string map_variable(const Segment& seg, const std::string& var) const {
    std::string merged = var;
    if (seg.rename != nullptr) {
      try {
        merged = seg.rename->renamed(var);
      } catch (const Error&) {
        throw Error(ErrorCode::kAlignmentOutOfRange,
                    "alignment names unknown variable '" + var + "'");
      }
    }
    const bool known = std::any_of(
        nodes_.begin(), nodes_.end(),
        [&](const amr::Node& node) { return node.variable == merged; });
    if (!known) {
      throw Error(ErrorCode::kAlignmentOutOfRange,
                  "alignment names unknown variable '" + var + "'");
    }
    return merged;
  }

  const std::vector<amr::Node>& nodes_;
  const std::vector<amr::Edge>& edges_;
  const std::vector<amr::Attribute>& attributes_;
  const RelationVocab& vocab_;
};

}  // namespace

RelationMatrix build_matrix(const tdgl::LinkedGraph& lg,
                            const align::TokenAlignment& first,
                            const align::TokenAlignment& second,
                            const SubtokenMap& layout,
                            const RelationVocab& vocab) {
  Builder b(lg.nodes, lg.edges, lg.attributes, vocab);
  return b.build({{&first, nullptr}, {&second, &lg}}, layout);
}

RelationMatrix build_single_matrix(const amr::Graph& graph,
                                   const align::TokenAlignment& alignment,
                                   const SubtokenMap& layout,
                                   const RelationVocab& vocab) {
  Builder b(graph.nodes, graph.edges, graph.attributes, vocab);
  return b.build({{&alignment, nullptr}}, layout);
}

// ---------------------------------------------------------------------------
// Sparse stream

void write_matrix(std::ostream& out, const RelationMatrix& m,
                  const RelationVocab& vocab) {
  write_matrix(out, m, vocab.size());
}

void write_matrix(std::ostream& out, const RelationMatrix& m,
                  std::size_t vocab_size) {
  out << m.size() << '\t' << vocab_size << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      const LabelId id = m.at(i, j);
      if (id != RelationVocab::kNone) {
        out << i << '\t' << j << '\t' << id << '\n';
      }
    }
  }
}

std::string serialize_matrix(const RelationMatrix& m,
                             const RelationVocab& vocab) {
  std::ostringstream out;
  write_matrix(out, m, vocab);
  return out.str();
}

namespace {

std::vector<std::size_t> parse_fields(const std::string& line,
                                      std::size_t line_no,
                                      std::size_t expected) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    const std::size_t end = tab == std::string::npos ? line.size() : tab;
    std::size_t value = 0;
    auto [ptr, ec] =
        std::from_chars(line.data() + start, line.data() + end, value);
    if (ec != std::errc() || ptr != line.data() + end || end == start) {
      throw Error(ErrorCode::kFormatError,
                  "matrix line " + std::to_string(line_no) +
                      ": bad integer field");
    }
    out.push_back(value);
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  if (out.size() != expected) {
    throw Error(ErrorCode::kFormatError,
                "matrix line " + std::to_string(line_no) + ": expected " +
                    std::to_string(expected) + " fields");
  }
  return out;
}

}  // namespace

MatrixFile read_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kFormatError, "matrix stream is empty");
  }
  const std::vector<std::size_t> header = parse_fields(line, 1, 2);
  MatrixFile f{RelationMatrix(header[0]), header[1]};
  std::size_t line_no = 1;
  std::size_t last = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::size_t> rec = parse_fields(line, line_no, 3);
    const std::size_t i = rec[0], j = rec[1], id = rec[2];
    if (i >= f.matrix.size() || j >= f.matrix.size()) {
      throw Error(ErrorCode::kFormatError,
                  "matrix line " + std::to_string(line_no) +
                      ": cell outside the matrix");
    }
    if (id == RelationVocab::kNone || id >= f.vocab_size) {
      throw Error(ErrorCode::kFormatError,
                  "matrix line " + std::to_string(line_no) +
                      ": invalid label id " + std::to_string(id));
    }
    const std::size_t flat = i * f.matrix.size() + j;
    if (any && flat <= last) {
      throw Error(ErrorCode::kFormatError,
                  "matrix line " + std::to_string(line_no) +
                      ": records are not in row-major order");
    }
    any = true;
    last = flat;
    f.matrix.set(i, j, static_cast<LabelId>(id));
  }
  return f;
}

}  // namespace hcd::relmat
