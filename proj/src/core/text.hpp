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

// Small text helpers shared by the alignment, linking, dataset and baseline
// modules. Everything here works on UTF-8 bytes; only ASCII letters are
// case-folded.

#ifndef HCD_CORE_TEXT_HPP_
#define HCD_CORE_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hcd::text {

std::string fold_case(std::string_view s);

// Decodes UTF-8 into code points. Invalid bytes decode to themselves so the
// function is total.
std::u32string decode_utf8(std::string_view s);

// Word tokenizer used for advice texts. A word is a maximal run of
// alphanumeric (or non-ASCII) characters; '-' and '\'' are kept when they
// sit between two word characters, so "full-fat" and "don't" stay whole.
// Everything else, punctuation included, separates words and is dropped.
// Alignment spans index into this word sequence.
std::vector<std::string> tokenize_words(std::string_view text);

// Lexical-feature tokenizer: case-folded, split on every run of
// non-alphanumeric ASCII characters.
std::vector<std::string> lexical_terms(std::string_view text);

// Number of sentences, splitting on '.', '!' and '?'. A sentence must contain
// at least one alphanumeric character, so trailing punctuation runs do not
// create empty sentences.
std::size_t count_sentences(std::string_view text);

std::vector<std::string> split_whitespace(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace hcd::text

#endif  // HCD_CORE_TEXT_HPP_
