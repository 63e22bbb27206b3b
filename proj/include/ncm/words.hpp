// Copyright 2026 The ncmarkov Authors
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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ncm {

/// Element of the free semigroup on letters 1..d, stored in time order.
///
/// Stored position 0 holds the letter applied first. The right-to-left
/// notation alpha = alpha_n ... alpha_1 therefore corresponds to the stored
/// sequence (alpha_1, ..., alpha_n), and "prepend j on the left" (j alpha) is
/// `append(j)` here. The reversed word is the stored sequence read backwards.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<int>& letters() const { return letters_; }

  Word append(int letter) const;
  Word reversed() const;

  /// Dot-separated letters in time order ("1.2.2"); "-" for the empty word.
  std::string to_string() const;
  static Word parse(std::string_view text);

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<int> letters_;
};

Word concat(const Word& a, const Word& b);

/// If c = b ++ a, returns true and stores a in *suffix.
bool split_prefix(const Word& c, const Word& b, Word* suffix);

/// Bijection between {0, ..., total-1} and the words of length <= max_len,
/// ordered by length and then lexicographically on stored letters. Every
/// proper prefix of a word has a smaller index.
class WordIndex {
 public:
  /// Throws GuardError when the word count exceeds kMaxWords.
  WordIndex(int d, int max_len);

  int d() const { return d_; }
  int max_len() const { return max_len_; }
  std::size_t total() const { return total_; }
  /// Index of the first word of the given length.
  std::size_t offset(int length) const { return offsets_[static_cast<std::size_t>(length)]; }
  /// Number of words of exactly the given length.
  std::size_t level_size(int length) const;

  std::size_t index_of(const Word& w) const;
  Word word_at(std::size_t index) const;

 private:
  int d_;
  int max_len_;
  std::size_t total_;
  std::vector<std::size_t> offsets_;
};

std::vector<Word> enumerate(int d, int max_len);

}  // namespace ncm
