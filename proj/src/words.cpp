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

#include "ncm/words.hpp"

#include <algorithm>
#include <charconv>

#include "ncm/error.hpp"
#include "ncm/tolerances.hpp"

namespace ncm {

Word Word::append(int letter) const {
  std::vector<int> out = letters_;
  out.push_back(letter);
  return Word(std::move(out));
}

Word Word::reversed() const { return Word(std::vector<int>(letters_.rbegin(), letters_.rend())); }

std::string Word::to_string() const {
  if (letters_.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i > 0) out.push_back('.');
    out += std::to_string(letters_[i]);
  }
  return out;
}

Word Word::parse(std::string_view text) {
  if (text == "-" || text.empty()) return Word();
  std::vector<int> letters;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t dot = std::min(text.find('.', pos), text.size());
    const std::string_view piece = text.substr(pos, dot - pos);
    int letter = 0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), letter);
    if (ec != std::errc() || ptr != piece.data() + piece.size() || letter < 1) {
      throw ShapeError("malformed word '" + std::string(text) + "'");
    }
    letters.push_back(letter);
    pos = dot + 1;
  }
  return Word(std::move(letters));
}

Word concat(const Word& a, const Word& b) {
  std::vector<int> out = a.letters();
  out.insert(out.end(), b.letters().begin(), b.letters().end());
  return Word(std::move(out));
}

bool split_prefix(const Word& c, const Word& b, Word* suffix) {
  if (b.size() > c.size()) return false;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (c[i] != b[i]) return false;
  }
  if (suffix != nullptr) {
    *suffix = Word(std::vector<int>(c.letters().begin() + static_cast<std::ptrdiff_t>(b.size()),
                                    c.letters().end()));
  }
  return true;
}

WordIndex::WordIndex(int d, int max_len) : d_(d), max_len_(max_len), total_(0) {
  if (d < 1) throw ShapeError("WordIndex: alphabet size must be >= 1");
  if (max_len < 0) throw ShapeError("WordIndex: max_len must be >= 0");
  std::size_t level = 1;
  offsets_.reserve(static_cast<std::size_t>(max_len) + 2);
  for (int n = 0; n <= max_len; ++n) {
    offsets_.push_back(total_);
    total_ += level;
    if (total_ > kMaxWords) {
      throw GuardError("word enumeration exceeds " + std::to_string(kMaxWords) + " words (d=" +
                       std::to_string(d) + ", max_len=" + std::to_string(max_len) + ")");
    }
    level *= static_cast<std::size_t>(d);
  }
  offsets_.push_back(total_);
}

std::size_t WordIndex::level_size(int length) const {
  const auto l = static_cast<std::size_t>(length);
  return offsets_[l + 1] - offsets_[l];
}

std::size_t WordIndex::index_of(const Word& w) const {
  if (w.size() > static_cast<std::size_t>(max_len_)) {
    throw ShapeError("word " + w.to_string() + " is longer than max_len");
  }
  std::size_t rank = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 1 || w[i] > d_) throw ShapeError("letter out of range in word " + w.to_string());
    rank = rank * static_cast<std::size_t>(d_) + static_cast<std::size_t>(w[i] - 1);
  }
  return offsets_[w.size()] + rank;
}

Word WordIndex::word_at(std::size_t index) const {
  if (index >= total_) throw ShapeError("word index out of range");
  int length = 0;
  while (offsets_[static_cast<std::size_t>(length) + 1] <= index) ++length;
  std::size_t rank = index - offsets_[static_cast<std::size_t>(length)];
  std::vector<int> letters(static_cast<std::size_t>(length));
  for (int i = length - 1; i >= 0; --i) {
    letters[static_cast<std::size_t>(i)] = static_cast<int>(rank % static_cast<std::size_t>(d_)) + 1;
    rank /= static_cast<std::size_t>(d_);
  }
  return Word(std::move(letters));
}

std::vector<Word> enumerate(int d, int max_len) {
  const WordIndex index(d, max_len);
  std::vector<Word> out;
  out.reserve(index.total());
  out.emplace_back();
  // Level n+1 is level n with each letter appended, which keeps the
  // length-then-lexicographic order.
  for (int n = 1; n <= max_len; ++n) {
    const std::size_t begin = index.offset(n - 1);
    const std::size_t end = index.offset(n);
    for (std::size_t i = begin; i < end; ++i) {
      for (int j = 1; j <= d; ++j) out.push_back(out[i].append(j));
    }
  }
  return out;
}

}  // namespace ncm
