//
// Copyright 2026 The Littlestone Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include <boost/container/small_vector.hpp>

namespace littlestone {

// Fixed-length packed bit sequence. Used both for hypotheses (one bit per
// domain point) and for subsets of a class (one bit per hypothesis index).
// Up to 128 bits are stored inline.
class Bits {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bits() = default;
  explicit Bits(std::size_t size, bool value = false)
      : size_(size), words_(word_count(size), value ? ~Word{0} : Word{0}) {
    trim();
  }

  static Bits from_string(const std::string& s) {
    Bits b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') b.set(i);
    }
    return b;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool test(std::size_t i) const {
    return (words_[i / kWordBits] >> (i % kWordBits)) & Word{1};
  }
  bool operator[](std::size_t i) const { return test(i); }

  void set(std::size_t i, bool value = true) {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void reset(std::size_t i) { set(i, false); }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
  }
  bool none() const { return !any(); }

  // Index of the lowest set bit, or size() if none.
  std::size_t find_first() const { return find_next_from(0); }
  std::size_t find_next(std::size_t i) const { return find_next_from(i + 1); }

  template <typename F>
  void for_each_set(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word word = words_[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        f(w * kWordBits + static_cast<std::size_t>(bit));
        word &= word - 1;
      }
    }
  }

  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bits& operator^=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  // this & ~o
  Bits& subtract(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  Bits operator~() const {
    Bits r(*this);
    for (Word& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }

  bool is_subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    }
    return true;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & o.words_[i]) != 0) return true;
    }
    return false;
  }

  friend bool operator==(const Bits& a, const Bits& b) {
    return a.size_ == b.size_ && std::equal(a.words_.begin(), a.words_.end(), b.words_.begin());
  }

  // Lexicographic order on the bit string, position 0 first, then by length.
  friend bool operator<(const Bits& a, const Bits& b) {
    const std::size_t common = std::min(a.size_, b.size_);
    const std::size_t full = common / kWordBits;
    for (std::size_t w = 0; w < full; ++w) {
      if (a.words_[w] != b.words_[w]) {
        const int bit = std::countr_zero(a.words_[w] ^ b.words_[w]);
        return ((a.words_[w] >> bit) & 1) == 0;
      }
    }
    for (std::size_t i = full * kWordBits; i < common; ++i) {
      if (a.test(i) != b.test(i)) return !a.test(i);
    }
    return a.size_ < b.size_;
  }

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if (test(i)) s[i] = '1';
    }
    return s;
  }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
    for (Word w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  static std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

  void trim() {
    const std::size_t tail = size_ % kWordBits;
    if (tail != 0 && !words_.empty()) words_.back() &= (Word{1} << tail) - 1;
  }

  std::size_t find_next_from(std::size_t i) const {
    if (i >= size_) return size_;
    std::size_t w = i / kWordBits;
    Word word = words_[w] & (~Word{0} << (i % kWordBits));
    while (true) {
      if (word != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(word));
      if (++w >= words_.size()) return size_;
      word = words_[w];
    }
  }

  std::size_t size_ = 0;
  boost::container::small_vector<Word, 2> words_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace littlestone
