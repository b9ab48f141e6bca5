#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hcsim {

using Count = std::int64_t;

/// Term -> occurrence count, with the total kept in sync.
///
/// Terms are stored in lexicographic order so that iteration (and anything
/// serialized from it) is deterministic.
class FrequencyTable {
public:
  using Map = std::map<std::string, Count, std::less<>>;

  FrequencyTable() = default;

  FrequencyTable(std::initializer_list<std::pair<const std::string, Count>> init) {
    for (const auto& [term, count] : init) add(term, count);
  }

  /// Adds `count` occurrences of `term`. A zero count still records the term.
  void add(std::string_view term, Count count = 1) {
    if (count < 0) throw std::invalid_argument("negative count for term '" + std::string(term) + "'");
    auto it = counts_.find(term);
    if (it == counts_.end()) {
      counts_.emplace(std::string(term), count);
    } else {
      it->second += count;
    }
    total_ += count;
  }

  /// Removes `count` occurrences; drops the term when it reaches zero.
  void subtract(std::string_view term, Count count) {
    auto it = counts_.find(term);
    if (it == counts_.end() || it->second < count || count < 0) {
      throw std::invalid_argument("cannot subtract " + std::to_string(count) + " of '" +
                                  std::string(term) + "'");
    }
    it->second -= count;
    total_ -= count;
    if (it->second == 0) counts_.erase(it);
  }

  Count count(std::string_view term) const {
    auto it = counts_.find(term);
    return it == counts_.end() ? 0 : it->second;
  }

  bool contains(std::string_view term) const { return counts_.find(term) != counts_.end(); }

  Count total() const { return total_; }
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  const Map& counts() const { return counts_; }
  auto begin() const { return counts_.begin(); }
  auto end() const { return counts_.end(); }

  /// Term-wise sum.
  FrequencyTable& operator+=(const FrequencyTable& other) {
    for (const auto& [term, c] : other) add(term, c);
    return *this;
  }

  friend bool operator==(const FrequencyTable& a, const FrequencyTable& b) {
    return a.total_ == b.total_ && a.counts_ == b.counts_;
  }

private:
  Map counts_;
  Count total_ = 0;
};

/// Ordered list of unique terms; its size is the N of the HC statistic.
class Vocabulary {
public:
  Vocabulary() = default;

  explicit Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
    std::unordered_set<std::string> seen;
    seen.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!seen.insert(t).second) throw std::invalid_argument("duplicate vocabulary term '" + t + "'");
    }
  }

  Vocabulary(std::initializer_list<std::string> terms) : Vocabulary(std::vector<std::string>(terms)) {}

  const std::vector<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  const std::string& operator[](std::size_t i) const { return terms_[i]; }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

  /// 64-bit FNV-1a over the newline-joined terms, as 16 hex digits.
  std::string digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](unsigned char c) {
      h ^= c;
      h *= 1099511628211ULL;
    };
    for (const auto& t : terms_) {
      for (unsigned char c : t) mix(c);
      mix('\n');
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xF];
    return out;
  }

private:
  std::vector<std::string> terms_;
};

/// Sum of the table's counts over the vocabulary terms.
inline Count total_over(const FrequencyTable& table, const Vocabulary& vocab) {
  Count n = 0;
  for (const auto& t : vocab) n += table.count(t);
  return n;
}

}  // namespace hcsim
