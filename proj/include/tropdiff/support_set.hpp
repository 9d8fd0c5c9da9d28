#pragma once

#include "tropdiff/trop_value.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tropdiff {

/// A subset of Z>=0 of the form F ∪ [m, ∞) with F finite.
///
/// The representation is canonical: F is sorted and duplicate-free, every
/// element of F is below the tail start, and F never ends in the run
/// m-1, m-2, ... (such elements are absorbed into the tail). Two
/// SupportSets are therefore equal iff they denote the same set.
class SupportSet {
 public:
  SupportSet() = default;

  explicit SupportSet(std::vector<std::uint64_t> elements,
                      std::optional<std::uint64_t> tail_from = std::nullopt)
      : finite_(std::move(elements)), tail_(tail_from) {
    std::sort(finite_.begin(), finite_.end());
    finite_.erase(std::unique(finite_.begin(), finite_.end()), finite_.end());
    canonicalize();
  }

  /// [m, ∞).
  static SupportSet tail(std::uint64_t m) { return SupportSet({}, m); }

  const std::vector<std::uint64_t>& finite_part() const noexcept { return finite_; }
  const std::optional<std::uint64_t>& tail_from() const noexcept { return tail_; }

  bool empty() const noexcept { return finite_.empty() && !tail_; }
  bool is_finite() const noexcept { return !tail_; }

  bool contains(std::uint64_t j) const noexcept {
    if (tail_ && j >= *tail_) return true;
    return std::binary_search(finite_.begin(), finite_.end(), j);
  }

  /// Smallest element >= j, if any.
  std::optional<std::uint64_t> next_at_or_after(std::uint64_t j) const noexcept {
    auto it = std::lower_bound(finite_.begin(), finite_.end(), j);
    if (it != finite_.end()) return *it;
    if (tail_) return std::max(*tail_, j);
    return std::nullopt;
  }

  bool operator==(const SupportSet&) const = default;

  /// Lexicographic on the finite part, then finite sets before tailed ones,
  /// then by tail start.
  std::strong_ordering operator<=>(const SupportSet& o) const {
    if (auto c = finite_ <=> o.finite_; c != 0) return c;
    return tail_ <=> o.tail_;
  }

 private:
  void canonicalize() {
    if (!tail_) return;
    while (!finite_.empty() && finite_.back() >= *tail_) finite_.pop_back();
    while (!finite_.empty() && *tail_ > 0 && finite_.back() + 1 == *tail_) {
      finite_.pop_back();
      --*tail_;
    }
  }

  std::vector<std::uint64_t> finite_;
  std::optional<std::uint64_t> tail_;
};

using SupportTuple = std::vector<SupportSet>;

/// Val_S(j) = min{s ∈ S : s >= j} - j, or ∞ when S has no element >= j.
inline TropValue val_at(const SupportSet& s, std::uint64_t j) {
  auto next = s.next_at_or_after(j);
  return next ? TropValue(*next - j) : TropValue::infinity();
}

/// {i - j : i ∈ S, i >= j}; the support of the j-th derivative.
inline SupportSet shift_support(const SupportSet& s, std::uint64_t j) {
  std::vector<std::uint64_t> out;
  for (auto i : s.finite_part())
    if (i >= j) out.push_back(i - j);
  std::optional<std::uint64_t> tail;
  if (s.tail_from()) tail = *s.tail_from() > j ? *s.tail_from() - j : 0;
  return SupportSet(std::move(out), tail);
}

/// S ∩ {0, ..., n}.
inline SupportSet restrict_to_window(const SupportSet& s, std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (auto i : s.finite_part())
    if (i <= n) out.push_back(i);
  if (s.tail_from())
    for (auto i = *s.tail_from(); i <= n; ++i) out.push_back(i);
  return SupportSet(std::move(out));
}

/// Text form: `{0,1,3}`, `{2,3,...6}` for {2,3} ∪ [6,∞), `{}` for ∅.
inline std::string to_string(const SupportSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto i : s.finite_part()) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  if (s.tail_from()) {
    if (!first) out += ",";
    out += "..." + std::to_string(*s.tail_from());
  }
  return out + "}";
}

inline std::string to_string(const SupportTuple& t) {
  if (t.size() == 1) return to_string(t.front());
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t[i]);
  }
  return out + ")";
}

}  // namespace tropdiff
