#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "memory.hpp"

namespace kvis {

// A KeyedScan presents a read-only sequence as (index, key) pairs:
//   std::size_t size() const;
//   std::optional<Key> key(std::size_t i) const;   // counted reads happen here
//   int compare(const Key&, const Key&) const;      // exact 3-way
//   std::int64_t key_slot_words() const;            // declared words per key
// Keys must be pairwise distinct across keyed indices (weak general
// position); an observed tie raises DegeneracyError.

template <class Key>
struct ScanEntry {
  Key key;
  std::size_t index;
};

namespace detail {

template <class Scan, class Key>
int cmp_entries(const Scan& scan, const ScanEntry<Key>& a, const ScanEntry<Key>& b) {
  const int c = scan.compare(a.key, b.key);
  if (c == 0 && a.index != b.index)
    throw DegeneracyError("tied keys at indices " + std::to_string(a.index) + " and " +
                          std::to_string(b.index));
  return c;
}

template <class Scan, class Key>
void small_sort(const Scan& scan, std::vector<ScanEntry<Key>>& v, std::size_t lo,
                std::size_t hi) {
  for (std::size_t i = lo + 1; i < hi; ++i) {
    for (std::size_t j = i; j > lo && cmp_entries(scan, v[j], v[j - 1]) < 0; --j)
      std::swap(v[j], v[j - 1]);
  }
}

// In-place deterministic select: after the call, v[r] holds the element of
// rank r within [lo, hi) and the range is partitioned around it.
template <class Scan, class Key>
void mom_select_inplace(const Scan& scan, std::vector<ScanEntry<Key>>& v, std::size_t lo,
                        std::size_t hi, std::size_t r) {
  while (true) {
    if (hi - lo <= 10) {
      small_sort(scan, v, lo, hi);
      return;
    }
    // Median of each group of five, gathered into a prefix.
    std::size_t ngroups = 0;
    for (std::size_t g = lo; g < hi; g += 5) {
      const std::size_t ge = std::min(g + 5, hi);
      small_sort(scan, v, g, ge);
      std::swap(v[lo + ngroups], v[g + (ge - g) / 2]);
      ++ngroups;
    }
    mom_select_inplace(scan, v, lo, lo + ngroups, lo + (ngroups - 1) / 2);
    const ScanEntry<Key> pivot = v[lo + (ngroups - 1) / 2];

    // Three-way partition; exactly one element equals the pivot.
    std::swap(v[lo + (ngroups - 1) / 2], v[hi - 1]);
    std::size_t store = lo;
    for (std::size_t i = lo; i + 1 < hi; ++i) {
      if (cmp_entries(scan, v[i], pivot) < 0) std::swap(v[i], v[store++]);
    }
    std::swap(v[store], v[hi - 1]);

    if (store == r) return;
    if (r < store)
      hi = store;
    else
      lo = store + 1;
  }
}

}  // namespace detail

// The `count` smallest keyed elements strictly above `above` (all of them
// when `above` is empty), sorted ascending. One pass over the input with a
// workspace buffer of at most 2*count entries: fill to 2*count, halve at
// the median, refill in batches of count.
template <class Scan>
auto s_smallest_above(const Scan& scan, const std::optional<typename Scan::key_type>& above,
                      std::size_t count, WorkspaceMeter& meter)
    -> std::vector<ScanEntry<typename Scan::key_type>> {
  using Key = typename Scan::key_type;
  using Entry = ScanEntry<Key>;
  if (count == 0) return {};

  const std::int64_t entry_words = scan.key_slot_words() + 1;
  ScopedWords guard(meter, static_cast<std::int64_t>(2 * count) * entry_words + 4,
                    "selection.buffer");

  std::vector<Entry> buf;
  buf.reserve(2 * count);
  const std::size_t n = scan.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto k = scan.key(i);
    if (!k) continue;
    if (above && scan.compare(*k, *above) <= 0) continue;  // strictly larger than x
    buf.push_back(Entry{std::move(*k), i});
    if (buf.size() == 2 * count) {
      // Keep the `count` smallest: select the lower median, drop the rest.
      detail::mom_select_inplace(scan, buf, 0, buf.size(), count - 1);
      buf.resize(count);
    }
  }

  std::sort(buf.begin(), buf.end(),
            [&](const Entry& a, const Entry& b) { return detail::cmp_entries(scan, a, b) < 0; });
  if (buf.size() > count) buf.resize(count);
  return buf;
}

// The k-th smallest keyed element (k is 1-based), via ceil(k/count) chained
// batch scans. Throws NotEnoughElementsError when fewer than k elements
// carry keys.
template <class Scan>
auto kth_smallest(const Scan& scan, std::size_t k, std::size_t count, WorkspaceMeter& meter)
    -> ScanEntry<typename Scan::key_type> {
  using Entry = ScanEntry<typename Scan::key_type>;
  if (k == 0) throw NotEnoughElementsError("rank must be at least 1");
  if (count == 0) count = 1;

  std::optional<typename Scan::key_type> above;
  std::size_t remaining = k;
  while (true) {
    auto batch = s_smallest_above(scan, above, count, meter);
    if (remaining <= batch.size()) return batch[remaining - 1];
    if (batch.size() < count)
      throw NotEnoughElementsError("sequence has fewer than " + std::to_string(k) +
                                   " keyed elements");
    remaining -= count;
    above = batch.back().key;
  }
}

}  // namespace kvis
