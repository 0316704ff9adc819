#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "selection.hpp"

using namespace kvis;

namespace {

// Minimal KeyedScan over a vector of distinct integers, counting key reads.
struct IntScan {
  using key_type = long;
  std::vector<long> values;
  mutable std::uint64_t reads = 0;

  std::size_t size() const { return values.size(); }
  std::optional<long> key(std::size_t i) const {
    ++reads;
    return values[i];
  }
  int compare(long a, long b) const { return a < b ? -1 : a > b ? 1 : 0; }
  std::int64_t key_slot_words() const { return 1; }
};

std::vector<long> sorted_copy(const std::vector<long>& v) {
  std::vector<long> out = v;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("s_smallest_above examples") {
  IntScan scan{{5, 1, 4, 2, 3}};
  WorkspaceMeter meter;
  auto r = s_smallest_above(scan, std::nullopt, 2, meter);
  REQUIRE(r.size() == 2);
  CHECK(r[0].key == 1);
  CHECK(r[1].key == 2);

  auto above = s_smallest_above(scan, std::optional<long>(2), 2, meter);
  REQUIRE(above.size() == 2);
  CHECK(above[0].key == 3);
  CHECK(above[1].key == 4);
}

TEST_CASE("s_smallest_above short sequences return everything sorted") {
  IntScan scan{{9, 7}};
  WorkspaceMeter meter;
  auto r = s_smallest_above(scan, std::nullopt, 5, meter);
  REQUIRE(r.size() == 2);
  CHECK(r[0].key == 7);
  CHECK(r[1].key == 9);
}

TEST_CASE("kth_smallest examples") {
  IntScan scan{{5, 1, 4, 2, 3}};
  WorkspaceMeter meter;
  CHECK(kth_smallest(scan, 3, 1, meter).key == 3);
  CHECK(kth_smallest(scan, 5, 2, meter).key == 5);
  CHECK_THROWS_AS(kth_smallest(scan, 6, 2, meter), NotEnoughElementsError);
}

TEST_CASE("selection against the full-memory sort oracle") {
  std::mt19937_64 rng(99);
  std::vector<long> vals(1000);
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = static_cast<long>(i * 7 + 3);
  std::shuffle(vals.begin(), vals.end(), rng);
  const std::vector<long> expect = sorted_copy(vals);

  IntScan scan{vals};
  WorkspaceMeter meter;

  auto batch = s_smallest_above(scan, std::optional<long>(expect[499]), 37, meter);
  REQUIRE(batch.size() == 37);
  for (std::size_t i = 0; i < 37; ++i) CHECK(batch[i].key == expect[500 + i]);

  CHECK(kth_smallest(scan, 417, 16, meter).key == expect[416]);
  CHECK(kth_smallest(scan, 1, 4, meter).key == expect[0]);
  CHECK(kth_smallest(scan, 1000, 8, meter).key == expect[999]);
}

TEST_CASE("degeneracy on tied keys") {
  IntScan scan{{4, 9, 4}};
  WorkspaceMeter meter;
  CHECK_THROWS_AS(s_smallest_above(scan, std::nullopt, 3, meter), DegeneracyError);
}

TEST_CASE("read bound: one pass per batch step") {
  std::mt19937_64 rng(5);
  for (const std::size_t n : {100UL, 1000UL, 10000UL}) {
    std::vector<long> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = static_cast<long>(i);
    std::shuffle(vals.begin(), vals.end(), rng);
    IntScan scan{vals};
    WorkspaceMeter meter;

    scan.reads = 0;
    s_smallest_above(scan, std::nullopt, 13, meter);
    CHECK(scan.reads <= 1 * n);  // exactly one pass

    for (const std::size_t s : {1UL, 4UL, 32UL}) {
      const std::size_t k = n / 3 + 1;
      scan.reads = 0;
      kth_smallest(scan, k, s, meter);
      const std::uint64_t passes = (k + s - 1) / s;
      CHECK(scan.reads <= passes * n);
    }
  }
}

TEST_CASE("workspace bound proportional to the batch size") {
  std::vector<long> vals(4096);
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = static_cast<long>(i * 3 + 1);
  std::mt19937_64 rng(17);
  std::shuffle(vals.begin(), vals.end(), rng);
  IntScan scan{vals};
  for (const std::size_t s : {1UL, 8UL, 64UL}) {
    WorkspaceMeter meter;
    kth_smallest(scan, 1000, s, meter);
    // Buffer of 2s entries at (slot+1)=2 words each, plus a small constant.
    CHECK(meter.peak_words() <= static_cast<std::int64_t>(4 * s + 8));
  }
  // Strict mode under a too-small budget fails rather than exceeding it.
  WorkspaceMeter tiny(4, true);
  CHECK_THROWS_AS(kth_smallest(scan, 100, 64, tiny), BudgetExceededError);
}
