#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kvis {

// Benchmark grid. Scenes come from the generator, deterministically from
// (profile, n, seed); reads and peak words are the acceptance signals and
// are exactly reproducible. Wall time is informational and off by default
// so the CSV is byte-identical across runs.
struct BenchSpec {
  std::vector<std::size_t> ns{256};
  std::vector<std::size_t> ss{1, 4, 16};
  std::vector<long> ks{0};
  std::string profile = "comb8";
  unsigned reps = 1;
  std::uint64_t seed = 1;
  bool wall = false;
  bool strict = true;
};

std::string run_bench(const BenchSpec& spec);

}  // namespace kvis
