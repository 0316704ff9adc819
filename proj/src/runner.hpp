#pragma once

#include <string>
#include <vector>

#include "scene.hpp"
#include "windows.hpp"

namespace kvis {

enum class Algo { Constant, BatchAll, BatchCritical, Oracle };
enum class Report { Windows, Boundary };

// Documented strict-mode workspace budgets (machine words, slot-metered).
// The constant algorithm's peak is the same constant for every input with
// bounded-precision coordinates; the batched algorithms stay within
// c1*s + c2.
inline constexpr std::int64_t kBudgetConstantWords = 128;           // C0
inline constexpr std::int64_t kBudgetBatchedPerS = 256;             // c1
inline constexpr std::int64_t kBudgetBatchedBase = 512;             // c2
inline std::int64_t batched_budget_words(std::size_t s) {
  return kBudgetBatchedPerS * static_cast<std::int64_t>(s) + kBudgetBatchedBase;
}

struct RunOptions {
  Algo algo = Algo::Constant;
  Report report = Report::Windows;
  std::size_t workspace = 1;   // the s parameter
  bool strict = false;         // enforce the documented budget
  std::int64_t budget_words = 0;  // strict only; <= 0 uses the documented budget
  bool validate = true;
};

struct RunResult {
  std::vector<WindowRecord> windows;
  std::vector<BoundaryRecord> boundary;
  CounterReport counters;
  std::uint64_t window_count = 0;  // emitted chords (endpoint pairs / 2)
};

const char* algo_name(Algo a);

// Counter snapshot of one finished run.
CounterReport snapshot_counters(const SceneView& view, const WorkspaceMeter& meter,
                                std::uint64_t emitted);

// Validates (exhaustively up to 256 vertices, sampled beyond), runs the
// selected algorithm and report, and snapshots the counters.
RunResult run_scene(const Scene& scene, const RunOptions& opts);

}  // namespace kvis
