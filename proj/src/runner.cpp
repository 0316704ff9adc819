#include "runner.hpp"

#include "batched.hpp"
#include "boundary.hpp"
#include "oracle.hpp"
#include "visibility.hpp"

namespace kvis {

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::Constant: return "const";
    case Algo::BatchAll: return "batch-all";
    case Algo::BatchCritical: return "batch-crit";
    case Algo::Oracle: return "oracle";
  }
  return "?";
}

RunResult run_scene(const Scene& scene, const RunOptions& opts) {
  if (opts.validate)
    validate_scene(scene, scene.num_vertices() <= 256 ? ValidationLevel::Exhaustive
                                                      : ValidationLevel::Fast);

  SceneView view(scene);
  std::int64_t budget = -1;
  if (opts.strict) {
    budget = opts.budget_words > 0
                 ? opts.budget_words
                 : (opts.algo == Algo::Constant ? kBudgetConstantWords
                                                : batched_budget_words(opts.workspace));
  }
  WorkspaceMeter meter(budget, opts.strict);

  auto windows_runner = [&](WindowSink& sink) {
    switch (opts.algo) {
      case Algo::Constant:
        windows_constant(view, meter, sink);
        return;
      case Algo::BatchAll:
        windows_batched_all(view, opts.workspace, meter, sink);
        return;
      case Algo::BatchCritical:
        windows_batched_critical(view, opts.workspace, meter, sink);
        return;
      case Algo::Oracle:
        for (const WindowRecord& r : oracle_windows(scene)) sink.emit(r);
        return;
    }
  };

  RunResult out;
  RecordingSink<WindowRecord> wsink;
  windows_runner(wsink);
  out.windows = wsink.records();

  std::uint64_t emitted = wsink.emitted();
  if (opts.report == Report::Boundary) {
    RecordingSink<BoundaryRecord> bsink;
    report_boundary(view, windows_runner, meter, bsink);
    out.boundary = bsink.records();
    emitted += bsink.emitted();
  }

  std::uint64_t endpoints = 0;
  for (const WindowRecord& r : out.windows)
    if (r.kind == WindowRecord::Kind::Endpoint) ++endpoints;
  out.window_count = endpoints / 2;

  out.counters = snapshot_counters(view, meter, emitted);
  out.counters.algo = algo_name(opts.algo);
  out.counters.k = scene.k();
  out.counters.s = opts.algo == Algo::Constant ? 1 : static_cast<std::int64_t>(opts.workspace);
  out.counters.c = scene_critical_count(scene);
  return out;
}

CounterReport snapshot_counters(const SceneView& view, const WorkspaceMeter& meter,
                                std::uint64_t emitted) {
  CounterReport out;
  out.n = view.num_records();
  out.reads = view.reads();
  out.peak_words = static_cast<std::uint64_t>(meter.peak_words());
  out.emitted = emitted;
  return out;
}

}  // namespace kvis
