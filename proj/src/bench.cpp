#include "bench.hpp"

#include <chrono>
#include <sstream>

#include "generator.hpp"
#include "runner.hpp"

namespace kvis {

namespace {

void bench_row(std::ostringstream& out, const Scene& scene, Algo algo, std::size_t s,
               unsigned rep, bool wall, bool strict) {
  RunOptions opts;
  opts.algo = algo;
  opts.report = Report::Windows;
  opts.workspace = s;
  opts.strict = strict;
  opts.validate = false;  // generator already validated
  const auto t0 = std::chrono::steady_clock::now();
  const RunResult r = run_scene(scene, opts);
  const auto t1 = std::chrono::steady_clock::now();
  out << r.counters.csv_row() << "," << rep;
  if (wall)
    out << ","
        << std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
  out << "\n";
}

}  // namespace

std::string run_bench(const BenchSpec& spec) {
  std::ostringstream out;
  out << CounterReport::csv_header() << ",rep";
  if (spec.wall) out << ",wall_ns";
  out << "\n";
  for (unsigned rep = 0; rep < spec.reps; ++rep) {
    for (std::size_t n : spec.ns) {
      for (long k : spec.ks) {
        const Scene scene = random_scene(spec.seed, n, spec.profile, k);
        bench_row(out, scene, Algo::Constant, 1, rep, spec.wall, spec.strict);
        for (std::size_t s : spec.ss) {
          const std::size_t eff = s == 0 ? scene.num_records() : s;
          bench_row(out, scene, Algo::BatchAll, eff, rep, spec.wall, spec.strict);
          bench_row(out, scene, Algo::BatchCritical, eff, rep, spec.wall, spec.strict);
        }
      }
    }
  }
  return out.str();
}

}  // namespace kvis
