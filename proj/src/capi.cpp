#include "kvis/kvis.h"

#include <cstring>
#include <memory>
#include <sstream>

#include "bench.hpp"
#include "errors.hpp"
#include "generator.hpp"
#include "runner.hpp"
#include "sceneio.hpp"
#include "svg.hpp"

struct kvis_scene {
  kvis::Scene scene;
};

struct kvis_result {
  kvis::RunResult run;
  std::string text;
};

namespace {

void write_err(char* err, size_t err_len, const std::string& msg) {
  if (!err || err_len == 0) return;
  const size_t n = std::min(err_len - 1, msg.size());
  std::memcpy(err, msg.data(), n);
  err[n] = '\0';
}

// Maps the library's exception taxonomy onto status codes.
template <class F>
kvis_status guarded(char* err, size_t err_len, F&& f) {
  try {
    f();
    return KVIS_OK;
  } catch (const kvis::ParseError& e) {
    write_err(err, err_len, e.what());
    return KVIS_ERROR_PARSE;
  } catch (const kvis::InvalidSceneError& e) {
    write_err(err, err_len, e.what());
    return KVIS_ERROR_INVALID;
  } catch (const kvis::DegeneracyError& e) {
    write_err(err, err_len, e.what());
    return KVIS_ERROR_DEGENERATE;
  } catch (const kvis::BudgetExceededError& e) {
    write_err(err, err_len, e.what());
    return KVIS_ERROR_BUDGET;
  } catch (const kvis::GenerationError& e) {
    write_err(err, err_len, e.what());
    return KVIS_ERROR_GENERATE;
  } catch (const std::exception& e) {
    write_err(err, err_len, e.what());
    return KVIS_ERROR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::vector<std::size_t> parse_size_list(const char* text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text ? text : "");
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "n") {
      out.push_back(0);  // 0 marks "use the scene size"
      continue;
    }
    out.push_back(static_cast<std::size_t>(std::stoul(tok)));
  }
  return out;
}

std::vector<long> parse_long_list(const char* text) {
  std::vector<long> out;
  std::stringstream ss(text ? text : "");
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
  return out;
}

}  // namespace

extern "C" {

const char* kvis_version(void) { return "kvis 1.0.0"; }

const char* kvis_status_name(kvis_status st) {
  switch (st) {
    case KVIS_OK: return "ok";
    case KVIS_ERROR_PARSE: return "parse error";
    case KVIS_ERROR_INVALID: return "invalid scene";
    case KVIS_ERROR_DEGENERATE: return "degenerate scene";
    case KVIS_ERROR_BUDGET: return "workspace budget exceeded";
    case KVIS_ERROR_ARG: return "bad argument";
    case KVIS_ERROR_IO: return "io error";
    case KVIS_ERROR_GENERATE: return "generation failed";
    case KVIS_ERROR_INTERNAL: return "internal error";
  }
  return "unknown";
}

kvis_status kvis_scene_parse(const char* text, kvis_scene** out, char* err, size_t err_len) {
  if (!text || !out) return KVIS_ERROR_ARG;
  *out = nullptr;
  return guarded(err, err_len, [&] {
    auto holder = std::make_unique<kvis_scene>();
    holder->scene = kvis::parse_scene(text);
    *out = holder.release();
  });
}

kvis_status kvis_scene_load(const char* path, kvis_scene** out, char* err, size_t err_len) {
  if (!path || !out) return KVIS_ERROR_ARG;
  *out = nullptr;
  return guarded(err, err_len, [&] {
    auto holder = std::make_unique<kvis_scene>();
    holder->scene = kvis::load_scene_file(path);
    *out = holder.release();
  });
}

kvis_status kvis_scene_generate(const char* profile, unsigned long n, unsigned long long seed,
                                long k, kvis_scene** out, char* err, size_t err_len) {
  if (!profile || !out) return KVIS_ERROR_ARG;
  *out = nullptr;
  return guarded(err, err_len, [&] {
    auto holder = std::make_unique<kvis_scene>();
    holder->scene = kvis::random_scene(seed, n, profile, k);
    *out = holder.release();
  });
}

void kvis_scene_free(kvis_scene* scene) { delete scene; }

kvis_status kvis_scene_format(const kvis_scene* scene, char** out_text) {
  if (!scene || !out_text) return KVIS_ERROR_ARG;
  *out_text = dup_string(kvis::print_scene(scene->scene));
  return KVIS_OK;
}

unsigned long kvis_scene_vertices(const kvis_scene* scene) {
  return scene ? static_cast<unsigned long>(scene->scene.num_vertices()) : 0;
}

long kvis_scene_k(const kvis_scene* scene) { return scene ? scene->scene.k() : 0; }

kvis_status kvis_run(const kvis_scene* scene, const kvis_run_options* options,
                     kvis_result** out, char* err, size_t err_len) {
  if (!scene || !options || !out) return KVIS_ERROR_ARG;
  if (options->workspace < 1) {
    write_err(err, err_len, "workspace must be at least 1");
    return KVIS_ERROR_ARG;
  }
  *out = nullptr;
  return guarded(err, err_len, [&] {
    kvis::RunOptions ro;
    switch (options->algo) {
      case KVIS_ALGO_CONST: ro.algo = kvis::Algo::Constant; break;
      case KVIS_ALGO_BATCH_ALL: ro.algo = kvis::Algo::BatchAll; break;
      case KVIS_ALGO_BATCH_CRIT: ro.algo = kvis::Algo::BatchCritical; break;
      case KVIS_ALGO_ORACLE: ro.algo = kvis::Algo::Oracle; break;
      default: throw std::invalid_argument("bad algo");
    }
    ro.report =
        options->report == KVIS_REPORT_BOUNDARY ? kvis::Report::Boundary : kvis::Report::Windows;
    ro.workspace = static_cast<std::size_t>(options->workspace);
    ro.strict = options->strict != 0;
    ro.budget_words = options->budget_words;

    auto holder = std::make_unique<kvis_result>();
    holder->run = kvis::run_scene(scene->scene, ro);
    std::string text = kvis::format_window_records(holder->run.windows);
    if (ro.report == kvis::Report::Boundary)
      text += kvis::format_boundary_records(holder->run.boundary);
    text += kvis::format_stats(holder->run.counters, holder->run.window_count);
    holder->text = std::move(text);
    *out = holder.release();
  });
}

const char* kvis_result_text(const kvis_result* result) {
  return result ? result->text.c_str() : "";
}

kvis_status kvis_result_stats(const kvis_result* result, kvis_stats* out) {
  if (!result || !out) return KVIS_ERROR_ARG;
  const kvis::CounterReport& c = result->run.counters;
  out->n = c.n;
  out->k = c.k;
  out->s = c.s;
  out->c = c.c;
  out->reads = c.reads;
  out->peak_words = c.peak_words;
  out->emitted = c.emitted;
  out->windows = result->run.window_count;
  return KVIS_OK;
}

kvis_status kvis_result_svg(const kvis_scene* scene, const kvis_result* result,
                            char** out_svg) {
  if (!scene || !result || !out_svg) return KVIS_ERROR_ARG;
  *out_svg = dup_string(kvis::render_svg(scene->scene, result->run));
  return KVIS_OK;
}

void kvis_result_free(kvis_result* result) { delete result; }

kvis_status kvis_bench(const char* n_list, const char* s_list, const char* k_list,
                       const char* profile, unsigned reps, unsigned long long seed, int wall,
                       char** out_csv, char* err, size_t err_len) {
  if (!out_csv) return KVIS_ERROR_ARG;
  *out_csv = nullptr;
  return guarded(err, err_len, [&] {
    kvis::BenchSpec spec;
    if (n_list && *n_list) spec.ns = parse_size_list(n_list);
    if (s_list && *s_list) spec.ss = parse_size_list(s_list);
    if (k_list && *k_list) spec.ks = parse_long_list(k_list);
    if (profile && *profile) spec.profile = profile;
    spec.reps = reps == 0 ? 1 : reps;
    spec.seed = seed;
    spec.wall = wall != 0;
    *out_csv = dup_string(kvis::run_bench(spec));
  });
}

void kvis_text_free(char* text) { delete[] text; }

}  // extern "C"
