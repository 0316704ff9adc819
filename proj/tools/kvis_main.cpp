// kvis command line: scene in, windows or boundary out, optional SVG,
// plus the benchmark grid. Talks to the library through the C API only.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kvis/kvis.h"

namespace {

struct ScopedScene {
  kvis_scene* p = nullptr;
  ~ScopedScene() { kvis_scene_free(p); }
};
struct ScopedResult {
  kvis_result* p = nullptr;
  ~ScopedResult() { kvis_result_free(p); }
};
struct ScopedText {
  char* p = nullptr;
  ~ScopedText() { kvis_text_free(p); }
};

int exit_code_for(kvis_status st) {
  switch (st) {
    case KVIS_OK: return 0;
    case KVIS_ERROR_BUDGET: return 3;
    case KVIS_ERROR_PARSE:
    case KVIS_ERROR_INVALID:
    case KVIS_ERROR_DEGENERATE:
    case KVIS_ERROR_IO:
    case KVIS_ERROR_GENERATE: return 2;
    default: return 1;
  }
}

int fail(kvis_status st, const char* err) {
  std::fprintf(stderr, "kvis: %s%s%s\n", kvis_status_name(st), *err ? ": " : "", err);
  return exit_code_for(st);
}

// "n=1024;s=1,4,16;k=4;profile=comb8;reps=2" (spaces work too).
void apply_grid_token(const std::string& tok, std::string& ns, std::string& ss,
                      std::string& ks, std::string& profile, unsigned& reps) {
  const auto eq = tok.find('=');
  if (eq == std::string::npos) throw CLI::ValidationError("--grid", "expected key=value");
  const std::string key = tok.substr(0, eq);
  const std::string val = tok.substr(eq + 1);
  if (key == "n") ns = val;
  else if (key == "s") ss = val;
  else if (key == "k") ks = val;
  else if (key == "profile") profile = val;
  else if (key == "reps") reps = static_cast<unsigned>(std::stoul(val));
  else throw CLI::ValidationError("--grid", "unknown key '" + key + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-visibility regions in the bounded-workspace model"};
  app.set_version_flag("--version", kvis_version());

  std::string algo = "const";
  std::string report = "windows";
  std::string scene_path, svg_path, gen_spec, emit_scene;
  long workspace = 1;
  long k_override = -1;
  unsigned long long seed = 1;
  bool strict = false;

  app.add_option("--algo", algo, "Algorithm: const|batch-all|batch-crit|oracle")
      ->check(CLI::IsMember({"const", "batch-all", "batch-crit", "oracle"}));
  app.add_option("--report", report, "Output: windows|boundary")
      ->check(CLI::IsMember({"windows", "boundary"}));
  app.add_option("--workspace", workspace, "Workspace parameter s (words ~ O(s))")
      ->check(CLI::PositiveNumber);
  app.add_option("--scene", scene_path, "Scene file path");
  app.add_option("--gen", gen_spec, "Generate a scene: <profile>,<n>");
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--k", k_override, "k for generated scenes (default 0)");
  app.add_option("--svg", svg_path, "Write an SVG rendering to this path");
  app.add_option("--emit-scene", emit_scene, "Write the (generated) scene text to this path");
  app.add_flag("--strict", strict, "Enforce the documented workspace budget");
  long budget_words = 0;
  app.add_option("--budget", budget_words,
                 "Override the strict budget (words); testing knob");

  auto* bench = app.add_subcommand("bench", "Run the benchmark grid, CSV to stdout");
  std::string b_ns = "256,1024", b_ss = "1,4,16,64", b_ks = "4", b_profile = "comb8";
  std::vector<std::string> grid_tokens;
  unsigned b_reps = 1;
  bool b_wall = false;
  bench->add_option("--grid", grid_tokens,
                    "Grid as key=value tokens: n=<list> s=<list> k=<list> "
                    "profile=<name> reps=<r>");
  bench->add_option("--n", b_ns, "n list (comma separated)");
  bench->add_option("--s", b_ss, "s list ('n' allowed)");
  bench->add_option("--k", b_ks, "k list");
  bench->add_option("--profile", b_profile, "Scene profile");
  bench->add_option("--reps", b_reps, "Repetitions");
  bench->add_option("--seed", seed, "Generator seed");
  bench->add_flag("--wall", b_wall, "Append the informational wall_ns column");

  CLI11_PARSE(app, argc, argv);

  char err[512] = {0};

  if (bench->parsed()) {
    for (const std::string& tok : grid_tokens) {
      std::stringstream ss(tok);
      std::string piece;
      while (std::getline(ss, piece, ';'))
        if (!piece.empty()) apply_grid_token(piece, b_ns, b_ss, b_ks, b_profile, b_reps);
    }
    ScopedText csv;
    const kvis_status st = kvis_bench(b_ns.c_str(), b_ss.c_str(), b_ks.c_str(),
                                      b_profile.c_str(), b_reps, seed, b_wall ? 1 : 0,
                                      &csv.p, err, sizeof err);
    if (st != KVIS_OK) return fail(st, err);
    std::fputs(csv.p, stdout);
    return 0;
  }

  ScopedScene scene;
  if (!scene_path.empty()) {
    const kvis_status st = kvis_scene_load(scene_path.c_str(), &scene.p, err, sizeof err);
    if (st != KVIS_OK) return fail(st, err);
  } else if (!gen_spec.empty()) {
    const auto comma = gen_spec.find(',');
    if (comma == std::string::npos) {
      std::fprintf(stderr, "kvis: --gen expects <profile>,<n>\n");
      return 1;
    }
    const std::string profile = gen_spec.substr(0, comma);
    const unsigned long n = std::stoul(gen_spec.substr(comma + 1));
    const kvis_status st =
        kvis_scene_generate(profile.c_str(), n, seed, k_override < 0 ? 0 : k_override,
                            &scene.p, err, sizeof err);
    if (st != KVIS_OK) return fail(st, err);
  } else {
    std::fprintf(stderr, "kvis: need --scene <path> or --gen <profile>,<n>\n");
    return 1;
  }

  if (!emit_scene.empty()) {
    ScopedText text;
    kvis_scene_format(scene.p, &text.p);
    std::ofstream out(emit_scene);
    if (!out) {
      std::fprintf(stderr, "kvis: cannot write %s\n", emit_scene.c_str());
      return 1;
    }
    out << text.p;
  }

  kvis_run_options opts{};
  opts.algo = algo == "const"       ? KVIS_ALGO_CONST
              : algo == "batch-all" ? KVIS_ALGO_BATCH_ALL
              : algo == "batch-crit" ? KVIS_ALGO_BATCH_CRIT
                                     : KVIS_ALGO_ORACLE;
  opts.report = report == "boundary" ? KVIS_REPORT_BOUNDARY : KVIS_REPORT_WINDOWS;
  opts.workspace = workspace;
  opts.strict = strict ? 1 : 0;
  opts.budget_words = budget_words;
  if (budget_words > 0) opts.strict = 1;

  ScopedResult result;
  const kvis_status st = kvis_run(scene.p, &opts, &result.p, err, sizeof err);
  if (st != KVIS_OK) return fail(st, err);
  std::fputs(kvis_result_text(result.p), stdout);

  if (!svg_path.empty()) {
    ScopedText svg;
    const kvis_status sst = kvis_result_svg(scene.p, result.p, &svg.p);
    if (sst != KVIS_OK) return fail(sst, err);
    std::ofstream out(svg_path);
    if (!out) {
      std::fprintf(stderr, "kvis: cannot write %s\n", svg_path.c_str());
      return 1;
    }
    out << svg.p;
  }
  return 0;
}
