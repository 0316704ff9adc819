#pragma once

#include <string>
#include <vector>

#include "memory.hpp"
#include "scene.hpp"
#include "windows.hpp"

namespace kvis {

// Text scene format:
//   kvis 1
//   polygon <n>            (or: holes <h>   followed by h+1 polygon blocks)
//   <x> <y>                (n lines; decimal or rational p/q)
//   query <x> <y>
//   k <int>
// Segment scenes:
//   kvis 1
//   segments <n> box <x0> <y0> <x1> <y1>
//   <ax> <ay> <bx> <by>    (n lines)
//   query <x> <y>
//   k <int>
Scene parse_scene(const std::string& text);
Scene load_scene_file(const std::string& path);
std::string print_scene(const Scene& s);

// Result text: one line per window endpoint, then boundary pieces when
// requested, then one STATS line. Rationals print exactly, never as
// floats, so identical inputs give byte-identical output.
std::string format_window_records(const std::vector<WindowRecord>& records);
std::string format_boundary_records(const std::vector<BoundaryRecord>& records);
std::string format_stats(const CounterReport& counters, std::uint64_t windows);

}  // namespace kvis
