#pragma once

#include <cstdint>
#include <string>

#include "scene.hpp"

namespace kvis {

// Deterministic seeded scene generation. Profiles:
//   convex          convex polygon (no critical vertices)
//   star / star<m>  pinwheel star of m spikes (2m vertices, all critical)
//   comb / comb<m>  rectangle with m ceiling teeth; extra vertices pad the floor
//   random-simple   random simple polygon via 2-opt uncrossing
//   holes           convex outer ring plus one or two rectangular holes
//   segments        disjoint random segments in a bounding box
// Every emitted scene satisfies weak general position (validated, with
// bounded jitter-and-retry); throws GenerationError when the retry budget
// runs out.
Scene random_scene(std::uint64_t seed, std::size_t n, const std::string& profile, long k);

}  // namespace kvis
