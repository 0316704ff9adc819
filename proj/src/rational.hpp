#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace kvis {

// Exact rational scalar. All geometry in this library is computed over
// arbitrary-precision rationals; nothing is ever rounded.
using Rat = mpq_class;

// Parses "12", "-3.25", "7/3", "-1/2". Returns nullopt on malformed input
// or a zero denominator.
std::optional<Rat> rat_parse(const std::string& text);

// Canonical form: "p" when the denominator is 1, else "p/q".
std::string rat_to_string(const Rat& r);

// Size of one rational in machine words: ceil((bits(num)+bits(den))/64).
// Bounded-precision inputs keep this at 1.
std::uint64_t rat_words(const Rat& r);

inline double rat_to_double(const Rat& r) { return r.get_d(); }

}  // namespace kvis
