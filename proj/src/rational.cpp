#include "rational.hpp"

#include <cctype>
#include <stdexcept>

namespace kvis {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

namespace {

// Base-10 always; the mpz string constructor would auto-detect leading
// zeros as octal.
mpz_class mpz10(const std::string& s) {
  mpz_class z;
  if (mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("bad integer " + s);
  return z;
}

}  // namespace

std::optional<Rat> rat_parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
    mpz_class n = mpz10(num), d = mpz10(den);
    if (d == 0) return std::nullopt;
    Rat r(n, d);
    r.canonicalize();
    return r;
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac_len = text.size() - dot - 1;
    if (frac_len == 0) return std::nullopt;
    if (!is_integer_token(digits)) return std::nullopt;
    mpz_class n = mpz10(digits);
    mpz_class d(1);
    for (std::size_t i = 0; i < frac_len; ++i) d *= 10;
    Rat r(n, d);
    r.canonicalize();
    return r;
  }
  if (!is_integer_token(text)) return std::nullopt;
  return Rat(mpz10(text));
}

std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::uint64_t rat_words(const Rat& r) {
  const std::size_t bits = mpz_sizeinbase(r.get_num().get_mpz_t(), 2) +
                           mpz_sizeinbase(r.get_den().get_mpz_t(), 2);
  return (bits + 63) / 64;
}

}  // namespace kvis
