#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>

#include "ncad/errors.hpp"

namespace ncad {

/// Exact rational scalar. mpq_class keeps the canonical form invariant
/// (positive denominator, coprime with the numerator) after canonicalize().
using Scalar = mpq_class;

inline bool is_zero(const Scalar& a) { return sgn(a) == 0; }

/// Parses "p" or "p/q" with optional leading sign, base 10.
/// Rejects anything else, including a zero denominator.
inline Scalar scalar_from_string(const std::string& text) {
  std::size_t pos = 0;
  auto digits = [&](std::size_t from) {
    std::size_t n = 0;
    while (from + n < text.size() && std::isdigit(static_cast<unsigned char>(text[from + n]))) ++n;
    return n;
  };
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
  std::size_t num_len = digits(pos);
  if (num_len == 0) fail(ErrorKind::ParseError, "invalid rational literal: \"" + text + "\"");
  pos += num_len;
  if (pos < text.size()) {
    if (text[pos] != '/') fail(ErrorKind::ParseError, "invalid rational literal: \"" + text + "\"");
    ++pos;
    std::size_t den_len = digits(pos);
    if (den_len == 0 || pos + den_len != text.size())
      fail(ErrorKind::ParseError, "invalid rational literal: \"" + text + "\"");
  }
  // mpq_set_str itself rejects a leading '+'.
  const std::string body = text[0] == '+' ? text.substr(1) : text;
  Scalar value;
  if (mpq_set_str(value.get_mpq_t(), body.c_str(), 10) != 0)
    fail(ErrorKind::ParseError, "invalid rational literal: \"" + text + "\"");
  if (mpz_sgn(mpq_denref(value.get_mpq_t())) == 0)
    fail(ErrorKind::ParseError, "zero denominator: \"" + text + "\"");
  value.canonicalize();
  return value;
}

/// Canonical form: "p" when the denominator is 1, otherwise "p/q".
inline std::string scalar_to_string(const Scalar& value) { return value.get_str(); }

}  // namespace ncad
