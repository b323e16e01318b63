#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "smoothdigits/enumerate.hpp"

namespace smoothdigits::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kPartial = 3 };

/// Run one command line (without the program name). Data goes to `out`
/// (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Integer literal or a small expression of them: sums and differences of
/// products of powers, e.g. "2^64+1" or "3*2^10-1".
mpz_class parse_integer(const std::string& text);

/// Rational literal "p", "p/q", or "e" for the height floor.
mpq_class parse_rational(const std::string& text);

/// Named digit-budget families:
///   const   f(n) = c
///   loglog  f(n) = 1 + c log log max(n, 16)
///   sqrt    f(n) = max(1, c sqrt(L2 L3 / L4)) where defined, else 1; not
///           monotone, so rounds are capped at `cap` digits
DigitBudget digit_budget_family(const std::string& name, double c, unsigned cap);

}  // namespace smoothdigits::cli
