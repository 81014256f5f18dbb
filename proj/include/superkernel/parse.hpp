#pragma once

#include "superkernel/polynomial.hpp"

#include <string_view>

namespace superkernel {

/// Reads a polynomial expression over ctx: sums, products, integer powers,
/// parentheses, rational literals ("3/4") and the imaginary unit "i" (unless
/// ctx has a generator called i).  Division is only by nonzero constants.
/// Throws SyntaxError with the byte offset of the problem.
SuperPolynomial parse_polynomial(const ContextPtr& ctx, std::string_view text);

}  // namespace superkernel
