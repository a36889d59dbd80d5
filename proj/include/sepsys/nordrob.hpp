#pragma once

#include "sepsys/codes.hpp"

namespace sepsys::nordrob {

// The Nordstrom-Robinson code as the Gray image of the octacode: the
// length-8 self-dual code over the integers mod 4 obtained by extending the
// cyclic code generated by 3 + x + 2x^2 + x^3 with an overall parity symbol,
// mapped through 0->00, 1->01, 2->11, 3->10. 256 words of length 16,
// nonzero weights in {6, 8, 10, 16}, listed in lexicographic order.
codes::Code build_nr16();

// Keep the codewords with symbol 0 at `position` and delete that coordinate.
// Throws if position is out of range or the result would be empty.
codes::Code one_shorten(const codes::Code& c, size_t position);

// The m codewords that come first in lexicographic order of the symbol
// sequence. m must not exceed the code size.
codes::Code subcode_first(const codes::Code& c, size_t m);

}  // namespace sepsys::nordrob
