#pragma once

// Plain JSON description of a problem:
//
//   {
//     "type": "pep" | "dep" | "spmf",
//     "n": 3,
//     "matrices": [{"rows": 3, "cols": 3, "data": [re, im, re, im, ...]}, ...],
//     "delays": [1.0, ...],              // dep only, one per matrix after A0
//     "functions": [{"kind": "exp", "power": 0, "scale": [re, im],
//                    "coeff": [re, im], "offset": [re, im]}, ...]   // spmf only
//   }
//
// Matrix data is row-major. pep matrices are in ascending powers; dep
// matrices are A0 followed by the delayed terms.

#include <string>

#include "nep/nep.hpp"

namespace nep {

/// Throws ArgumentError when the problem has no serializable form (for
/// example sum-of-products problems built from closures).
std::string serialize_problem(const Nep& nep, int indent = 2);

/// Throws ArgumentError on malformed input.
NepPtr deserialize_problem(const std::string& text);

}  // namespace nep
