#pragma once

// Canonical JSON forms shared by the CLI and the golden tests: rationals as
// {"num","den"} with positive denominator and gcd 1, sorted object keys,
// deterministic array orders.

#include <string>

#include "json.hpp"
#include "khb/homology.hpp"
#include "khb/murasugi3.hpp"
#include "khb/plf.hpp"
#include "khb/resolution.hpp"

namespace khb {

nlohmann::json rat_to_json(const Rat& r);
nlohmann::json plf_to_json(const PLFunction& f);
nlohmann::json dims_to_json(const GradedDims& d);
nlohmann::json classification_to_json(const Classification3& c);

// Debug dump of a complex: generator table with gradings plus the sparse
// entries of del and Phi.
nlohmann::json complex_to_json(const AnnularComplex& c);

}  // namespace khb
