#pragma once

// Exact piecewise linear functions on [0,1], the value type of the annular
// d_t invariant and of enumerated shape catalogs.

#include <vector>

#include "khb/rational.hpp"

namespace khb {

struct PLFunction {
    // Breakpoints with ascending t, t.front() == 0, t.back() == 1.  Normal
    // form: no interior breakpoint is collinear with its neighbors.
    std::vector<Rat> t;
    std::vector<Rat> v;

    bool operator==(const PLFunction& o) const { return t == o.t && v == o.v; }
    bool operator<(const PLFunction& o) const;  // arbitrary total order for sets

    Rat value(const Rat& at) const;
    Rat slope_right(const Rat& at) const;  // right-hand slope, defined on [0,1)
    std::vector<Rat> slopes() const;       // one per segment

    PLFunction shifted(const Rat& dv) const;  // vertical translate
    Rat max_abs() const;                      // max |f| over [0,1]
};

// Builds the normal form from samples (t_i, v_i); t must include 0 and 1.
// Throws std::invalid_argument on duplicate t with conflicting values.
PLFunction plf_from_samples(std::vector<std::pair<Rat, Rat>> samples);

// The linear function v0 + slope*t restricted to [0,1].
PLFunction plf_linear(const Rat& v0, const Rat& slope);

PLFunction operator+(const PLFunction& a, const PLFunction& b);
PLFunction operator-(const PLFunction& a, const PLFunction& b);

}  // namespace khb
