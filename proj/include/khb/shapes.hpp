#pragma once

// Enumeration of the admissible shapes of d_t for n-braid closures and of
// Upsilon for a fixed concordance genus: candidate generator lines, monotone
// path enumeration through their arrangement, and the two-subcomplex corner
// pruning for d_t.
//
// d_t shapes are normalized to writhe 0, so every path ends at (1,0) inside
// the triangle spanned by the lines of slope n and -n+2 through that point.
// Upsilon shapes start at the origin instead and stay inside |y| <= c t.

#include <set>
#include <vector>

#include "khb/plf.hpp"

namespace khb {

struct LineSpec {
    int j0;     // value at t = 0
    int slope;  // integer slope
    int sub;    // quantum-mod-4 subcomplex class in {0,1}; -1 when untracked

    bool operator==(const LineSpec&) const = default;
    Rat value(const Rat& t) const { return Rat(j0) + Rat(slope) * t; }
};

using ShapeSet = std::set<PLFunction>;

// Lines that can carry the optimal generator of a writhe-0 n-braid closure:
// (-n, n), (n-2, -n+2), and (j, m) for j in {-n+2,...,n-4} step 2 and
// m in {n-2,...,-n+2} step 2.
std::vector<LineSpec> candidate_lines(int strands);

// Whether a corner switching from `before` to `after` at their intersection
// is impossible for d_t: the slope increases, the two lines lie in different
// subcomplexes, and no third line of `all` passes through the intersection
// point.  Throws std::invalid_argument on parallel lines or an intersection
// outside (0,1).
bool techprop_prunable(const LineSpec& before, const LineSpec& after,
                       const std::vector<LineSpec>& all);

ShapeSet enumerate_dt_shapes(int strands, int cap = 8);

// Closed forms for 3-braids, keyed by delta = s - w.
PLFunction dt3_closed_form(int delta, int writhe);

// Lines through (1,y) for y in {-c+1,...,c-1} with slopes in {-c,...,c},
// plus the two slope +-c lines through the origin.
std::vector<LineSpec> upsilon_candidate_lines(int genus);

ShapeSet enumerate_upsilon_shapes(int genus, int cap = 6);

}  // namespace khb
