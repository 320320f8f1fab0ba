#pragma once

// Headline invariants of a braid closure: the Rasmussen s invariant, the
// annular d_t invariant at a point and as a full piecewise linear function on
// [0,1], the rank-matching shortcut for s, and nonvanishing of the transverse
// invariant psi.
//
// All of them use the braid orientation's Lee cycle and the cube backend
// restricted to the homological window that carries the class.

#include <optional>

#include "khb/braid.hpp"
#include "khb/homology.hpp"
#include "khb/plf.hpp"

namespace khb {

// s = (filtration level of [s_o] at t = 0) + 1
int s_invariant(const BraidWord& w, int cube_limit = 16);

// d_t at one rational t in [0,1]
Rat dt_value(const BraidWord& w, const Rat& t, int cube_limit = 16);

// d_t on all of [0,1].  Samples the level at every candidate breakpoint
// (j1-j2)/(k1-k2) from grading pairs in strata -1 and 0, plus segment
// midpoints and the endpoints, and assembles the unique consistent PL
// function.  Slopes land in {n, n-2, ..., -n+2} on (0,1).
PLFunction dt_function(const BraidWord& w, int cube_limit = 16);

// The shortcut of matching Khovanov and Lee ranks in homological grading 0:
// when dim Kh^0 = dim Lee^0 over Q the Lee filtration is read off Khovanov
// homology, and s is one more than the lowest quantum grading in which s_o
// survives.  Empty when the ranks differ.
std::optional<int> s_via_rank_matching(const BraidWord& w, int cube_limit = 16);

// Whether the class of the all-minus generator survives in Kh.
bool psi_nonvanishing(const BraidWord& w, Field field = Field::Q, int cube_limit = 16);

}  // namespace khb
