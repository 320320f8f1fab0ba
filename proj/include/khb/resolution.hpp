#pragma once

// The annular cube of resolutions of a braid closure.
//
// Canonical embedding: strands sit at x = 1..n, the word's crossings at
// consecutive heights top to bottom, and the closure arc of position p runs
// around the left of the diagram, nested so that arc p+1 encloses arc p.
// The annulus axis is the marked point just left of the braid.  Every circle
// of a complete resolution is traced on this embedding, which makes winding,
// planar nesting and traversal orientation exactly computable in integers.
//
// Smoothing convention: for a positive crossing the 0-smoothing is the
// oriented (identity) smoothing; for a negative crossing the 1-smoothing is.
// This places the braid-oriented resolution in homological grading 0.
//
// Gradings of a generator (a +/- labeling of the circles of a resolution):
//   i = (#1-smoothings) - n_minus
//   j = sum(labels) + (#1-smoothings) + n_plus - 2 n_minus
//   k = sum(labels over circles that wind around the axis)

#include <cstdint>
#include <vector>

#include "khb/braid.hpp"
#include "khb/rational.hpp"

namespace khb {

struct Circle {
    int winding = 0;            // signed closure-arc traversals, in {-1,0,1}
    bool essential = false;     // winding != 0
    int nesting_parity = 0;     // number of circles containing this one, mod 2
    int orientation_flag = 0;   // 0 if the canonical traversal is ccw
    int witness_level = 0;      // a point (level, position) the circle passes
    int witness_pos = 1;        //   through, heading downward in the canonical
                                //   traversal
};

struct Resolution {
    std::vector<uint8_t> choices;  // one smoothing bit per letter
    int ones = 0;                  // number of 1-smoothings
    std::vector<Circle> circles;
    std::vector<int> point_circle;  // circle id of point (level*n + pos-1)
    uint32_t essential_mask = 0;    // bit c set iff circles[c].essential
};

Resolution resolve(const BraidWord& w, const std::vector<uint8_t>& choices);

// A formal rational combination of generators in one homological stratum.
// Generators are addressed by their index inside the stratum (see
// AnnularComplex::Stratum).
struct LeeChain {
    int i = 0;
    std::vector<std::pair<int64_t, Rat>> coeffs;  // sorted by generator index
};

struct AnnularComplex {
    BraidWord word;
    int n_plus = 0, n_minus = 0;
    int i_lo = 0, i_hi = 0;  // stratum window, inclusive

    struct Stratum {
        std::vector<int> res_ids;       // into AnnularComplex::res, choice-lex order
        std::vector<int64_t> offsets;   // generator offset per resolution
        int64_t size = 0;               // total generators in the stratum
    };

    // One nonzero matrix entry of the differential from stratum i to i+1.
    // kind 0 carries the Khovanov part (preserves j), kind 1 the Lee
    // perturbation (raises j by 4).
    struct Entry {
        int64_t src, dst;
        int8_t coef;
        uint8_t kind;
    };

    std::vector<Resolution> res;
    std::vector<Stratum> strata;              // index s <-> homological grading i_lo + s
    std::vector<std::vector<Entry>> maps;     // maps[s]: stratum s -> s+1

    int stratum_index(int i) const { return i - i_lo; }
    bool has_stratum(int i) const { return i >= i_lo && i <= i_hi; }

    // resolution and labeling of a generator
    std::pair<const Resolution*, uint32_t> generator(int i, int64_t g) const;
    int grade_j(int i, int64_t g) const;
    int grade_k(int i, int64_t g) const;
};

// Builds the strata of the cube with homological grading in [i_lo, i_hi]
// (clamped to the cube's range) and the differentials between them.
AnnularComplex build_cube_window(const BraidWord& w, int i_lo, int i_hi, int crossing_limit = 16);

// The full complex: every resolution, every generator.
AnnularComplex build_cube(const BraidWord& w, int crossing_limit = 16);

// Lee's cycle s_o for a component orientation assignment (+1 keeps the braid
// orientation of the component, -1 reverses it).  Each circle of the oriented
// resolution contributes the factor (v+ + v-) or (v+ - v-) according to the
// parity of its nesting and traversal orientation; the expanded product has
// all coefficients +-1.  The chain is a cycle for del + Phi.
LeeChain lee_class(const AnnularComplex& c, const std::vector<int>& orientation);

// Braid orientation throughout.
LeeChain lee_class_braid(const AnnularComplex& c);

// Plamenevskaya's chain: the all-minus labeling of the braid-oriented
// resolution.  A cycle for del.
LeeChain psi_chain(const AnnularComplex& c);

}  // namespace khb
