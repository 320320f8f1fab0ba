#pragma once

// Divide-and-conquer Khovanov homology over the disk: scan a braid word
// crossing by crossing through the formal cobordism complex, delooping every
// closed circle and cancelling isomorphism entries as they appear, then close
// the final tangle and read off graded ranks.
//
// Objects are crossingless tangles on n top + n bottom points plus a count of
// closed circles and (hom, q) shifts.  Morphisms are rational combinations of
// decorated cobordisms: a partition of the source and target items (arcs and
// circles) into surface components, each carrying 0 or 1 dots, with genus
// normalized away (a handle trades for a factor 2 and a dot) and closed
// components evaluated to scalars (sphere 0, dotted sphere 1).

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "khb/braid.hpp"
#include "khb/homology.hpp"
#include "khb/rational.hpp"

namespace khb {

struct Tangle {
    int n = 0;                // boundary points: 0..n-1 top, n..2n-1 bottom
    std::vector<int> mate;    // pairing of boundary points
    int circles = 0;

    bool operator==(const Tangle&) const = default;

    int arc_count() const { return n; }  // n arcs pair the 2n points
    int items() const { return arc_count() + circles; }
    // arc ids ordered by smaller endpoint; circles follow
    int arc_at(int point) const;
};

struct Cobordism {
    // parts sorted canonically: item ids are source items, then target items
    // offset by the source item count
    std::vector<std::pair<std::vector<int>, int>> parts;  // (sorted items, dots)

    bool operator==(const Cobordism&) const = default;
    bool operator<(const Cobordism& o) const { return parts < o.parts; }
};

struct Morphism {
    std::map<Cobordism, Rat> terms;

    bool zero() const { return terms.empty(); }
};

struct FormalObject {
    Tangle tangle;
    int hom = 0;
    int q = 0;
};

struct FormalComplex {
    int n = 0;
    std::vector<FormalObject> objs;
    std::map<std::pair<int, int>, Morphism> entries;  // (src obj, dst obj)

    size_t object_count() const { return objs.size(); }
};

// identity cylinder on every item
Morphism identity_morphism(const Tangle& t);

// composition g after f, with all local relations applied
Morphism compose(const Tangle& s, const Tangle& mid, const Tangle& u, const Morphism& f,
                 const Morphism& g);

// Replaces every object containing closed circles by quantum-shifted
// circle-free copies, conjugating the differentials with the cap/cup
// isomorphisms.  Homotopy type is preserved.
FormalComplex deloop(const FormalComplex& c);

// Cancels isomorphism entries (greedy, fewest incident entries first) until
// none remain.
FormalComplex gauss_eliminate(const FormalComplex& c);

// Left fold over the braid word, delooping and eliminating after each
// crossing.  Throws LimitError when the object count exceeds the cap.
// simplify = false keeps the raw tensor complex (for invariance checks).
FormalComplex scan_complex(const BraidWord& w, size_t object_cap = 200000, bool simplify = true);

// Closes a formal complex into the annulus-free plane, deloops everything and
// returns (i,j) ranks over Q.
GradedDims formal_kh_dims(const FormalComplex& c);

// Closes the scanned tangle, deloops everything, and returns (i,j) Khovanov
// dimensions over Q.  Must agree with the cube backend.
GradedDims scan_kh_dims(const BraidWord& w, size_t object_cap = 200000);

}  // namespace khb
