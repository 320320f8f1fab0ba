#pragma once

// Homology ranks of the annular complex, filtration levels of Lee classes,
// and nonvanishing tests, over Q (default) or F2.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "khb/rational.hpp"
#include "khb/resolution.hpp"

namespace khb {

enum class Field { Q, F2 };
enum class Diff { Del, DelPhi };
enum class Detail { I, IJ, IJK };

// j_t = j - t*k on generators
struct FiltrationFunctional {
    Rat t;
    Rat value(int j, int k) const { return Rat(j) - t * Rat(k); }
};

struct GradedDims {
    Detail detail = Detail::I;
    Field field = Field::Q;
    std::map<std::array<int, 3>, int64_t> dims;  // keyed (i[,j[,k]]), trailing zeros

    int64_t total() const;
    int64_t at(int i) const;
    int64_t at(int i, int j) const;
    int64_t at(int i, int j, int k) const;
};

// Ranks by exact elimination.  detail IJ requires the j-homogeneous
// differential Del; detail IJK uses the k-preserving part of Del (the
// associated graded differential of the annular filtration).  Dimensions are
// reported for every stratum of the window whose two adjacent differentials
// are determined (interior strata, plus window edges that coincide with the
// cube's edges).
GradedDims homology_dims(const AnnularComplex& c, Diff diff, Field field, Detail detail);

// max { min phi over support(x) : x = z + (del+Phi) y }.  z must be a cycle
// for del+Phi (checked when the outgoing stratum is in the window).
Rat filtration_level(const AnnularComplex& c, const LeeChain& z, const FiltrationFunctional& phi,
                     Field field = Field::Q, std::vector<int64_t>* support = nullptr);

// True iff the cycle z is not a boundary for the chosen differential.
bool class_nonzero(const AnnularComplex& c, const LeeChain& z, Diff diff, Field field = Field::Q);

// Restriction of z to its j-homogeneous part.
LeeChain chain_j_part(const AnnularComplex& c, const LeeChain& z, int j);

// Distinct j values present in the support of z, ascending.
std::vector<int> chain_j_values(const AnnularComplex& c, const LeeChain& z);

// Image of the chain y (in stratum i) under the differential into stratum i+1.
LeeChain apply_map(const AnnularComplex& c, const LeeChain& y, Diff diff);

// Solves diff(y) = target with y in stratum target.i - 1 over Q.
bool solve_preimage(const AnnularComplex& c, const LeeChain& target, Diff diff, LeeChain& y);

}  // namespace khb
