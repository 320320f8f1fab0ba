#pragma once

// Closed-form classification of 3-braid closures from Murasugi normal forms:
// s, d_t, psi nonvanishing, writhe and self-linking.
//
// delta = s - w is decided by two membership lists:
//   list A  (delta = -2):  f1 d>0 | f2 (d=0,m>=0 | d=1,m>=-4 | d>1) | f3 d>0
//   list B  (delta = +2 when the MIRROR's normal form is in it):
//                          f1 d>0 | f2 (d=1,m>=-3 | d>1) | f3 d>0
// and everything else has delta = 0.  Deciding "not in B" requires knowing
// the mirror's normal form; family 2 mirrors in closed form, families 1 and 3
// do not, so the classifier accepts the mirror's form as an input and can
// fall back to the homological computation.

#include <optional>

#include "khb/braid.hpp"
#include "khb/plf.hpp"

namespace khb {

enum class ClassifySource { ClosedForm, MirrorClosedForm, ComputedFallback };

struct Classification3 {
    int writhe = 0;
    int s = 0;
    int delta = 0;  // s - writhe, one of -2, 0, +2
    PLFunction dt;
    bool psi_nonzero = false;
    ClassifySource source = ClassifySource::ClosedForm;
};

enum class Fallback { None, Compute };

bool in_list_A(const MurasugiNF& nf);
bool in_list_B(const MurasugiNF& nf);

// Mirror normal form where a closed form exists: family 2 only,
// (f2, d, m) -> (f2, -d, -m).  Families 1 and 3 return empty.
std::optional<MurasugiNF> mirror_nf(const MurasugiNF& nf);

// Throws UndeterminedError when delta cannot be decided without the mirror's
// normal form and fallback is None; throws ParseError when nf_of_mirror
// contradicts the computable mirror.
Classification3 classify3(const MurasugiNF& nf,
                          const std::optional<MurasugiNF>& nf_of_mirror = std::nullopt,
                          Fallback fallback = Fallback::None);

}  // namespace khb
