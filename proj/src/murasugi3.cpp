#include "khb/murasugi3.hpp"

#include <stdexcept>

#include "khb/error.hpp"
#include "khb/invariants.hpp"
#include "khb/shapes.hpp"

namespace khb {

bool in_list_A(const MurasugiNF& nf) {
    validate_nf(nf);
    switch (nf.family) {
        case 1:
            return nf.d > 0;
        case 2:
            return (nf.d == 0 && nf.m >= 0) || (nf.d == 1 && nf.m >= -4) || nf.d > 1;
        default:
            return nf.d > 0;
    }
}

bool in_list_B(const MurasugiNF& nf) {
    validate_nf(nf);
    switch (nf.family) {
        case 1:
            return nf.d > 0;
        case 2:
            return (nf.d == 1 && nf.m >= -3) || nf.d > 1;
        default:
            return nf.d > 0;
    }
}

std::optional<MurasugiNF> mirror_nf(const MurasugiNF& nf) {
    validate_nf(nf);
    if (nf.family != 2) return std::nullopt;
    return MurasugiNF{2, -nf.d, {}, -nf.m};
}

Classification3 classify3(const MurasugiNF& nf, const std::optional<MurasugiNF>& nf_of_mirror,
                          Fallback fallback) {
    validate_nf(nf);
    Classification3 out;
    out.writhe = nf_writhe(nf);

    std::optional<MurasugiNF> mu = mirror_nf(nf);
    if (nf_of_mirror) {
        validate_nf(*nf_of_mirror);
        if (nf_writhe(*nf_of_mirror) != -out.writhe)
            throw ParseError("mirror normal form has the wrong writhe");
        if (mu && !(*mu == *nf_of_mirror))
            throw ParseError("mirror normal form contradicts the computed mirror");
        mu = nf_of_mirror;
    }

    if (in_list_A(nf)) {
        out.delta = -2;
        out.source = ClassifySource::ClosedForm;
    } else if (mu) {
        out.delta = in_list_B(*mu) ? 2 : 0;
        out.source = ClassifySource::MirrorClosedForm;
    } else if (fallback == Fallback::Compute) {
        out.delta = s_invariant(nf_to_word(nf)) - out.writhe;
        if (out.delta != -2 && out.delta != 0 && out.delta != 2)
            throw std::logic_error("3-braid delta outside {-2,0,2}");
        out.source = ClassifySource::ComputedFallback;
    } else {
        throw UndeterminedError("undetermined-without-mirror-nf");
    }

    out.s = out.writhe + out.delta;
    out.dt = dt3_closed_form(out.delta, out.writhe);
    out.psi_nonzero = out.delta == -2;
    return out;
}

}  // namespace khb
