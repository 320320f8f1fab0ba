#include "khb/jsonio.hpp"

#include <stdexcept>

namespace khb {

using nlohmann::json;

json rat_to_json(const Rat& r) {
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
        throw std::overflow_error("rational too large for JSON");
    return json{{"num", rat_num_l(r)}, {"den", rat_den_l(r)}};
}

json plf_to_json(const PLFunction& f) {
    json pts = json::array();
    for (size_t q = 0; q < f.t.size(); ++q)
        pts.push_back(json{{"t", rat_to_json(f.t[q])}, {"value", rat_to_json(f.v[q])}});
    return json{{"breakpoints", pts}};
}

json dims_to_json(const GradedDims& d) {
    json rows = json::array();
    for (auto& [key, dim] : d.dims) {
        json row{{"i", key[0]}, {"dim", dim}};
        if (d.detail != Detail::I) row["j"] = key[1];
        if (d.detail == Detail::IJK) row["k"] = key[2];
        rows.push_back(row);
    }
    const char* detail = d.detail == Detail::I ? "i" : (d.detail == Detail::IJ ? "ij" : "ijk");
    return json{{"detail", detail},
                {"dims", rows},
                {"field", d.field == Field::Q ? "q" : "f2"},
                {"total", d.total()}};
}

json classification_to_json(const Classification3& c) {
    const char* source = c.source == ClassifySource::ClosedForm ? "closed-form"
                         : c.source == ClassifySource::MirrorClosedForm ? "mirror-closed-form"
                                                                        : "computed-fallback";
    return json{{"writhe", c.writhe}, {"s", c.s},
                {"delta", c.delta},   {"dt", plf_to_json(c.dt)},
                {"psi", c.psi_nonzero}, {"source", source}};
}

json complex_to_json(const AnnularComplex& c) {
    json gens = json::array();
    for (size_t s = 0; s < c.strata.size(); ++s) {
        int i = c.i_lo + static_cast<int>(s);
        for (int64_t g = 0; g < c.strata[s].size; ++g) {
            auto [res, labels] = c.generator(i, g);
            json choices = json::array();
            for (uint8_t b : res->choices) choices.push_back(static_cast<int>(b));
            gens.push_back(json{{"i", i},
                                {"j", c.grade_j(i, g)},
                                {"k", c.grade_k(i, g)},
                                {"index", g},
                                {"choices", choices},
                                {"labels", labels}});
        }
    }
    json del = json::array(), phi = json::array();
    for (size_t s = 0; s < c.maps.size(); ++s)
        for (const auto& e : c.maps[s]) {
            json row{{"i", c.i_lo + static_cast<int>(s)},
                     {"src", e.src},
                     {"dst", e.dst},
                     {"coef", static_cast<int>(e.coef)}};
            (e.kind == 0 ? del : phi).push_back(row);
        }
    return json{{"word", format_braid_word(c.word)},
                {"n_plus", c.n_plus},
                {"n_minus", c.n_minus},
                {"generators", gens},
                {"del", del},
                {"phi", phi}};
}

}  // namespace khb
