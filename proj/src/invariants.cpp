#include "khb/invariants.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace khb {

namespace {

struct LevelEngine {
    AnnularComplex win;
    LeeChain so;

    LevelEngine(const BraidWord& w, int i_hi, int cube_limit)
        : win(build_cube_window(w, -1, i_hi, cube_limit)), so(lee_class_braid(win)) {}

    Rat level(const Rat& t) const { return filtration_level(win, so, {t}); }
};

}  // namespace

int s_invariant(const BraidWord& w, int cube_limit) {
    LevelEngine e(w, 0, cube_limit);
    Rat d0 = e.level(Rat(0));
    if (!rat_is_int(d0)) throw std::logic_error("d_0 must be an integer");
    return static_cast<int>(rat_num_l(d0)) + 1;
}

Rat dt_value(const BraidWord& w, const Rat& t, int cube_limit) {
    if (t < 0 || t > 1) throw std::invalid_argument("t must lie in [0,1]");
    LevelEngine e(w, 0, cube_limit);
    return e.level(t);
}

PLFunction dt_function(const BraidWord& w, int cube_limit) {
    LevelEngine e(w, 0, cube_limit);

    // distinct gradings present around homological grading 0
    std::set<std::pair<int, int>> jk;
    for (int i = e.win.i_lo; i <= e.win.i_hi; ++i) {
        const auto& st = e.win.strata[e.win.stratum_index(i)];
        for (int64_t g = 0; g < st.size; ++g) jk.insert({e.win.grade_j(i, g), e.win.grade_k(i, g)});
    }
    std::set<Rat> candidates;
    for (auto& a : jk)
        for (auto& b : jk) {
            if (a.second == b.second) continue;
            Rat t = Rat(a.first - b.first) / Rat(a.second - b.second);
            if (t > 0 && t < 1) candidates.insert(t);
        }

    std::vector<Rat> breaks = {Rat(0)};
    breaks.insert(breaks.end(), candidates.begin(), candidates.end());
    breaks.push_back(Rat(1));
    std::vector<Rat> samples = breaks;
    for (size_t q = 0; q + 1 < breaks.size(); ++q)
        samples.push_back((breaks[q] + breaks[q + 1]) / 2);

    std::vector<std::pair<Rat, Rat>> pts;
    for (const Rat& t : samples) pts.emplace_back(t, e.level(t));
    PLFunction f = plf_from_samples(std::move(pts));

    // corners may only sit at candidate breakpoints, slopes in {n,...,-n+2}
    for (size_t q = 1; q + 1 < f.t.size(); ++q)
        if (!candidates.count(f.t[q]))
            throw std::logic_error("d_t corner off the candidate grid");
    for (const Rat& m : f.slopes()) {
        if (!rat_is_int(m)) throw std::logic_error("d_t slope not an integer");
        long s = rat_num_l(m);
        if (s > w.strands || s < -w.strands + 2 || ((s - w.strands) % 2) != 0)
            throw std::logic_error("d_t slope outside the allowed set");
    }
    return f;
}

std::optional<int> s_via_rank_matching(const BraidWord& w, int cube_limit) {
    AnnularComplex c = build_cube_window(w, -1, 1, cube_limit);
    GradedDims kh = homology_dims(c, Diff::Del, Field::Q, Detail::IJ);
    GradedDims lee = homology_dims(c, Diff::DelPhi, Field::Q, Detail::I);
    int64_t kh0 = 0;
    for (auto& [key, d] : kh.dims)
        if (key[0] == 0) kh0 += d;
    if (kh0 != lee.at(0)) return std::nullopt;

    // with no induced differentials at grading 0, walk s_o up the quantum
    // filtration: clear each lowest j-part that dies in Kh
    LeeChain x = lee_class_braid(c);
    for (int guard = 0; guard < 64; ++guard) {
        auto js = chain_j_values(c, x);
        if (js.empty()) throw std::logic_error("Lee class reduced to zero");
        LeeChain part = chain_j_part(c, x, js.front());
        if (class_nonzero(c, part, Diff::Del, Field::Q)) return js.front() + 1;
        LeeChain u;
        if (!solve_preimage(c, part, Diff::Del, u))
            throw std::logic_error("Kh-zero part with no preimage");
        LeeChain du = apply_map(c, u, Diff::DelPhi);
        std::map<int64_t, Rat> acc(x.coeffs.begin(), x.coeffs.end());
        for (auto& [g, q] : du.coeffs) acc[g] -= q;
        x.coeffs.clear();
        for (auto& [g, q] : acc)
            if (q != 0) x.coeffs.emplace_back(g, q);
    }
    throw std::logic_error("rank matching walk did not terminate");
}

bool psi_nonvanishing(const BraidWord& w, Field field, int cube_limit) {
    AnnularComplex c = build_cube_window(w, -1, 1, cube_limit);
    return class_nonzero(c, psi_chain(c), Diff::Del, field);
}

}  // namespace khb
