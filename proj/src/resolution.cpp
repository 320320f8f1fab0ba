#include "khb/resolution.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "khb/error.hpp"

namespace khb {

namespace {

enum Slot { UP = 0, DOWN = 1 };

// Arc of a smoothed closed diagram.  Endpoints are (point id, slot) pairs;
// point (t,p) has id t*n + p-1.
struct Arc {
    enum Kind { VERT, CAP, CUP, CLOS } kind;
    int t;  // slice for VERT/CAP/CUP, strand position for CLOS
    int p;  // position (VERT: strand; CAP/CUP: left leg)
};

struct Pt {
    long long x, y;
};

struct VSeg {
    long long x, ylo, yhi;
};

// Appends the polyline of `arc` traversed from endpoint `from_a` (true: the
// a-end) to the other end, skipping the initial vertex.
void emit_arc(const Arc& arc, bool from_a, int L, std::vector<Pt>& poly) {
    std::vector<Pt> v;
    switch (arc.kind) {
        case Arc::VERT:
            v = {{8LL * arc.p, 8LL * arc.t}, {8LL * arc.p, 8LL * arc.t + 8}};
            break;
        case Arc::CAP:
            v = {{8LL * arc.p, 8LL * arc.t},
                 {8LL * arc.p, 8LL * arc.t + 2},
                 {8LL * arc.p + 8, 8LL * arc.t + 2},
                 {8LL * arc.p + 8, 8LL * arc.t}};
            break;
        case Arc::CUP:
            v = {{8LL * arc.p, 8LL * arc.t + 8},
                 {8LL * arc.p, 8LL * arc.t + 6},
                 {8LL * arc.p + 8, 8LL * arc.t + 6},
                 {8LL * arc.p + 8, 8LL * arc.t + 8}};
            break;
        case Arc::CLOS: {
            long long q = 8LL * arc.p;
            v = {{q, 8LL * L}, {q, 8LL * L + q}, {-q, 8LL * L + q}, {-q, -q}, {q, -q}, {q, 0}};
            break;
        }
    }
    if (!from_a) std::reverse(v.begin(), v.end());
    for (size_t k = 1; k < v.size(); ++k) poly.push_back(v[k]);
}

}  // namespace

Resolution resolve(const BraidWord& w, const std::vector<uint8_t>& choices) {
    const int n = w.strands;
    const int L = static_cast<int>(w.letters.size());
    if (static_cast<int>(choices.size()) != L)
        throw std::invalid_argument("choices length must match letter count");

    Resolution r;
    r.choices = choices;
    for (uint8_t c : choices) r.ones += c;

    // capcup[t] < 0 when slice t is the identity smoothing, else the left leg
    std::vector<int> capcup(L, -1);
    for (int t = 0; t < L; ++t) {
        bool ident = (w.letters[t] > 0) ? (choices[t] == 0) : (choices[t] == 1);
        if (!ident) capcup[t] = std::abs(w.letters[t]);
    }

    const int npts = (L + 1) * n;
    auto pid = [n](int t, int p) { return t * n + (p - 1); };

    // the two arcs at each point
    std::vector<Arc> arcs;
    std::vector<std::array<int, 2>> slot(npts, {-1, -1});
    auto add_arc = [&](Arc a, int pa, Slot sa, int pb, Slot sb) {
        int id = static_cast<int>(arcs.size());
        arcs.push_back(a);
        slot[pa][sa] = id;
        slot[pb][sb] = id;
    };
    for (int t = 0; t < L; ++t) {
        for (int p = 1; p <= n; ++p) {
            if (capcup[t] == p) {
                add_arc({Arc::CAP, t, p}, pid(t, p), DOWN, pid(t, p + 1), DOWN);
                add_arc({Arc::CUP, t, p}, pid(t + 1, p), UP, pid(t + 1, p + 1), UP);
            } else if (capcup[t] != p - 1) {
                add_arc({Arc::VERT, t, p}, pid(t, p), DOWN, pid(t + 1, p), UP);
            }
        }
    }
    for (int p = 1; p <= n; ++p) add_arc({Arc::CLOS, 0, p}, pid(L, p), DOWN, pid(0, p), UP);

    auto arc_ends = [&](int aid) -> std::array<std::pair<int, Slot>, 2> {
        const Arc& a = arcs[aid];
        switch (a.kind) {
            case Arc::VERT:
                return {{{pid(a.t, a.p), DOWN}, {pid(a.t + 1, a.p), UP}}};
            case Arc::CAP:
                return {{{pid(a.t, a.p), DOWN}, {pid(a.t, a.p + 1), DOWN}}};
            case Arc::CUP:
                return {{{pid(a.t + 1, a.p), UP}, {pid(a.t + 1, a.p + 1), UP}}};
            default:
                return {{{pid(L, a.p), DOWN}, {pid(0, a.p), UP}}};
        }
    };

    r.point_circle.assign(npts, -1);
    struct Traced {
        std::vector<VSeg> vsegs;
        long long qx = 0, qy = 0;  // marked point on the circle
    };
    std::vector<Traced> traced;

    for (int start = 0; start < npts; ++start) {
        if (r.point_circle[start] >= 0) continue;
        const int cid = static_cast<int>(r.circles.size());
        Circle circ;
        circ.witness_level = start / n;
        circ.witness_pos = start % n + 1;

        std::vector<Pt> poly;
        poly.push_back({8LL * circ.witness_pos, 8LL * circ.witness_level});
        int winding = 0;
        int cur = start;
        Slot out = DOWN;
        do {
            r.point_circle[cur] = cid;
            int aid = slot[cur][out];
            auto ends = arc_ends(aid);
            bool from_a = (ends[0].first == cur && ends[0].second == out);
            if (arcs[aid].kind == Arc::CLOS) winding += from_a ? -1 : 1;
            emit_arc(arcs[aid], from_a, L, poly);
            auto [nxt, arrived] = from_a ? ends[1] : ends[0];
            cur = nxt;
            out = (arrived == UP) ? DOWN : UP;
        } while (!(cur == start && out == DOWN));

        // winding of an embedded circle in the annulus
        assert(winding >= -1 && winding <= 1);
        circ.winding = winding;
        circ.essential = winding != 0;

        long long shoelace = 0;
        Traced tr;
        for (size_t k = 0; k + 1 < poly.size(); ++k) {
            const Pt &a = poly[k], &b = poly[k + 1];
            shoelace += a.x * b.y - b.x * a.y;
            if (a.x == b.x && a.y != b.y)
                tr.vsegs.push_back({a.x, std::min(a.y, b.y), std::max(a.y, b.y)});
        }
        assert(poly.back().x == poly.front().x && poly.back().y == poly.front().y);
        assert(shoelace != 0);
        circ.orientation_flag = shoelace > 0 ? 0 : 1;
        assert(!tr.vsegs.empty());
        tr.qx = tr.vsegs[0].x;
        tr.qy = tr.vsegs[0].ylo + 1;  // odd: clears every even segment endpoint
        traced.push_back(tr);
        r.circles.push_back(circ);
    }

    // planar nesting by leftward ray casting from each circle's marked point
    for (size_t c = 0; c < r.circles.size(); ++c) {
        int nest = 0;
        for (size_t d = 0; d < r.circles.size(); ++d) {
            if (d == c) continue;
            int crossings = 0;
            for (const VSeg& s : traced[d].vsegs)
                if (s.x < traced[c].qx && s.ylo < traced[c].qy && traced[c].qy < s.yhi)
                    ++crossings;
            nest += crossings & 1;
        }
        r.circles[c].nesting_parity = nest & 1;
        if (r.circles[c].essential) r.essential_mask |= 1u << c;
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

struct CubeBuilder {
    const BraidWord& w;
    int L, n_plus = 0, n_minus = 0;
    std::unordered_map<uint32_t, std::pair<int, int>> loc;  // mask -> (stratum idx, pos)

    explicit CubeBuilder(const BraidWord& word) : w(word) {
        L = static_cast<int>(w.letters.size());
        for (int v : w.letters) (v > 0 ? n_plus : n_minus)++;
    }

    uint32_t mask_of(const std::vector<uint8_t>& choices) const {
        uint32_t m = 0;
        for (int t = 0; t < L; ++t)
            if (choices[t]) m |= 1u << t;
        return m;
    }

    std::vector<uint8_t> choices_of(uint32_t mask) const {
        std::vector<uint8_t> c(L);
        for (int t = 0; t < L; ++t) c[t] = (mask >> t) & 1;
        return c;
    }
};

}  // namespace

std::pair<const Resolution*, uint32_t> AnnularComplex::generator(int i, int64_t g) const {
    const Stratum& st = strata[stratum_index(i)];
    auto it = std::upper_bound(st.offsets.begin(), st.offsets.end(), g);
    size_t idx = static_cast<size_t>(it - st.offsets.begin()) - 1;
    const Resolution* rs = &res[st.res_ids[idx]];
    return {rs, static_cast<uint32_t>(g - st.offsets[idx])};
}

int AnnularComplex::grade_j(int i, int64_t g) const {
    auto [rs, mask] = generator(i, g);
    int c = static_cast<int>(rs->circles.size());
    int labels = 2 * std::popcount(mask) - c;
    return labels + rs->ones + n_plus - 2 * n_minus;
}

int AnnularComplex::grade_k(int i, int64_t g) const {
    auto [rs, mask] = generator(i, g);
    int e = std::popcount(rs->essential_mask);
    return 2 * std::popcount(mask & rs->essential_mask) - e;
}

AnnularComplex build_cube_window(const BraidWord& w, int i_lo, int i_hi, int crossing_limit) {
    const int L = static_cast<int>(w.letters.size());
    if (L > crossing_limit || L > 30)
        throw LimitError("word has " + std::to_string(L) + " crossings, cube limit is " +
                         std::to_string(std::min(crossing_limit, 30)));

    CubeBuilder b(w);
    AnnularComplex c;
    c.word = w;
    c.n_plus = b.n_plus;
    c.n_minus = b.n_minus;
    c.i_lo = std::max(i_lo, -b.n_minus);
    c.i_hi = std::min(i_hi, b.n_plus);
    if (c.i_hi < c.i_lo) c.i_hi = c.i_lo;

    // strata in choice-lex order (letter 0 most significant)
    auto lex_key = [L](uint32_t m) {
        uint32_t k = 0;
        for (int t = 0; t < L; ++t) k = (k << 1) | ((m >> t) & 1);
        return k;
    };
    for (int i = c.i_lo; i <= c.i_hi; ++i) {
        int ones = i + b.n_minus;
        std::vector<uint32_t> masks;
        for (uint32_t m = 0; m < (1u << L); ++m)
            if (std::popcount(m) == ones) masks.push_back(m);
        std::sort(masks.begin(), masks.end(),
                  [&](uint32_t a, uint32_t bb) { return lex_key(a) < lex_key(bb); });

        AnnularComplex::Stratum st;
        for (uint32_t m : masks) {
            int rid = static_cast<int>(c.res.size());
            c.res.push_back(resolve(w, b.choices_of(m)));
            b.loc[m] = {i - c.i_lo, static_cast<int>(st.res_ids.size())};
            st.res_ids.push_back(rid);
            st.offsets.push_back(st.size);
            st.size += int64_t(1) << c.res[rid].circles.size();
        }
        c.strata.push_back(std::move(st));
    }

    // differentials between consecutive strata
    const int n = w.strands;
    c.maps.resize(c.strata.size() ? c.strata.size() - 1 : 0);
    for (size_t s = 0; s + 1 < c.strata.size(); ++s) {
        const auto& st = c.strata[s];
        const auto& st1 = c.strata[s + 1];
        for (size_t rpos = 0; rpos < st.res_ids.size(); ++rpos) {
            const Resolution& src = c.res[st.res_ids[rpos]];
            uint32_t mask = b.mask_of(src.choices);
            for (int t = 0; t < L; ++t) {
                if ((mask >> t) & 1) continue;
                auto it = b.loc.find(mask | (1u << t));
                if (it == b.loc.end()) continue;
                const Resolution& dst = c.res[st1.res_ids[it->second.second]];

                int sign = 1;
                for (int u = 0; u < t; ++u)
                    if ((mask >> u) & 1) sign = -sign;

                // circle correspondence at the changed site
                int i1 = std::abs(w.letters[t]);
                std::array<int, 4> site = {t * n + (i1 - 1), t * n + i1, (t + 1) * n + (i1 - 1),
                                           (t + 1) * n + i1};
                std::vector<int> s2d(src.circles.size(), -1);
                for (int p = 0; p < (L + 1) * n; ++p) s2d[src.point_circle[p]] = dst.point_circle[p];
                int sA = src.point_circle[site[0]], sB = -1, dA = dst.point_circle[site[0]],
                    dB = -1;
                for (int q : site) {
                    if (src.point_circle[q] != sA) sB = src.point_circle[q];
                    if (dst.point_circle[q] != dA) dB = dst.point_circle[q];
                }
                for (int q : site) s2d[src.point_circle[q]] = -1;

                const int nc = static_cast<int>(src.circles.size());
                int64_t src_base = st.offsets[rpos];
                int64_t dst_base = st1.offsets[it->second.second];
                auto carry = [&](uint32_t ms) {
                    uint32_t md = 0;
                    for (int cc = 0; cc < nc; ++cc)
                        if (s2d[cc] >= 0 && ((ms >> cc) & 1)) md |= 1u << s2d[cc];
                    return md;
                };

                auto& out = c.maps[s];
                if (sB >= 0) {
                    // merge sA, sB -> dA
                    assert(dB < 0);
                    for (uint32_t ms = 0; ms < (1u << nc); ++ms) {
                        bool la = (ms >> sA) & 1, lb = (ms >> sB) & 1;
                        uint32_t md = carry(ms);
                        if (la && lb)
                            out.push_back({src_base + ms, dst_base + (md | (1u << dA)),
                                           static_cast<int8_t>(sign), 0});
                        else if (la || lb)
                            out.push_back({src_base + ms, dst_base + md,
                                           static_cast<int8_t>(sign), 0});
                        else
                            out.push_back({src_base + ms, dst_base + (md | (1u << dA)),
                                           static_cast<int8_t>(sign), 1});
                    }
                } else {
                    // split sA -> dA, dB
                    assert(dB >= 0);
                    for (uint32_t ms = 0; ms < (1u << nc); ++ms) {
                        bool la = (ms >> sA) & 1;
                        uint32_t md = carry(ms);
                        if (la) {
                            out.push_back({src_base + ms, dst_base + (md | (1u << dA)),
                                           static_cast<int8_t>(sign), 0});
                            out.push_back({src_base + ms, dst_base + (md | (1u << dB)),
                                           static_cast<int8_t>(sign), 0});
                        } else {
                            out.push_back({src_base + ms, dst_base + md,
                                           static_cast<int8_t>(sign), 0});
                            out.push_back({src_base + ms,
                                           dst_base + (md | (1u << dA) | (1u << dB)),
                                           static_cast<int8_t>(sign), 1});
                        }
                    }
                }
            }
        }
    }
    return c;
}

AnnularComplex build_cube(const BraidWord& w, int crossing_limit) {
    int n_minus = 0, n_plus = 0;
    for (int v : w.letters) (v > 0 ? n_plus : n_minus)++;
    return build_cube_window(w, -n_minus, n_plus, crossing_limit);
}

// ---------------------------------------------------------------------------

namespace {

// choice bits of the resolution oriented by the given component orientations
std::vector<uint8_t> oriented_choices(const BraidWord& w, const std::vector<int>& orientation,
                                      const std::vector<int>& comp) {
    const int L = static_cast<int>(w.letters.size());
    std::vector<int> occ(w.strands);
    std::iota(occ.begin(), occ.end(), 1);
    std::vector<uint8_t> choices(L);
    for (int t = 0; t < L; ++t) {
        int i = std::abs(w.letters[t]);
        bool parallel = orientation[comp[occ[i - 1] - 1]] == orientation[comp[occ[i] - 1]];
        bool ident = parallel;
        choices[t] = (w.letters[t] > 0) ? (ident ? 0 : 1) : (ident ? 1 : 0);
        std::swap(occ[i - 1], occ[i]);
    }
    return choices;
}

// strand occupying position p at level t
int strand_at(const BraidWord& w, int level, int pos) {
    std::vector<int> occ(w.strands);
    std::iota(occ.begin(), occ.end(), 1);
    for (int t = 0; t < level; ++t) {
        int i = std::abs(w.letters[t]);
        std::swap(occ[i - 1], occ[i]);
    }
    return occ[pos - 1];
}

}  // namespace

LeeChain lee_class(const AnnularComplex& c, const std::vector<int>& orientation) {
    auto comp = strand_components(c.word);
    int ncomp = comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
    if (static_cast<int>(orientation.size()) != ncomp)
        throw std::invalid_argument("orientation needs one sign per component");
    for (int s : orientation)
        if (s != 1 && s != -1) throw std::invalid_argument("orientation entries must be +-1");

    auto choices = oriented_choices(c.word, orientation, comp);
    int ones = 0;
    for (uint8_t b : choices) ones += b;
    int i = ones - c.n_minus;
    if (!c.has_stratum(i))
        throw std::invalid_argument("complex window does not contain the oriented resolution");

    const auto& st = c.strata[c.stratum_index(i)];
    int rpos = -1;
    for (size_t r = 0; r < st.res_ids.size(); ++r)
        if (c.res[st.res_ids[r]].choices == choices) rpos = static_cast<int>(r);
    assert(rpos >= 0);
    const Resolution& rs = c.res[st.res_ids[rpos]];

    uint32_t minus_factor = 0;
    for (size_t cc = 0; cc < rs.circles.size(); ++cc) {
        const Circle& circ = rs.circles[cc];
        bool down = orientation[comp[strand_at(c.word, circ.witness_level, circ.witness_pos) - 1]] == 1;
        int o_ccw = down ? circ.orientation_flag : 1 - circ.orientation_flag;
        if ((circ.nesting_parity ^ o_ccw) & 1) minus_factor |= 1u << cc;
    }

    LeeChain z;
    z.i = i;
    const uint32_t all = (1u << rs.circles.size()) - 1;
    for (uint32_t m = 0; m <= all; ++m) {
        int sgn = (std::popcount(~m & all & minus_factor) & 1) ? -1 : 1;
        z.coeffs.emplace_back(st.offsets[rpos] + m, Rat(sgn));
        if (all == 0) break;
    }
    return z;
}

LeeChain lee_class_braid(const AnnularComplex& c) {
    int ncomp = closure_component_count(c.word);
    return lee_class(c, std::vector<int>(ncomp, 1));
}

LeeChain psi_chain(const AnnularComplex& c) {
    std::vector<uint8_t> choices(c.word.letters.size());
    for (size_t t = 0; t < c.word.letters.size(); ++t)
        choices[t] = c.word.letters[t] > 0 ? 0 : 1;
    if (!c.has_stratum(0)) throw std::invalid_argument("complex window does not contain grading 0");
    const auto& st = c.strata[c.stratum_index(0)];
    for (size_t r = 0; r < st.res_ids.size(); ++r) {
        if (c.res[st.res_ids[r]].choices == choices) {
            LeeChain z;
            z.i = 0;
            z.coeffs.emplace_back(st.offsets[r], Rat(1));
            return z;
        }
    }
    throw std::logic_error("oriented resolution missing from stratum 0");
}

}  // namespace khb
