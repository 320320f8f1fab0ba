#include "khb/shapes.hpp"

#include <map>
#include <stdexcept>

#include "khb/error.hpp"

namespace khb {

namespace {

// breakpoint trail of a partial path, first entry is the current position
using Trail = std::vector<std::pair<Rat, Rat>>;

struct PathEnumerator {
    std::vector<LineSpec> lines;
    bool use_techprop = false;
    // admissible band: lo(t) <= y <= hi(t), both linear
    LineSpec lo, hi;
    bool require_zero_end = false;  // path must reach (1, 0)

    std::map<std::pair<int, Rat>, std::vector<Trail>> memo;

    bool inside(const Rat& t, const Rat& y) const {
        return y >= lo.value(t) && y <= hi.value(t);
    }

    bool third_line_through(int a, int b, const Rat& t, const Rat& y) const {
        for (size_t c = 0; c < lines.size(); ++c)
            if (static_cast<int>(c) != a && static_cast<int>(c) != b &&
                lines[c].value(t) == y)
                return true;
        return false;
    }

    bool corner_allowed(int from, int to, const Rat& t, const Rat& y) const {
        if (lines[to].slope <= lines[from].slope) return true;
        if (!use_techprop) return true;
        if (lines[from].sub == lines[to].sub) return true;
        return third_line_through(from, to, t, y);
    }

    // all suffix paths starting on line `l` at parameter `t0`
    const std::vector<Trail>& tails(int l, const Rat& t0) {
        auto key = std::make_pair(l, t0);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        std::vector<Trail> out;
        const Rat y0 = lines[l].value(t0);

        // straight run to t = 1
        Rat y1 = lines[l].value(Rat(1));
        if (inside(Rat(1), y1) && (!require_zero_end || y1 == 0))
            out.push_back({{t0, y0}, {Rat(1), y1}});

        // switches at later intersections
        for (size_t m = 0; m < lines.size(); ++m) {
            if (static_cast<int>(m) == l || lines[m].slope == lines[l].slope) continue;
            Rat tx = Rat(lines[m].j0 - lines[l].j0) / Rat(lines[l].slope - lines[m].slope);
            if (!(tx > t0 && tx < 1)) continue;
            Rat yx = lines[l].value(tx);
            if (!inside(tx, yx)) continue;
            if (!corner_allowed(l, static_cast<int>(m), tx, yx)) continue;
            for (const Trail& tail : tails(static_cast<int>(m), tx)) {
                Trail full;
                full.emplace_back(t0, y0);
                full.insert(full.end(), tail.begin(), tail.end());
                out.push_back(std::move(full));
            }
        }
        return memo.emplace(key, std::move(out)).first->second;
    }
};

}  // namespace

std::vector<LineSpec> candidate_lines(int strands) {
    if (strands < 2) throw std::invalid_argument("candidate lines need at least 2 strands");
    const int n = strands;
    auto sub_of = [n](int j0) { return ((j0 + n) / 2) % 2; };
    std::vector<LineSpec> out;
    out.push_back({-n, n, sub_of(-n)});
    out.push_back({n - 2, -n + 2, sub_of(n - 2)});
    for (int j = -n + 2; j <= n - 4; j += 2)
        for (int m = n - 2; m >= -n + 2; m -= 2) out.push_back({j, m, sub_of(j)});
    return out;
}

bool techprop_prunable(const LineSpec& before, const LineSpec& after,
                       const std::vector<LineSpec>& all) {
    if (before.slope == after.slope) throw std::invalid_argument("parallel lines do not cross");
    Rat t = Rat(after.j0 - before.j0) / Rat(before.slope - after.slope);
    if (!(t > 0 && t < 1))
        throw std::invalid_argument("lines must intersect inside (0,1)");
    if (after.slope < before.slope) return false;
    if (before.sub == after.sub) return false;
    Rat y = before.value(t);
    for (const LineSpec& l : all)
        if (!(l == before) && !(l == after) && l.value(t) == y) return false;
    return true;
}

ShapeSet enumerate_dt_shapes(int strands, int cap) {
    if (strands < 2) throw std::invalid_argument("need at least 2 strands");
    if (strands > cap) throw LimitError("strand count exceeds the shape enumeration cap");
    PathEnumerator e;
    e.lines = candidate_lines(strands);
    e.use_techprop = true;
    e.lo = {-strands, strands, 0};
    e.hi = {strands - 2, -strands + 2, 0};
    e.require_zero_end = true;

    ShapeSet shapes;
    for (size_t l = 0; l < e.lines.size(); ++l)
        for (const Trail& tr : e.tails(static_cast<int>(l), Rat(0)))
            shapes.insert(plf_from_samples(Trail(tr)));
    return shapes;
}

PLFunction dt3_closed_form(int delta, int writhe) {
    switch (delta) {
        case -2:
            return plf_linear(Rat(writhe - 3), Rat(3));
        case 0:
            return plf_linear(Rat(writhe - 1), Rat(1));
        case 2:
            return plf_linear(Rat(writhe + 1), Rat(-1));
        default:
            throw std::invalid_argument("delta must be one of -2, 0, +2");
    }
}

std::vector<LineSpec> upsilon_candidate_lines(int genus) {
    if (genus < 1) throw std::invalid_argument("concordance genus must be >= 1");
    const int c = genus;
    std::vector<LineSpec> out;
    out.push_back({0, c, -1});
    out.push_back({0, -c, -1});
    for (int y = -c + 1; y <= c - 1; ++y)
        for (int m = -c; m <= c; ++m) out.push_back({y - m, m, -1});
    return out;
}

ShapeSet enumerate_upsilon_shapes(int genus, int cap) {
    if (genus < 1) throw std::invalid_argument("concordance genus must be >= 1");
    if (genus > cap) throw LimitError("genus exceeds the shape enumeration cap");
    PathEnumerator e;
    e.lines = upsilon_candidate_lines(genus);
    e.use_techprop = false;
    e.lo = {0, -genus, -1};
    e.hi = {0, genus, -1};
    e.require_zero_end = false;

    ShapeSet shapes;
    for (size_t l = 0; l < e.lines.size(); ++l) {
        if (e.lines[l].j0 != 0) continue;  // paths start at the origin
        for (const Trail& tr : e.tails(static_cast<int>(l), Rat(0)))
            shapes.insert(plf_from_samples(Trail(tr)));
    }
    return shapes;
}

}  // namespace khb
