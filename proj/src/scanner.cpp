#include "khb/scanner.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "khb/error.hpp"
#include "khb/linalg.hpp"

namespace khb {

int Tangle::arc_at(int point) const {
    int id = 0;
    for (int p = 0; p < point; ++p)
        if (p < mate[p]) ++id;
    return point < mate[point] ? id : arc_at(mate[point]);
}

namespace {

// union-find with per-class Euler characteristic and dot bookkeeping
struct Classes {
    std::vector<int> parent;
    std::vector<int> chi, dots;

    explicit Classes(size_t k) : parent(k), chi(k, 0), dots(k, 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        parent[b] = a;
        chi[a] += chi[b];
        dots[a] += dots[b];
    }
};

// boundary circle class of every item of the pair (s, t); t-items offset
std::vector<int> boundary_circles(const Tangle& s, const Tangle& t) {
    size_t k = s.items() + t.items();
    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (int p = 0; p < 2 * s.n; ++p) {
        int a = find(s.arc_at(p)), b = find(s.items() + t.arc_at(p));
        if (a != b) parent[b] = a;
    }
    std::vector<int> out(k);
    for (size_t i = 0; i < k; ++i) out[i] = find(static_cast<int>(i));
    return out;
}

// number of boundary circles per stored part; chi = 2 - b for genus-0 parts
std::vector<int> part_chis(const Tangle& s, const Tangle& t, const Cobordism& c) {
    auto bc = boundary_circles(s, t);
    std::vector<int> chis;
    chis.reserve(c.parts.size());
    for (auto& [items, dots] : c.parts) {
        std::vector<int> circles;
        for (int it : items) circles.push_back(bc[it]);
        std::sort(circles.begin(), circles.end());
        circles.erase(std::unique(circles.begin(), circles.end()), circles.end());
        chis.push_back(2 - static_cast<int>(circles.size()));
    }
    return chis;
}

// Normalizes explicit classes (items within (s,t), chi, dots) into a stored
// cobordism: extracts genus, kills two-dot parts, evaluates closed parts.
// Returns the scalar factor, or nullopt when the term vanishes.
std::optional<std::pair<Rat, Cobordism>> normalize_classes(
    const Tangle& s, const Tangle& t,
    std::vector<std::pair<std::vector<int>, std::pair<int, int>>>& classes) {
    auto bc = boundary_circles(s, t);
    Rat factor(1);
    Cobordism out;
    for (auto& [items, cd] : classes) {
        auto& [chi, dots] = cd;
        if (items.empty()) {
            // closed component
            int genus2 = 2 - chi;
            if (genus2 < 0 || genus2 % 2) throw std::logic_error("closed component with bad chi");
            int g = genus2 / 2;
            if (dots + g != 1) return std::nullopt;  // sphere 0, multi-dot 0
            factor *= (g == 1) ? 2 : 1;
            continue;
        }
        std::vector<int> circles;
        for (int it : items) circles.push_back(bc[it]);
        std::sort(circles.begin(), circles.end());
        circles.erase(std::unique(circles.begin(), circles.end()), circles.end());
        int b = static_cast<int>(circles.size());
        int genus2 = 2 - chi - b;
        if (genus2 < 0 || genus2 % 2) throw std::logic_error("component with bad chi");
        int g = genus2 / 2;
        for (int r = 0; r < g; ++r) factor *= 2;  // handle = 2 * dot
        dots += g;
        if (dots >= 2) return std::nullopt;
        std::sort(items.begin(), items.end());
        out.parts.emplace_back(items, dots);
    }
    std::sort(out.parts.begin(), out.parts.end());
    return std::make_pair(factor, out);
}

void add_term(Morphism& m, const Rat& coef, const Cobordism& c) {
    auto it = m.terms.try_emplace(c, Rat(0)).first;
    it->second += coef;
    if (it->second == 0) m.terms.erase(it);
}

}  // namespace

Morphism identity_morphism(const Tangle& t) {
    Cobordism c;
    for (int i = 0; i < t.items(); ++i) c.parts.push_back({{i, t.items() + i}, 0});
    Morphism m;
    m.terms[c] = Rat(1);
    return m;
}

Morphism compose(const Tangle& s, const Tangle& mid, const Tangle& u, const Morphism& f,
                 const Morphism& g) {
    const int si = s.items(), mi = mid.items(), ui = u.items();
    Morphism out;
    for (auto& [cf, af] : f.terms) {
        auto chis_f = part_chis(s, mid, cf);
        // which f-part holds each item
        std::vector<int> fpart(si + mi, -1);
        for (size_t p = 0; p < cf.parts.size(); ++p)
            for (int it : cf.parts[p].first) fpart[it] = static_cast<int>(p);
        for (auto& [cg, ag] : g.terms) {
            auto chis_g = part_chis(mid, u, cg);
            std::vector<int> gpart(mi + ui, -1);
            for (size_t p = 0; p < cg.parts.size(); ++p)
                for (int it : cg.parts[p].first) gpart[it] = static_cast<int>(p);

            const size_t nf = cf.parts.size();
            Classes cl(nf + cg.parts.size());
            for (size_t p = 0; p < nf; ++p) {
                cl.chi[p] = chis_f[p];
                cl.dots[p] = cf.parts[p].second;
            }
            for (size_t p = 0; p < cg.parts.size(); ++p) {
                cl.chi[nf + p] = chis_g[p];
                cl.dots[nf + p] = cg.parts[p].second;
            }
            // glue along mid: arcs contribute chi 1, circles 0
            for (int it = 0; it < mi; ++it) {
                cl.unite(fpart[si + it], static_cast<int>(nf) + gpart[it]);
                cl.chi[cl.find(fpart[si + it])] -= (it < mid.arc_count()) ? 1 : 0;
            }
            // collect composite classes
            std::map<int, std::vector<int>> items_of;
            for (size_t p = 0; p < nf + cg.parts.size(); ++p) items_of[cl.find(static_cast<int>(p))];
            for (int it = 0; it < si; ++it) items_of[cl.find(fpart[it])].push_back(it);
            for (int it = 0; it < ui; ++it)
                items_of[cl.find(static_cast<int>(nf) + gpart[mi + it])].push_back(si + it);
            std::vector<std::pair<std::vector<int>, std::pair<int, int>>> classes;
            for (auto& [root, items] : items_of)
                classes.push_back({items, {cl.chi[root], cl.dots[root]}});

            auto norm = normalize_classes(s, u, classes);
            if (norm) add_term(out, af * ag * norm->first, norm->second);
        }
    }
    return out;
}

namespace {

// result of appending a smoothing of the crossing at positions (i, i+1) to
// the bottom of a tangle
struct Extended {
    Tangle tangle;
    std::vector<int> item_map;  // old item -> new item
    int cup_arc = -1;           // the freshly created arc (capcup only)
    int closed_circle = -1;     // new circle id when the cap closed a loop
    int merged_a = -1, merged_b = -1;  // the old arcs joined by the cap
};

Extended apply_identity(const Tangle& t) {
    Extended e;
    e.tangle = t;
    e.item_map.resize(t.items());
    std::iota(e.item_map.begin(), e.item_map.end(), 0);
    return e;
}

Extended apply_capcup(const Tangle& t, int pos) {
    const int bi = t.n + pos - 1, bj = t.n + pos;
    Extended e;
    Tangle nt = t;
    e.merged_a = t.arc_at(bi);
    e.merged_b = t.arc_at(bj);
    if (t.mate[bi] == bj) {
        nt.circles += 1;
        e.closed_circle = nt.arc_count() + nt.circles - 1;
    } else {
        int a = t.mate[bi], b = t.mate[bj];
        nt.mate[a] = b;
        nt.mate[b] = a;
    }
    nt.mate[bi] = bj;
    nt.mate[bj] = bi;
    e.tangle = nt;
    e.cup_arc = nt.arc_at(bi);

    e.item_map.assign(t.items(), -1);
    for (int p = 0; p < 2 * t.n; ++p) {
        if (p == bi || p == bj) continue;
        e.item_map[t.arc_at(p)] = nt.arc_at(p);
    }
    if (e.closed_circle >= 0) {
        e.item_map[e.merged_a] = e.closed_circle;
    }
    // the merged arcs both land on the arc through their outer endpoints;
    // covered by the loop above unless the arc ran between bi and bj
    for (int c = 0; c < t.circles; ++c) e.item_map[t.arc_count() + c] = nt.arc_count() + c;
    return e;
}

// f extended by the identity cobordism over the appended smoothing
Morphism extend_morphism(const Tangle& s, const Tangle& t, const Morphism& f, const Extended& es,
                         const Extended& et, bool capcup) {
    if (!capcup) return f;
    const int si = s.items(), nsi = es.tangle.items();
    Morphism out;
    for (auto& [cf, af] : f.terms) {
        auto chis = part_chis(s, t, cf);
        Classes cl(cf.parts.size());
        for (size_t p = 0; p < cf.parts.size(); ++p) {
            cl.chi[p] = chis[p];
            cl.dots[p] = cf.parts[p].second;
        }
        std::vector<int> holder(si + t.items(), -1);
        for (size_t p = 0; p < cf.parts.size(); ++p)
            for (int it : cf.parts[p].first) holder[it] = static_cast<int>(p);
        // the cap joins the two involved source arcs (target arcs sit in the
        // same parts); one band: chi += 1 - 2
        cl.unite(holder[es.merged_a], holder[es.merged_b]);
        cl.chi[cl.find(holder[es.merged_a])] -= 1;

        std::map<int, std::vector<int>> items_of;
        for (int it = 0; it < si; ++it)
            items_of[cl.find(holder[it])].push_back(es.item_map[it]);
        for (int it = 0; it < t.items(); ++it)
            items_of[cl.find(holder[si + it])].push_back(nsi + et.item_map[it]);
        std::vector<std::pair<std::vector<int>, std::pair<int, int>>> classes;
        for (auto& [root, items] : items_of) {
            std::vector<int> dedup = items;
            std::sort(dedup.begin(), dedup.end());
            dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
            classes.push_back({dedup, {cl.chi[root], cl.dots[root]}});
        }
        // cylinder over the new cup arc
        classes.push_back({{es.cup_arc, nsi + et.cup_arc}, {1, 0}});

        auto norm = normalize_classes(es.tangle, et.tangle, classes);
        if (norm) add_term(out, af * norm->first, norm->second);
    }
    return out;
}

// elementary saddle between o with identity appended and o with capcup
// appended; `forward` runs identity -> capcup
Morphism saddle_morphism(const Tangle& o, int pos, bool forward) {
    Extended cc = apply_capcup(o, pos);
    const int bi = o.n + pos - 1, bj = o.n + pos;
    const int a = o.arc_at(bi), b = o.arc_at(bj);
    const Tangle& src = forward ? o : cc.tangle;
    const Tangle& dst = forward ? cc.tangle : o;
    const int si = src.items();
    auto id_side = [&](int item) { return forward ? item : si + item; };
    auto cc_side = [&](int item) { return forward ? si + item : item; };

    std::vector<std::pair<std::vector<int>, std::pair<int, int>>> classes;
    {
        // the involved arcs plus one band: chi = (#identity-side arcs) - 1
        std::vector<int> items = {id_side(a), id_side(b), cc_side(cc.item_map[a]),
                                  cc_side(cc.cup_arc)};
        std::sort(items.begin(), items.end());
        items.erase(std::unique(items.begin(), items.end()), items.end());
        classes.push_back({items, {(a == b ? 1 : 2) - 1, 0}});
    }
    for (int it = 0; it < o.items(); ++it) {
        if (it == a || it == b) continue;
        int chi = it < o.arc_count() ? 1 : 0;
        classes.push_back({{id_side(it), cc_side(cc.item_map[it])}, {chi, 0}});
    }
    auto norm = normalize_classes(src, dst, classes);
    if (!norm) throw std::logic_error("saddle normalized to zero");
    Morphism m;
    m.terms[norm->second] = norm->first;
    return m;
}

}  // namespace

FormalComplex deloop(const FormalComplex& c) {
    FormalComplex cur = c;
    for (;;) {
        int target = -1;
        for (size_t o = 0; o < cur.objs.size(); ++o)
            if (cur.objs[o].tangle.circles > 0) {
                target = static_cast<int>(o);
                break;
            }
        if (target < 0) return cur;

        const FormalObject X = cur.objs[target];
        Tangle bare = X.tangle;
        bare.circles -= 1;
        const int gamma = bare.items();  // removed circle's item id in X

        // X -> X'{+1} (cap), X -> X'{-1} (cap with dot) and the cups back
        auto shared = [&](bool circle_on_source) {
            std::vector<std::pair<std::vector<int>, std::pair<int, int>>> classes;
            int s_items = circle_on_source ? gamma + 1 : gamma;
            for (int it = 0; it < gamma; ++it) {
                int chi = it < bare.arc_count() ? 1 : 0;  // square vs annulus
                classes.push_back({{it, s_items + it}, {chi, 0}});
            }
            return classes;
        };
        auto cap = [&](int dots) {
            auto classes = shared(true);
            classes.push_back({{gamma}, {1, dots}});
            auto norm = normalize_classes(X.tangle, bare, classes);
            Morphism m;
            m.terms[norm->second] = norm->first;
            return m;
        };
        auto cup = [&](int dots) {
            auto classes = shared(false);
            classes.push_back({{gamma + gamma}, {1, dots}});
            auto norm = normalize_classes(bare, X.tangle, classes);
            Morphism m;
            m.terms[norm->second] = norm->first;
            return m;
        };
        // dotted cap projects onto the degree +1 label, plain cap onto -1;
        // plain cup includes the +1 summand, dotted cup the -1 summand
        Morphism to_plus = cap(1), to_minus = cap(0), from_plus = cup(0), from_minus = cup(1);

        FormalComplex next;
        next.n = cur.n;
        std::vector<int> remap(cur.objs.size(), -1);
        for (size_t o = 0; o < cur.objs.size(); ++o) {
            if (static_cast<int>(o) == target) continue;
            remap[o] = static_cast<int>(next.objs.size());
            next.objs.push_back(cur.objs[o]);
        }
        int plus = static_cast<int>(next.objs.size());
        next.objs.push_back({bare, X.hom, X.q + 1});
        int minus = static_cast<int>(next.objs.size());
        next.objs.push_back({bare, X.hom, X.q - 1});

        for (auto& [key, m] : cur.entries) {
            auto [src, dst] = key;
            if (src == target && dst == target) throw std::logic_error("self entry");
            if (dst == target) {
                const Tangle& s = cur.objs[src].tangle;
                Morphism p = compose(s, X.tangle, bare, m, to_plus);
                Morphism q = compose(s, X.tangle, bare, m, to_minus);
                if (!p.zero()) next.entries[{remap[src], plus}] = std::move(p);
                if (!q.zero()) next.entries[{remap[src], minus}] = std::move(q);
            } else if (src == target) {
                const Tangle& u = cur.objs[dst].tangle;
                Morphism p = compose(bare, X.tangle, u, from_plus, m);
                Morphism q = compose(bare, X.tangle, u, from_minus, m);
                if (!p.zero()) next.entries[{plus, remap[dst]}] = std::move(p);
                if (!q.zero()) next.entries[{minus, remap[dst]}] = std::move(q);
            } else {
                next.entries[{remap[src], remap[dst]}] = m;
            }
        }
        cur = std::move(next);
    }
}

namespace {

bool identity_entry(const FormalComplex& c, int src, int dst, const Morphism& m, Rat& coef) {
    if (m.terms.size() != 1) return false;
    if (!(c.objs[src].tangle == c.objs[dst].tangle)) return false;
    const auto& [cob, a] = *m.terms.begin();
    const int items = c.objs[src].tangle.items();
    if (static_cast<int>(cob.parts.size()) != items) return false;
    for (auto& [its, dots] : cob.parts) {
        if (dots != 0 || its.size() != 2) return false;
        if (its[1] != its[0] + items) return false;
    }
    coef = a;
    return true;
}

}  // namespace

FormalComplex gauss_eliminate(const FormalComplex& c) {
    FormalComplex cur = c;
    for (;;) {
        // degree bookkeeping for the greedy pick
        std::map<int, int> indeg, outdeg;
        for (auto& [key, m] : cur.entries) {
            outdeg[key.first]++;
            indeg[key.second]++;
        }
        int best_src = -1, best_dst = -1, best_score = 0;
        Rat coef;
        for (auto& [key, m] : cur.entries) {
            Rat a;
            if (!identity_entry(cur, key.first, key.second, m, a)) continue;
            int score = outdeg[key.first] + indeg[key.second];
            if (best_src < 0 || score < best_score) {
                best_src = key.first;
                best_dst = key.second;
                best_score = score;
                coef = a;
            }
        }
        if (best_src < 0) return cur;

        const int B = best_src, Bp = best_dst;
        std::vector<std::pair<int, Morphism>> into_bp, out_of_b;
        for (auto& [key, m] : cur.entries) {
            if (key.second == Bp && key.first != B) into_bp.emplace_back(key.first, m);
            if (key.first == B && key.second != Bp) out_of_b.emplace_back(key.second, m);
        }

        FormalComplex next;
        next.n = cur.n;
        std::vector<int> remap(cur.objs.size(), -1);
        for (size_t o = 0; o < cur.objs.size(); ++o) {
            if (static_cast<int>(o) == B || static_cast<int>(o) == Bp) continue;
            remap[o] = static_cast<int>(next.objs.size());
            next.objs.push_back(cur.objs[o]);
        }
        for (auto& [key, m] : cur.entries) {
            if (key.first == B || key.first == Bp || key.second == B || key.second == Bp) continue;
            next.entries[{remap[key.first], remap[key.second]}] = m;
        }
        for (auto& [a, delta] : into_bp) {
            for (auto& [d, gamma] : out_of_b) {
                Morphism corr = compose(cur.objs[a].tangle, cur.objs[B].tangle,
                                        cur.objs[d].tangle, delta, gamma);
                auto key = std::make_pair(remap[a], remap[d]);
                Morphism& slot = next.entries[key];
                for (auto& [cob, q] : corr.terms) add_term(slot, -q / coef, cob);
                if (slot.zero()) next.entries.erase(key);
            }
        }
        cur = std::move(next);
    }
}

namespace {

FormalComplex tensor_crossing(const FormalComplex& c, int letter, size_t object_cap) {
    const int pos = std::abs(letter);
    const bool positive = letter > 0;
    if (2 * c.objs.size() > object_cap) throw LimitError("scanner object cap exceeded");

    FormalComplex next;
    next.n = c.n;
    // per object: smoothing-0 then smoothing-1 copies
    std::vector<Extended> ext0(c.objs.size()), ext1(c.objs.size());
    for (size_t o = 0; o < c.objs.size(); ++o) {
        const FormalObject& O = c.objs[o];
        Extended id = apply_identity(O.tangle), cc = apply_capcup(O.tangle, pos);
        if (positive) {
            ext0[o] = id;
            ext1[o] = cc;
            next.objs.push_back({id.tangle, O.hom, O.q + 1});
            next.objs.push_back({cc.tangle, O.hom + 1, O.q + 2});
        } else {
            ext0[o] = cc;
            ext1[o] = id;
            next.objs.push_back({cc.tangle, O.hom - 1, O.q - 2});
            next.objs.push_back({id.tangle, O.hom, O.q - 1});
        }
    }
    // old differentials tensored with the identity
    for (auto& [key, m] : c.entries) {
        auto [src, dst] = key;
        const Tangle &s = c.objs[src].tangle, &t = c.objs[dst].tangle;
        for (int sm = 0; sm < 2; ++sm) {
            const Extended &es = sm ? ext1[src] : ext0[src], &et = sm ? ext1[dst] : ext0[dst];
            bool capcup = positive ? (sm == 1) : (sm == 0);
            Morphism ext = extend_morphism(s, t, m, es, et, capcup);
            if (!ext.zero()) next.entries[{2 * src + sm, 2 * dst + sm}] = std::move(ext);
        }
    }
    // saddles with the Koszul sign of the old object's degree
    for (size_t o = 0; o < c.objs.size(); ++o) {
        Morphism sad = saddle_morphism(c.objs[o].tangle, pos, positive);
        if ((c.objs[o].hom % 2 + 2) % 2 == 1)
            for (auto& [cob, q] : sad.terms) q = -q;
        next.entries[{2 * static_cast<int>(o), 2 * static_cast<int>(o) + 1}] = std::move(sad);
    }
    return next;
}

}  // namespace

FormalComplex scan_complex(const BraidWord& w, size_t object_cap, bool simplify) {
    FormalComplex c;
    c.n = w.strands;
    Tangle id;
    id.n = w.strands;
    id.mate.resize(2 * w.strands);
    for (int i = 0; i < w.strands; ++i) {
        id.mate[i] = w.strands + i;
        id.mate[w.strands + i] = i;
    }
    c.objs.push_back({id, 0, 0});
    for (int letter : w.letters) {
        c = tensor_crossing(c, letter, object_cap);
        if (simplify) {
            c = deloop(c);
            c = gauss_eliminate(c);
        }
        if (c.objs.size() > object_cap) throw LimitError("scanner object cap exceeded");
    }
    return c;
}

namespace {

// join top i with bottom i on both sides of every object and morphism
FormalComplex close_up(const FormalComplex& c) {
    FormalComplex out;
    out.n = 0;

    struct Closed {
        Tangle tangle;
        std::vector<int> item_map;
    };
    std::vector<Closed> closed(c.objs.size());
    for (size_t o = 0; o < c.objs.size(); ++o) {
        const Tangle& t = c.objs[o].tangle;
        // trace loops of the matching composed with the closure pairing
        std::vector<int> arc_circle(t.arc_count(), -1);
        int loops = 0;
        for (int p = 0; p < 2 * t.n; ++p) {
            if (arc_circle[t.arc_at(p)] >= 0) continue;
            int cur = p;
            while (arc_circle[t.arc_at(cur)] < 0) {
                arc_circle[t.arc_at(cur)] = loops;
                int other = t.mate[cur];
                cur = (other + t.n) % (2 * t.n);  // closure: top i <-> bottom i
            }
            ++loops;
        }
        Closed cl;
        cl.tangle.n = 0;
        cl.tangle.circles = loops + t.circles;
        cl.item_map.resize(t.items());
        for (int a = 0; a < t.arc_count(); ++a) cl.item_map[a] = arc_circle[a];
        for (int k = 0; k < t.circles; ++k) cl.item_map[t.arc_count() + k] = loops + k;
        closed[o] = std::move(cl);
        out.objs.push_back({closed[o].tangle, c.objs[o].hom, c.objs[o].q});
    }

    for (auto& [key, m] : c.entries) {
        auto [src, dst] = key;
        const Tangle &s = c.objs[src].tangle, &t = c.objs[dst].tangle;
        const Closed &cs = closed[src], &ct = closed[dst];
        Morphism nm;
        for (auto& [cob, a] : m.terms) {
            auto chis = part_chis(s, t, cob);
            Classes cl(cob.parts.size());
            std::vector<int> holder(s.items() + t.items(), -1);
            for (size_t p = 0; p < cob.parts.size(); ++p) {
                cl.chi[p] = chis[p];
                cl.dots[p] = cob.parts[p].second;
                for (int it : cob.parts[p].first) holder[it] = static_cast<int>(p);
            }
            // each closure arc is one band over a pair of boundary points
            for (int i = 0; i < s.n; ++i) {
                int a1 = holder[s.arc_at(i)], a2 = holder[s.arc_at(s.n + i)];
                cl.unite(a1, a2);
                cl.chi[cl.find(a1)] -= 1;
            }
            std::map<int, std::vector<int>> items_of;
            for (int it = 0; it < s.items(); ++it)
                items_of[cl.find(holder[it])].push_back(cs.item_map[it]);
            for (int it = 0; it < t.items(); ++it)
                items_of[cl.find(holder[s.items() + it])].push_back(cs.tangle.items() +
                                                                    ct.item_map[it]);
            std::vector<std::pair<std::vector<int>, std::pair<int, int>>> classes;
            for (auto& [root, items] : items_of) {
                std::vector<int> dedup = items;
                std::sort(dedup.begin(), dedup.end());
                dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
                classes.push_back({dedup, {cl.chi[root], cl.dots[root]}});
            }
            auto norm = normalize_classes(cs.tangle, ct.tangle, classes);
            if (norm) add_term(nm, a * norm->first, norm->second);
        }
        if (!nm.zero()) out.entries[key] = std::move(nm);
    }
    return out;
}

}  // namespace

GradedDims formal_kh_dims(const FormalComplex& input) {
    FormalComplex c = deloop(close_up(input));

    // circle-free empty tangles: entries are scalars, j-homogeneous
    GradedDims out;
    out.detail = Detail::IJ;
    out.field = Field::Q;

    std::map<std::pair<int, int>, std::vector<int>> grading_objs;  // (i,j) -> objects
    for (size_t o = 0; o < c.objs.size(); ++o)
        grading_objs[{c.objs[o].hom, c.objs[o].q}].push_back(static_cast<int>(o));

    // columns of the scalar differential, bucketed by (i, j) of the source
    std::map<std::pair<int, int>, std::map<int, linalg::SparseVec<linalg::QF>>> cols;
    for (auto& [key, m] : c.entries) {
        auto [src, dst] = key;
        if (m.zero()) continue;
        if (m.terms.size() != 1 || !m.terms.begin()->first.parts.empty())
            throw std::logic_error("non-scalar entry after closing");
        if (c.objs[src].q != c.objs[dst].q || c.objs[src].hom + 1 != c.objs[dst].hom)
            throw std::logic_error("differential entry off grading");
        cols[{c.objs[src].hom, c.objs[src].q}][src].emplace_back(dst, m.terms.begin()->second);
    }
    std::map<std::pair<int, int>, int64_t> rank_of;
    for (auto& [key, bycol] : cols) {
        std::vector<linalg::SparseVec<linalg::QF>> v;
        for (auto& [src, col] : bycol) {
            auto cc = col;
            std::sort(cc.begin(), cc.end());
            v.push_back(std::move(cc));
        }
        rank_of[key] = linalg::rank<linalg::QF>(v);
    }
    for (auto& [ij, objs] : grading_objs) {
        auto [i, j] = ij;
        int64_t dim = static_cast<int64_t>(objs.size());
        auto out_it = rank_of.find({i, j});
        if (out_it != rank_of.end()) dim -= out_it->second;
        auto in_it = rank_of.find({i - 1, j});
        if (in_it != rank_of.end()) dim -= in_it->second;
        if (dim != 0) out.dims[{i, j, 0}] = dim;
    }
    return out;
}

GradedDims scan_kh_dims(const BraidWord& w, size_t object_cap) {
    return formal_kh_dims(scan_complex(w, object_cap));
}

}  // namespace khb
