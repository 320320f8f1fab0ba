#include "khb/plf.hpp"

#include <algorithm>
#include <stdexcept>

namespace khb {

namespace {

// v at position t on the segment (t0,v0)-(t1,v1)
Rat lerp(const Rat& t0, const Rat& v0, const Rat& t1, const Rat& v1, const Rat& t) {
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

}  // namespace

bool PLFunction::operator<(const PLFunction& o) const {
    if (t != o.t) return std::lexicographical_compare(t.begin(), t.end(), o.t.begin(), o.t.end());
    return std::lexicographical_compare(v.begin(), v.end(), o.v.begin(), o.v.end());
}

Rat PLFunction::value(const Rat& at) const {
    if (at < t.front() || at > t.back()) throw std::invalid_argument("t outside [0,1]");
    for (size_t s = 0; s + 1 < t.size(); ++s) {
        if (at <= t[s + 1]) return lerp(t[s], v[s], t[s + 1], v[s + 1], at);
    }
    return v.back();
}

Rat PLFunction::slope_right(const Rat& at) const {
    if (at < t.front() || at >= t.back()) throw std::invalid_argument("right slope needs t in [0,1)");
    for (size_t s = 0; s + 1 < t.size(); ++s) {
        if (at < t[s + 1]) return (v[s + 1] - v[s]) / (t[s + 1] - t[s]);
    }
    throw std::logic_error("unreachable");
}

std::vector<Rat> PLFunction::slopes() const {
    std::vector<Rat> out;
    for (size_t s = 0; s + 1 < t.size(); ++s) out.push_back((v[s + 1] - v[s]) / (t[s + 1] - t[s]));
    return out;
}

PLFunction PLFunction::shifted(const Rat& dv) const {
    PLFunction r = *this;
    for (Rat& x : r.v) x += dv;
    return r;
}

Rat PLFunction::max_abs() const {
    Rat best = 0;
    for (const Rat& x : v) {
        Rat a = x >= 0 ? x : Rat(-x);
        if (a > best) best = a;
    }
    return best;
}

PLFunction plf_from_samples(std::vector<std::pair<Rat, Rat>> samples) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    std::sort(samples.begin(), samples.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Rat, Rat>> pts;
    for (auto& s : samples) {
        if (!pts.empty() && pts.back().first == s.first) {
            if (pts.back().second != s.second)
                throw std::invalid_argument("conflicting samples at equal t");
            continue;
        }
        pts.push_back(std::move(s));
    }
    if (pts.front().first != 0 || pts.back().first != 1)
        throw std::invalid_argument("samples must span [0,1]");

    PLFunction f;
    for (size_t i = 0; i < pts.size(); ++i) {
        // drop interior points collinear with their neighbors
        while (f.t.size() >= 2) {
            size_t k = f.t.size();
            Rat lhs = (f.v[k - 1] - f.v[k - 2]) * (pts[i].first - f.t[k - 1]);
            Rat rhs = (pts[i].second - f.v[k - 1]) * (f.t[k - 1] - f.t[k - 2]);
            if (lhs == rhs) {
                f.t.pop_back();
                f.v.pop_back();
            } else {
                break;
            }
        }
        f.t.push_back(pts[i].first);
        f.v.push_back(pts[i].second);
    }
    return f;
}

PLFunction plf_linear(const Rat& v0, const Rat& slope) {
    PLFunction f;
    f.t = {Rat(0), Rat(1)};
    f.v = {v0, v0 + slope};
    return f;
}

namespace {

PLFunction combine(const PLFunction& a, const PLFunction& b, int bsign) {
    std::vector<Rat> ts;
    ts.insert(ts.end(), a.t.begin(), a.t.end());
    ts.insert(ts.end(), b.t.begin(), b.t.end());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<std::pair<Rat, Rat>> samples;
    for (const Rat& t : ts) samples.emplace_back(t, a.value(t) + bsign * b.value(t));
    return plf_from_samples(std::move(samples));
}

}  // namespace

PLFunction operator+(const PLFunction& a, const PLFunction& b) { return combine(a, b, 1); }
PLFunction operator-(const PLFunction& a, const PLFunction& b) { return combine(a, b, -1); }

}  // namespace khb
