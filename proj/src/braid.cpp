#include "khb/braid.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "khb/error.hpp"

namespace khb {

namespace {

int parse_int_token(const std::string& tok) {
    size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError("malformed token '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError("malformed token '" + tok + "'");
    return v;
}

}  // namespace

BraidWord parse_braid_word(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("missing ':' in braid word");
    std::string head = text.substr(0, colon);
    // trim
    while (!head.empty() && isspace(static_cast<unsigned char>(head.back()))) head.pop_back();
    while (!head.empty() && isspace(static_cast<unsigned char>(head.front()))) head.erase(head.begin());
    if (head.empty()) throw ParseError("missing strand count");
    int n = parse_int_token(head);
    if (n < 1) throw ParseError("strand count must be >= 1");

    BraidWord w;
    w.strands = n;
    std::istringstream rest(text.substr(colon + 1));
    std::string tok;
    while (rest >> tok) {
        int v = parse_int_token(tok);
        if (v == 0) throw ParseError("letter 0 is not a generator");
        if (std::abs(v) > n - 1) throw ParseError("generator index out of range: " + tok);
        w.letters.push_back(v);
    }
    return w;
}

std::string format_braid_word(const BraidWord& w) {
    std::ostringstream os;
    os << w.strands << ":";
    for (int v : w.letters) os << ' ' << v;
    return os.str();
}

int writhe(const BraidWord& w) {
    int s = 0;
    for (int v : w.letters) s += (v > 0) ? 1 : -1;
    return s;
}

BraidWord mirror_word(const BraidWord& w) {
    BraidWord m = w;
    for (int& v : m.letters) v = -v;
    return m;
}

int self_linking(const BraidWord& w) { return writhe(w) - w.strands; }

std::vector<int> closure_permutation(const BraidWord& w) {
    int n = w.strands;
    // occupant[p] = strand currently at position p+1
    std::vector<int> occ(n);
    std::iota(occ.begin(), occ.end(), 1);
    for (int v : w.letters) {
        int i = std::abs(v) - 1;
        std::swap(occ[i], occ[i + 1]);
    }
    // strand s ends at bottom position q; the closure arc at q continues into
    // the strand starting at q.
    std::vector<int> perm(n);
    for (int q = 0; q < n; ++q) perm[occ[q] - 1] = q + 1;
    return perm;
}

std::vector<int> strand_components(const BraidWord& w) {
    auto perm = closure_permutation(w);
    int n = w.strands;
    std::vector<int> comp(n, -1);
    int next = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        int c = next++;
        int cur = s;
        while (comp[cur] < 0) {
            comp[cur] = c;
            cur = perm[cur] - 1;
        }
    }
    return comp;
}

int closure_component_count(const BraidWord& w) {
    auto comp = strand_components(w);
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

BraidWord disjoint_union(const BraidWord& a, const BraidWord& b) {
    BraidWord u;
    u.strands = a.strands + b.strands;
    u.letters = a.letters;
    for (int v : b.letters) u.letters.push_back(v > 0 ? v + a.strands : v - a.strands);
    return u;
}

// ---------------------------------------------------------------------------

void validate_nf(const MurasugiNF& nf) {
    switch (nf.family) {
        case 1: {
            if (nf.a.empty()) throw ParseError("family 1 requires a nonempty exponent list");
            bool positive = false;
            for (int ai : nf.a) {
                if (ai < 0) throw ParseError("family 1 exponents must be >= 0");
                if (ai > 0) positive = true;
            }
            if (!positive) throw ParseError("family 1 requires some a_i > 0");
            break;
        }
        case 2:
            break;
        case 3:
            if (nf.m < -3 || nf.m > -1) throw ParseError("family 3 requires m in {-1,-2,-3}");
            break;
        default:
            throw ParseError("normal form family must be 1, 2 or 3");
    }
}

MurasugiNF parse_nf(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    if (!(is >> tok) || tok.size() != 2 || tok[0] != 'F')
        throw ParseError("normal form must start with F1, F2 or F3");
    MurasugiNF nf;
    nf.family = tok[1] - '0';
    bool have_d = false, have_payload = false;
    while (is >> tok) {
        if (tok.rfind("d=", 0) == 0) {
            nf.d = parse_int_token(tok.substr(2));
            have_d = true;
        } else if (tok.rfind("m=", 0) == 0) {
            nf.m = parse_int_token(tok.substr(2));
            have_payload = true;
        } else if (tok.rfind("a=", 0) == 0) {
            std::string list = tok.substr(2);
            std::string item;
            std::istringstream ls(list);
            while (std::getline(ls, item, ',')) nf.a.push_back(parse_int_token(item));
            have_payload = true;
        } else {
            throw ParseError("unexpected token '" + tok + "' in normal form");
        }
    }
    if (!have_d) throw ParseError("normal form is missing d=");
    if (nf.family == 1 && (!have_payload || nf.a.empty()))
        throw ParseError("family 1 is missing a=");
    if ((nf.family == 2 || nf.family == 3) && !have_payload)
        throw ParseError("family " + std::to_string(nf.family) + " is missing m=");
    validate_nf(nf);
    return nf;
}

std::string format_nf(const MurasugiNF& nf) {
    std::ostringstream os;
    os << 'F' << nf.family << " d=" << nf.d;
    if (nf.family == 1) {
        os << " a=";
        for (size_t i = 0; i < nf.a.size(); ++i) {
            if (i) os << ',';
            os << nf.a[i];
        }
    } else {
        os << " m=" << nf.m;
    }
    return os.str();
}

BraidWord nf_to_word(const MurasugiNF& nf) {
    validate_nf(nf);
    BraidWord w;
    w.strands = 3;
    if (nf.d >= 0) {
        for (int r = 0; r < 3 * nf.d; ++r) {
            w.letters.push_back(1);
            w.letters.push_back(2);
        }
    } else {
        for (int r = 0; r < -3 * nf.d; ++r) {
            w.letters.push_back(-2);
            w.letters.push_back(-1);
        }
    }
    switch (nf.family) {
        case 1:
            for (int ai : nf.a) {
                w.letters.push_back(1);
                for (int r = 0; r < ai; ++r) w.letters.push_back(-2);
            }
            break;
        case 2:
            for (int r = 0; r < std::abs(nf.m); ++r) w.letters.push_back(nf.m > 0 ? 2 : -2);
            break;
        case 3:
            for (int r = 0; r < -nf.m; ++r) w.letters.push_back(-1);
            w.letters.push_back(-2);
            break;
    }
    return w;
}

int nf_writhe(const MurasugiNF& nf) {
    validate_nf(nf);
    switch (nf.family) {
        case 1: {
            int sum = 0;
            for (int ai : nf.a) sum += ai;
            return 6 * nf.d + static_cast<int>(nf.a.size()) - sum;
        }
        case 2:
            return 6 * nf.d + nf.m;
        default:
            return 6 * nf.d + nf.m - 1;
    }
}

}  // namespace khb
