#pragma once

// Braid words on n strands, Murasugi normal forms for 3-braids, and the
// elementary combinatorial invariants of their annular closures.
//
// Text format (normative): "<n>: w1 w2 ... wk" with signed decimal letters,
// letter +i / -i meaning sigma_i^{+1} / sigma_i^{-1}.  Normal form text:
// "F<1|2|3> d=<int> [a=<comma separated ints> | m=<int>]".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace khb {

struct BraidWord {
    int strands = 1;
    std::vector<int> letters;  // nonzero, |letter| <= strands-1

    bool operator==(const BraidWord&) const = default;
};

BraidWord parse_braid_word(const std::string& text);
std::string format_braid_word(const BraidWord& w);

int writhe(const BraidWord& w);
BraidWord mirror_word(const BraidWord& w);
int self_linking(const BraidWord& w);  // writhe - strands

// Number of cycles of the underlying permutation, i.e. components of the
// closure.
int closure_component_count(const BraidWord& w);

// Permutation of the closure: strand starting at top position s (1-based)
// continues, through the closure arc, as the strand starting at perm[s-1].
std::vector<int> closure_permutation(const BraidWord& w);

// Component id (0-based, by smallest strand) of each strand.
std::vector<int> strand_components(const BraidWord& w);

// Word on a.strands + b.strands strands whose closure is the split union.
BraidWord disjoint_union(const BraidWord& a, const BraidWord& b);

// ---------------------------------------------------------------------------
// Murasugi normal forms of 3-braids: one of
//   family 1:  h^d s1 s2^{-a_1} ... s1 s2^{-a_n},  a_i >= 0, some a_i > 0
//   family 2:  h^d s2^m
//   family 3:  h^d s1^m s2^{-1},  m in {-1,-2,-3}
// with h = (s1 s2)^3 the full twist.

struct MurasugiNF {
    int family = 2;           // 1, 2 or 3
    int d = 0;                // power of the full twist
    std::vector<int> a;       // family 1 payload
    int m = 0;                // family 2 / 3 payload

    bool operator==(const MurasugiNF&) const = default;
};

// Throws ParseError if the payload violates the family constraints.
void validate_nf(const MurasugiNF& nf);

MurasugiNF parse_nf(const std::string& text);
std::string format_nf(const MurasugiNF& nf);

// h^d is expanded as (s1 s2)^{3d}, or (s2^-1 s1^-1)^{3|d|} for d < 0.
BraidWord nf_to_word(const MurasugiNF& nf);

// Closed form of writhe(nf_to_word(nf)).
int nf_writhe(const MurasugiNF& nf);

}  // namespace khb
