#include "khb/murasugi3.hpp"

#include "doctest.h"
#include "khb/error.hpp"
#include "khb/invariants.hpp"
#include "khb/shapes.hpp"
#include "testutil.hpp"

using namespace khb;

TEST_CASE("membership lists") {
    CHECK(in_list_A(MurasugiNF{2, 1, {}, -4}));
    CHECK(!in_list_A(MurasugiNF{2, 1, {}, -5}));
    CHECK(!in_list_A(MurasugiNF{3, 0, {}, -1}));
    CHECK(in_list_A(MurasugiNF{1, 1, {1}, 0}));
    CHECK(!in_list_A(MurasugiNF{1, 0, {1}, 0}));
    CHECK(in_list_A(MurasugiNF{2, 0, {}, 0}));
    CHECK(in_list_A(MurasugiNF{2, 2, {}, -9}));

    CHECK(in_list_B(MurasugiNF{2, 1, {}, -3}));
    CHECK(!in_list_B(MurasugiNF{2, 1, {}, -4}));
    CHECK(!in_list_B(MurasugiNF{2, 0, {}, 5}));
    CHECK(in_list_B(MurasugiNF{3, 1, {}, -2}));
}

TEST_CASE("mirror normal forms") {
    auto m = mirror_nf(MurasugiNF{2, 1, {}, -4});
    REQUIRE(m.has_value());
    CHECK(*m == MurasugiNF{2, -1, {}, 4});
    CHECK(*mirror_nf(*m) == MurasugiNF{2, 1, {}, -4});
    CHECK(!mirror_nf(MurasugiNF{1, 1, {1}, 0}).has_value());
    CHECK(!mirror_nf(MurasugiNF{3, 1, {}, -1}).has_value());
}

TEST_CASE("classify3 closed forms") {
    // h^-1 s2^4: mirror known in closed form, lands outside both lists
    Classification3 c = classify3(MurasugiNF{2, -1, {}, 4});
    CHECK(c.delta == 0);
    CHECK(c.s == -2);
    CHECK(c.writhe == -2);
    CHECK(c.source == ClassifySource::MirrorClosedForm);
    CHECK(!c.psi_nonzero);
    CHECK(c.dt == plf_linear(Rat(-3), Rat(1)));

    // h s2^-4: quasipositive pivot
    c = classify3(MurasugiNF{2, 1, {}, -4});
    CHECK(c.delta == -2);
    CHECK(c.s == 0);
    CHECK(c.psi_nonzero);
    CHECK(c.dt == plf_linear(Rat(-1), Rat(3)));
    CHECK(c.source == ClassifySource::ClosedForm);

    // h^-1 s2^3: mirror in list B
    c = classify3(MurasugiNF{2, -1, {}, 3});
    CHECK(c.delta == 2);
    CHECK(c.s == -1);
    CHECK(c.dt == plf_linear(Rat(-2), Rat(-1)));

    // split braid s2^-3
    c = classify3(MurasugiNF{2, 0, {}, -3});
    CHECK(c.delta == 0);
    CHECK(c.s == -3);

    // family 1 with d > 0 needs no mirror
    c = classify3(MurasugiNF{1, 1, {1}, 0});
    CHECK(c.delta == -2);
    CHECK(c.source == ClassifySource::ClosedForm);
}

TEST_CASE("classify3 fallback and errors") {
    CHECK_THROWS_AS(classify3(MurasugiNF{1, 0, {1}, 0}), UndeterminedError);
    CHECK_THROWS_AS(classify3(MurasugiNF{3, 0, {}, -1}), UndeterminedError);

    // s1^-1 s2^-1 closes to the unknot: s = 0, w = -2, delta = +2
    Classification3 c = classify3(MurasugiNF{3, 0, {}, -1}, std::nullopt, Fallback::Compute);
    CHECK(c.source == ClassifySource::ComputedFallback);
    CHECK(c.writhe == -2);
    CHECK(c.s == 0);
    CHECK(c.delta == 2);

    // caller-provided mirror must at least have the right writhe, and must
    // match the closed form when one exists
    CHECK_THROWS_AS(classify3(MurasugiNF{2, -1, {}, 4},
                              std::optional<MurasugiNF>(MurasugiNF{2, 1, {}, -5})),
                    ParseError);
    CHECK_THROWS_AS(classify3(MurasugiNF{2, -1, {}, 4},
                              std::optional<MurasugiNF>(MurasugiNF{2, 2, {}, -10})),
                    ParseError);

    // family 3 mirror supplied by the caller: m(h^-1 s1^-1 s2^-1) = h s1 s2
    // is conjugate to h^2 s1^-3 s2^-1; the closure is the mirror of the (3,4)
    // torus knot, so delta must come out +2 either way
    Classification3 k = classify3(MurasugiNF{3, -1, {}, -1},
                                  std::optional<MurasugiNF>(MurasugiNF{3, 2, {}, -3}));
    CHECK(k.delta == 2);
    CHECK(k.s == -6);
    Classification3 k2 = classify3(MurasugiNF{3, -1, {}, -1}, std::nullopt, Fallback::Compute);
    CHECK(k2.delta == k.delta);
    CHECK(k2.s == k.s);
}

TEST_CASE("classification partition on the closed-form grid") {
    // family 2 covers every (A, B, neither) combination
    for (int d = -2; d <= 2; ++d)
        for (int m = -6; m <= 6; ++m) {
            MurasugiNF nf{2, d, {}, m};
            int fired = (in_list_A(nf) ? 1 : 0) + (in_list_B(*mirror_nf(nf)) ? 1 : 0);
            CHECK(fired <= 1);
            Classification3 c = classify3(nf);
            CHECK(c.dt == dt3_closed_form(c.delta, c.writhe));
            CHECK(c.psi_nonzero == (c.delta == -2));
            CHECK(c.psi_nonzero == in_list_A(nf));
        }
}

TEST_CASE("closed forms agree with the engine on a verification grid") {
    std::vector<MurasugiNF> grid;
    for (int d : {-1, 0, 1})
        for (int m = -4; m <= 4; ++m) grid.push_back(MurasugiNF{2, d, {}, m});
    for (int d : {0, 1})
        for (int m : {-1, -2, -3}) grid.push_back(MurasugiNF{3, d, {}, m});
    grid.push_back(MurasugiNF{1, 0, {1}, 0});
    grid.push_back(MurasugiNF{1, 0, {2, 1}, 0});
    grid.push_back(MurasugiNF{1, 1, {1}, 0});
    grid.push_back(MurasugiNF{1, 1, {0, 2}, 0});

    for (const MurasugiNF& nf : grid) {
        BraidWord w = nf_to_word(nf);
        if (w.letters.size() > 12) continue;
        Classification3 c = classify3(nf, std::nullopt, Fallback::Compute);
        CHECK(c.s == s_invariant(w));
        CHECK(c.dt == dt_function(w));
        CHECK(c.psi_nonzero == psi_nonvanishing(w));
    }
}
