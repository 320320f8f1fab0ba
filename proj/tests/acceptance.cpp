// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.  Exit code is the number of
// failed criteria.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "khb/braid.hpp"
#include "khb/invariants.hpp"
#include "khb/murasugi3.hpp"
#include "khb/scanner.hpp"
#include "khb/shapes.hpp"
#include "testutil.hpp"

using namespace khb;

namespace {

struct Criterion {
    bool ok = true;
    std::ostringstream notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes << "\n      failed: " << what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const char* kHinv4 = "3: -1 -2 -1 -2 -1 -2 2 2 2 2";

// the verification grid of criteria 4 and 5
std::vector<MurasugiNF> verification_grid() {
    std::vector<MurasugiNF> grid;
    for (int d : {0, 1}) {
        std::vector<std::vector<int>> lists;
        for (int a1 = 0; a1 <= 4; ++a1) lists.push_back({a1});
        for (int a1 = 0; a1 <= 3; ++a1)
            for (int a2 = 0; a2 <= 3; ++a2) lists.push_back({a1, a2});
        for (int a1 = 0; a1 <= 2; ++a1)
            for (int a2 = 0; a2 <= 2; ++a2)
                for (int a3 = 0; a3 <= 2; ++a3) lists.push_back({a1, a2, a3});
        for (auto& a : lists) {
            bool positive = false;
            for (int ai : a) positive |= ai > 0;
            if (!positive) continue;
            MurasugiNF nf{1, d, a, 0};
            if (nf_to_word(nf).letters.size() <= 12) grid.push_back(nf);
        }
    }
    for (int d : {-1, 0, 1})
        for (int m = -5; m <= 5; ++m) grid.push_back(MurasugiNF{2, d, {}, m});
    for (int d : {0, 1})
        for (int m : {-1, -2, -3}) grid.push_back(MurasugiNF{3, d, {}, m});
    return grid;
}

int delta_of(const MurasugiNF& nf) {
    return classify3(nf, std::nullopt, Fallback::Compute).delta;
}

}  // namespace

int main(int argc, char** argv) {
    // optional argument: run a single criterion
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    auto report = [&](int num, const std::string& name, Criterion& c) {
        std::cout << (c.ok ? "PASS" : "FAIL") << "  " << num << ". " << name << c.notes.str()
                  << "\n";
        if (!c.ok) ++failures;
    };
    auto wanted = [&](int num) { return only == 0 || only == num; };

    BraidWord hinv4 = parse_braid_word(kHinv4);

    if (wanted(1)) {  // 1. headline s invariant via both routes, under 60 s
        Criterion c;
        auto t0 = std::chrono::steady_clock::now();
        c.require(s_invariant(hinv4) == -2, "s_invariant(h^-1 s2^4) == -2");
        auto rank = s_via_rank_matching(hinv4);
        c.require(rank.has_value() && *rank == -2, "s_via_rank_matching == -2");
        double dt = seconds_since(t0);
        c.require(dt < 60.0, "cube backend under 60 s");
        c.notes << "  (" << dt << " s)";
        report(1, "s(h^-1 s2^4) = -2 via filtration search and rank matching", c);
    }

    if (wanted(2)) {  // 2. the headline homology row from both backends
        Criterion c;
        AnnularComplex cube = build_cube(hinv4);
        GradedDims kh = homology_dims(cube, Diff::Del, Field::Q, Detail::IJ);
        c.require(kh.at(0, -3) == 1 && kh.at(0, -1) == 3 && kh.at(0, 1) == 2,
                  "cube Kh row {j=-3:1, j=-1:3, j=1:2}");
        int64_t kh0 = 0;
        for (auto& [key, d] : kh.dims)
            if (key[0] == 0) kh0 += d;
        c.require(kh0 == 6, "cube Kh^0 total 6");
        GradedDims scan = scan_kh_dims(hinv4);
        c.require(scan.at(0, -3) == 1 && scan.at(0, -1) == 3 && scan.at(0, 1) == 2,
                  "scanner Kh row {j=-3:1, j=-1:3, j=1:2}");
        GradedDims lee = homology_dims(cube, Diff::DelPhi, Field::Q, Detail::I);
        c.require(lee.at(0) == 6, "Lee dimension 6 at i=0");
        c.require(lee.total() == 8, "total Lee dimension 2^3");
        report(2, "Kh/Lee dimensions of h^-1 s2^4 from both backends", c);
    }

    if (wanted(3)) {  // 3. shape catalog counts
        Criterion c;
        auto t0 = std::chrono::steady_clock::now();
        c.require(enumerate_dt_shapes(3).size() == 3, "3 shapes for 3-braids");
        c.require(enumerate_dt_shapes(4).size() == 7, "7 shapes for 4-braids");
        size_t n5 = enumerate_dt_shapes(5).size();
        c.require(n5 == 18, "18 shapes for 5-braids (the enumeration yields " +
                                std::to_string(n5) + "; see README, Tests)");
        c.require(enumerate_upsilon_shapes(1).size() == 5, "5 Upsilon shapes at genus 1");
        c.require(enumerate_upsilon_shapes(2).size() > 50, "more than 50 at genus 2");
        double dt = seconds_since(t0);
        c.require(dt < 10.0, "all enumerations under 10 s");
        c.notes << "  (" << dt << " s)";
        report(3, "shape catalog counts", c);
    }

    std::vector<MurasugiNF> grid;
    if (wanted(4) || wanted(5)) grid = verification_grid();

    if (wanted(4)) {  // 4. d_t closed forms across the verification grid
        Criterion c;
        int checked = 0;
        for (const MurasugiNF& nf : grid) {
            BraidWord w = nf_to_word(nf);
            PLFunction engine = dt_function(w);
            PLFunction closed = dt3_closed_form(delta_of(nf), nf_writhe(nf));
            if (!(engine == closed)) c.require(false, "dt mismatch at " + format_nf(nf));
            ++checked;
        }
        c.notes << "  (" << checked << " normal forms)";
        report(4, "dt_function equals dt3_closed_form on the verification grid", c);
    }

    if (wanted(5)) {  // 5. psi <-> list A <-> s = w - 2
        Criterion c;
        for (const MurasugiNF& nf : grid) {
            BraidWord w = nf_to_word(nf);
            bool psi = psi_nonvanishing(w);
            bool listA = in_list_A(nf);
            bool smax = delta_of(nf) == -2;
            if (psi != listA) c.require(false, "psi vs list A at " + format_nf(nf));
            if (listA != smax) c.require(false, "list A vs s=w-2 at " + format_nf(nf));
        }
        c.require(!psi_nonvanishing(nf_to_word(MurasugiNF{2, 1, {}, -5})), "psi(h s2^-5) = 0");
        c.require(psi_nonvanishing(nf_to_word(MurasugiNF{2, 1, {}, -4})), "psi(h s2^-4) != 0");
        report(5, "psi nonvanishing coincides with list A and s = w - 2", c);
    }

    if (wanted(6)) {  // 6. property battery on random words
        Criterion c;
        std::mt19937 rng(20260808);
        int words = 0;
        while (words < 50) {
            BraidWord w = khbtest::random_word(rng, 4, 10);
            ++words;
            AnnularComplex cube = build_cube(w);
            // differentials
            for (size_t s = 0; s + 1 < cube.maps.size(); ++s) {
                std::map<int64_t, std::vector<std::pair<int64_t, Rat>>> d1, l1, d2, l2;
                for (auto& e : cube.maps[s]) {
                    if (e.kind == 0) d1[e.src].emplace_back(e.dst, Rat(e.coef));
                    l1[e.src].emplace_back(e.dst, Rat(e.coef));
                }
                for (auto& e : cube.maps[s + 1]) {
                    if (e.kind == 0) d2[e.src].emplace_back(e.dst, Rat(e.coef));
                    l2[e.src].emplace_back(e.dst, Rat(e.coef));
                }
                auto square_zero = [&](auto& first, auto& second) {
                    std::map<std::pair<int64_t, int64_t>, Rat> sq;
                    for (auto& [src, mids] : first)
                        for (auto& [mid, c1] : mids) {
                            auto it = second.find(mid);
                            if (it == second.end()) continue;
                            for (auto& [dst, c2] : it->second) sq[{src, dst}] += c1 * c2;
                        }
                    for (auto& [key, q] : sq)
                        if (q != 0) return false;
                    return true;
                };
                if (!square_zero(d1, d2)) c.require(false, "del^2 != 0 on " + format_braid_word(w));
                if (!square_zero(l1, l2))
                    c.require(false, "(del+Phi)^2 != 0 on " + format_braid_word(w));
            }
            for (size_t s = 0; s < cube.maps.size(); ++s) {
                int i = cube.i_lo + static_cast<int>(s);
                for (auto& e : cube.maps[s]) {
                    int dj = cube.grade_j(i + 1, e.dst) - cube.grade_j(i, e.src);
                    int dk = cube.grade_k(i + 1, e.dst) - cube.grade_k(i, e.src);
                    if (dj < 0 || dj - 2 * dk < 0)
                        c.require(false, "filtered entry violated on " + format_braid_word(w));
                }
            }
            PLFunction f = dt_function(w);
            if (f.value(Rat(1)) != writhe(w)) c.require(false, "d_1 != w on " + format_braid_word(w));
            if (f.value(Rat(0)) != s_invariant(w) - 1)
                c.require(false, "d_0 != s-1 on " + format_braid_word(w));
            for (const Rat& m : f.slopes()) {
                if (!rat_is_int(m) || rat_num_l(m) > w.strands || rat_num_l(m) < -w.strands + 2)
                    c.require(false, "slope outside range on " + format_braid_word(w));
            }
            if (!enumerate_dt_shapes(w.strands).count(f.shifted(Rat(-writhe(w)))))
                c.require(false, "shape not enumerated for " + format_braid_word(w));
            GradedDims scan = scan_kh_dims(w);
            GradedDims kh = homology_dims(cube, Diff::Del, Field::Q, Detail::IJ);
            if (scan.dims != kh.dims) c.require(false, "backends differ on " + format_braid_word(w));
        }
        c.notes << "  (" << words << " words)";
        report(6, "property battery: differentials, endpoints, slopes, shapes, backends", c);
    }

    if (wanted(7)) {  // 7. mirrors, disjoint unions, cobordism bound, 3-braid monotonicity
        Criterion c;
        std::mt19937 rng(424242);
        int knots = 0;
        while (knots < 10) {
            BraidWord w = khbtest::random_word(rng, 3, 8);
            if (closure_component_count(w) != 1) continue;
            ++knots;
            if (s_invariant(mirror_word(w)) != -s_invariant(w))
                c.require(false, "mirror antisymmetry on " + format_braid_word(w));
        }
        for (int rep = 0; rep < 10; ++rep) {
            BraidWord a = khbtest::random_word(rng, 2, 4), b = khbtest::random_word(rng, 2, 4);
            if (!(dt_function(disjoint_union(a, b)) == dt_function(a) + dt_function(b)))
                c.require(false, "dt additivity on " + format_braid_word(disjoint_union(a, b)));
        }
        for (int rep = 0; rep < 10; ++rep) {
            BraidWord w = khbtest::random_word(rng, 3, 6);
            std::uniform_int_distribution<int> gen(1, w.strands - 1), sign(0, 1);
            BraidWord w2 = w;
            w2.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
            if ((dt_function(w2) - dt_function(w)).max_abs() > 1)
                c.require(false, "cobordism bound on " + format_braid_word(w2));
        }
        int cases = 0;
        while (cases < 20) {
            BraidWord w = khbtest::random_word(rng, 3, 6);
            if (w.strands != 3) continue;
            ++cases;
            std::uniform_int_distribution<int> gen(1, 2), sign(0, 1);
            int letter = sign(rng) ? gen(rng) : -gen(rng);
            BraidWord w2 = w;
            w2.letters.push_back(letter);
            PLFunction f = dt_function(w), g = dt_function(w2);
            std::set<Rat> ts(f.t.begin(), f.t.end());
            ts.insert(g.t.begin(), g.t.end());
            std::vector<Rat> gridt(ts.begin(), ts.end());
            for (size_t q = 0; q + 1 < gridt.size(); ++q) {
                Rat mid = (gridt[q] + gridt[q + 1]) / 2;
                bool mono = letter > 0 ? g.slope_right(mid) >= f.slope_right(mid)
                                       : g.slope_right(mid) <= f.slope_right(mid);
                if (!mono) c.require(false, "slope monotonicity on " + format_braid_word(w2));
            }
        }
        report(7, "mirror, disjoint union, cobordism bound, 3-braid monotonicity", c);
    }

    if (wanted(8)) {  // 8. filtration level against brute force over F2
        Criterion c;
        std::mt19937 rng(777);
        std::uniform_int_distribution<int> nr(1, 12), nc(0, 10), dens(0, 3), jv(-6, 6), kv(-3, 3),
            tn(0, 4);
        for (int rep = 0; rep < 20; ++rep) {
            int rows = nr(rng), cols_n = nc(rng);
            std::vector<Rat> phi(rows);
            Rat t = make_rat(tn(rng), 4);
            for (int r = 0; r < rows; ++r) phi[r] = Rat(jv(rng)) - t * Rat(kv(rng));
            std::vector<linalg::SparseVec<linalg::F2>> cols(cols_n);
            for (auto& col : cols)
                for (int r = 0; r < rows; ++r)
                    if (dens(rng) == 0) col.emplace_back(r, 1);
            linalg::SparseVec<linalg::F2> z;
            for (int r = 0; r < rows; ++r)
                if (dens(rng) == 0) z.emplace_back(r, 1);
            bool vanish_brute = false, vanish_fast = false;
            Rat expect, got;
            try {
                expect = khbtest::brute_filtration_level_f2(phi, cols, z);
            } catch (const std::domain_error&) {
                vanish_brute = true;
            }
            try {
                got = linalg::filtration_level_raw<linalg::F2>(phi, cols, z);
            } catch (const std::domain_error&) {
                vanish_fast = true;
            }
            if (vanish_brute != vanish_fast || (!vanish_brute && expect != got))
                c.require(false, "oracle mismatch at rep " + std::to_string(rep));
        }
        report(8, "filtration level equals brute-force coset maximization over F2", c);
    }

    if (only == 0) {
        if (failures == 0)
            std::cout << "all acceptance criteria passed\n";
        else
            std::cout << failures << " criterion(s) failed\n";
    }
    return failures;
}
