#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "kmwb/workbench.hpp"

using namespace kmwb;

namespace {

// Coefficients of He_n(b) from the generating function e^{bt - t^2/2}:
// the t^n coefficient is He_n(b)/n!, so He_n(b) = n! [t^n] e^{bt - t^2/2}.
Rat hermite_at(int n, const Rat& b) {
    // one-variable series in t over the rank-1 lattice with Q = (-1)
    IntersectionLattice line(1, {-1});
    TruncatedSeries lin(1, n);
    if (b != 0) lin.parts[1].emplace(Exponents{1}, b);
    auto gauss = exp_truncated(quadratic_half_form(line, +1, n), n);  // e^{-t^2/2}
    auto f = mul_truncated(gauss, exp_truncated(lin, n));
    return poly_eval(f.parts[n], RatVec{Rat(1)}) * make_rat(factorial(n));
}

}  // namespace

TEST_CASE("Hermite oracle: He4(+-1) = -2 and He6(+-1) = 16") {
    CHECK(hermite_at(4, Rat(1)) == -2);
    CHECK(hermite_at(4, Rat(-1)) == -2);
    CHECK(hermite_at(6, Rat(1)) == 16);
    CHECK(hermite_at(6, Rat(-1)) == 16);
    // spot checks against the closed forms b^4 - 6b^2 + 3 and
    // b^6 - 15b^4 + 45b^2 - 15
    CHECK(hermite_at(4, Rat(2)) == 16 - 24 + 3);
    CHECK(hermite_at(6, Rat(2)) == 64 - 240 + 180 - 15);
}

TEST_CASE("blowup_lattice appends orthogonal -1 classes") {
    IntersectionLattice base(2, {0, 1, 1, 0});
    auto bm = blowup_lattice(base, 1);
    CHECK(bm.extended.rank() == 3);
    CHECK(bm.extended.entry(2, 2) == -1);
    CHECK(bm.extended.entry(0, 2) == 0);
    CHECK(pair(bm.extended, bm.exceptional(0), bm.exceptional(0)) == -1);

    auto bm0 = blowup_lattice(IntersectionLattice(0, {}), 1);
    CHECK(bm0.extended.rank() == 1);
    CHECK(bm0.extended.entry(0, 0) == -1);

    auto bm2 = blowup_lattice(base, 2);
    CHECK(pair(bm2.extended, bm2.exceptional(0), bm2.exceptional(1)) == 0);
}

TEST_CASE("blowup_structure splits terms over all sign patterns") {
    auto bm = blowup_lattice(IntersectionLattice(0, {}), 1);
    auto hat = blowup_structure(KMStructure({{Rat(1), {}}}), bm);
    REQUIRE(hat.size() == 2);
    CHECK(hat.terms()[0].coefficient == make_rat(Int(1), Int(2)));
    CHECK(hat.terms()[0].cls == LatticeClass{-1});
    CHECK(hat.terms()[1].cls == LatticeClass{1});

    CHECK(blowup_structure(KMStructure(), bm).empty());

    IntersectionLattice diag(2, {1, 0, 0, -1});
    auto bm1 = blowup_lattice(diag, 1);
    auto sym = blowup_structure(KMStructure({{Rat(1), {1, 0}}, {Rat(1), {-1, 0}}}), bm1);
    CHECK(sym.size() == 4);
    CHECK(sym.negation_closed());
}

TEST_CASE("blowup preserves parity on the extended lattice") {
    std::mt19937 rng(271);
    IntersectionLattice diag(2, {1, 0, 0, -1});
    auto bm = blowup_lattice(diag, 2);
    for (int trial = 0; trial < 20; ++trial) {
        IntVec w2{testgen::uniform(rng, 0, 1), testgen::uniform(rng, 0, 1)};
        LatticeClass k{2 * testgen::uniform(rng, -2, 2) + static_cast<int>(w2[0].get_si()),
                       2 * testgen::uniform(rng, -2, 2) + static_cast<int>(w2[1].get_si())};
        auto hat = blowup_structure(KMStructure({{Rat(1), k}}), bm);
        IntVec w2_hat{w2[0], w2[1], 1, 1};
        for (const auto& t : hat.terms()) CHECK(parity_equal(bm.extended, t.cls, w2_hat));
    }
}

TEST_CASE("blowdown_E4 is a round-trip on expanded blowups") {
    // the l = 1 rank-0 case: structure {(1/2,E),(1/2,-E)} collapses to 1
    auto bm = blowup_lattice(IntersectionLattice(0, {}), 1);
    auto hat = blowup_structure(KMStructure({{Rat(1), {}}}), bm);
    auto down = blowdown_E4(expand_structure(hat, bm.extended, 8), bm);
    CHECK(down.parts[0].at(Exponents{}) == 1);
    for (int d = 1; d <= down.max_degree(); ++d) CHECK(down.parts[d].empty());

    CHECK(blowdown_E4(TruncatedSeries(1, 8), bm).is_zero());

    std::mt19937 rng(9000);
    for (int trial = 0; trial < 15; ++trial) {
        int rank = testgen::uniform(rng, 1, 3);
        int l = testgen::uniform(rng, 1, 2);
        auto lat = testgen::random_lattice(rng, rank, 3);
        auto s = testgen::random_structure(rng, rank, 4, 3, 5, 4);
        auto bml = blowup_lattice(lat, l);
        int top = 8 + 4 * l;
        auto down_l = blowdown_E4(expand_structure(blowup_structure(s, bml), bml.extended, top),
                                  bml);
        auto expect = expand_structure(s, lat, top - 4 * l);
        CHECK(down_l == expect);
    }
}

TEST_CASE("blowdown_E4 rejects shallow truncations") {
    auto bm = blowup_lattice(IntersectionLattice(0, {}), 2);
    CHECK_THROWS_AS(blowdown_E4(TruncatedSeries(2, 7), bm), Error);
}

TEST_CASE("blowdown_E6 contracts once with the -8 audit factor") {
    auto bm = blowup_lattice(IntersectionLattice(0, {}), 1);
    auto hat = blowup_structure(KMStructure({{Rat(1), {}}}), bm);
    auto down = blowdown_E6(expand_structure(hat, bm.extended, 8), bm);
    CHECK(down.parts[0].at(Exponents{}) == -8);

    CHECK(blowdown_E6(TruncatedSeries(1, 8), bm).is_zero());

    auto bm2 = blowup_lattice(IntersectionLattice(0, {}), 2);
    CHECK_THROWS_AS(blowdown_E6(TruncatedSeries(2, 8), bm2), Error);
    CHECK_THROWS_AS(blowdown_E6(TruncatedSeries(1, 5), bm), Error);
}
