#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "kmwb/workbench.hpp"

using namespace kmwb;

namespace {

TruncatedSeries constant_series(int nvars, int max_degree, const Rat& c) {
    TruncatedSeries out(nvars, max_degree);
    if (c != 0) out.parts[0].emplace(Exponents(nvars, 0), c);
    return out;
}

}  // namespace

TEST_CASE("expand_structure of the trivial class is e^{Q/2}") {
    IntersectionLattice hyp(2, {0, 1, 1, 0});
    KMStructure s({{Rat(1), {0, 0}}});
    TruncatedSeries q = expand_structure(s, hyp, 2);

    CHECK(poly_eval(q.parts[0], RatVec{Rat(1), Rat(1)}) == 1);
    CHECK(q.parts[1].empty());
    // degree-2 part is Q(x,x)/2; at x=(1,1) it is 1, so q_2((1,1)) = 2
    CHECK(poly_eval(q.parts[2], RatVec{Rat(1), Rat(1)}) == 1);
}

TEST_CASE("expand_structure of the empty structure vanishes") {
    IntersectionLattice hyp(2, {0, 1, 1, 0});
    CHECK(expand_structure(KMStructure(), hyp, 4).is_zero());
}

TEST_CASE("expand_structure of a +-K pair") {
    IntersectionLattice diag(2, {1, 0, 0, -1});
    KMStructure s({{Rat(1), {1, 0}}, {Rat(1), {-1, 0}}});
    TruncatedSeries q = expand_structure(s, diag, 2);

    CHECK(q.parts[1].empty());
    // degree-2 part Q(x,x) + (K.x)^2 over coefficient 2... stored as q_2/2!,
    // at x=(1,1): Q=0 and K.x=1, value (0 + 1 + 0 + 1)/2 = 1
    CHECK(poly_eval(q.parts[0], RatVec{Rat(1), Rat(1)}) == 2);
    CHECK(poly_eval(q.parts[2], RatVec{Rat(1), Rat(1)}) == 1);
    CHECK(evaluate(q, RatVec{Rat(1), Rat(1)}) == 3);
}

TEST_CASE("expand_structure is additive in the structure") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        int rank = testgen::uniform(rng, 1, 3);
        auto lat = testgen::random_lattice(rng, rank, 3);
        auto a = testgen::random_structure(rng, rank, 2, 3, 5, 4);
        auto b = testgen::random_structure(rng, rank, 2, 3, 5, 4);
        std::vector<KMTerm> merged = a.terms();
        for (const auto& t : b.terms()) merged.push_back(t);
        KMStructure both(std::move(merged));
        auto lhs = expand_structure(both, lat, 5);
        auto rhs = series_add(expand_structure(a, lat, 5), expand_structure(b, lat, 5));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("evaluate sums truncated parts; structures evaluate symbolically") {
    IntersectionLattice diag(2, {1, 0, 0, -1});
    CHECK(evaluate(TruncatedSeries(2, 3), RatVec{Rat(5), Rat(7)}) == 0);

    // x with Q(x,x) = 4: value is e^2, reported as exponent 2 with one term
    KMStructure s({{Rat(1), {0, 0}}});
    StructureValue v = evaluate_structure(s, diag, RatVec{Rat(2), Rat(0)});
    CHECK(v.half_self_pairing == 2);
    REQUIRE(v.terms.size() == 1);
    CHECK(v.terms[0].first == 1);
    CHECK(v.terms[0].second == 0);
}

TEST_CASE("mul_truncated cancels e^{Q/2} against e^{-Q/2}") {
    IntersectionLattice diag(2, {1, 0, 0, -1});
    auto plus = exp_truncated(quadratic_half_form(diag, +1, 6), 6);
    auto minus = exp_truncated(quadratic_half_form(diag, -1, 6), 6);
    CHECK(mul_truncated(plus, minus) == constant_series(2, 6, Rat(1)));
}

TEST_CASE("mul_truncated has a unit and squares binomials") {
    IntersectionLattice diag(2, {1, 0, 0, -1});
    auto f = expand_structure(KMStructure({{make_rat(Int(2), Int(3)), {1, 1}}}), diag, 4);
    CHECK(mul_truncated(f, constant_series(2, 4, Rat(1))) == f);

    // (1 + L)^2 = 1 + 2L + L^2 for L = x_0
    TruncatedSeries lin(2, 4);
    lin.parts[0].emplace(Exponents{0, 0}, Rat(1));
    lin.parts[1].emplace(Exponents{1, 0}, Rat(1));
    auto sq = mul_truncated(lin, lin);
    CHECK(sq.parts[0].at(Exponents{0, 0}) == 1);
    CHECK(sq.parts[1].at(Exponents{1, 0}) == 2);
    CHECK(sq.parts[2].at(Exponents{2, 0}) == 1);
    CHECK(sq.parts[3].empty());
}

TEST_CASE("normalize_C strips the quadratic exponential") {
    IntersectionLattice hyp(2, {0, 1, 1, 0});
    auto q = expand_structure(KMStructure({{Rat(1), {0, 0}}}), hyp, 4);
    CHECK(normalize_C(q, hyp) == constant_series(2, 4, Rat(1)));

    CHECK(normalize_C(TruncatedSeries(2, 4), hyp).is_zero());

    // 2 e^{K.x} with Q K = (1,0): parts 2, 2t, t^2, t^3/3 in t = x_0
    IntersectionLattice diag(2, {1, 0, 0, -1});
    auto c = normalize_C(expand_structure(KMStructure({{Rat(2), {1, 0}}}), diag, 3), diag);
    CHECK(c.parts[0].at(Exponents{0, 0}) == 2);
    CHECK(c.parts[1].at(Exponents{1, 0}) == 2);
    CHECK(c.parts[2].at(Exponents{2, 0}) == 1);
    CHECK(c.parts[3].at(Exponents{3, 0}) == make_rat(Int(1), Int(3)));
}

TEST_CASE("normalized expansion has parts a_i (K_i.x)^d / d!") {
    std::mt19937 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        int rank = testgen::uniform(rng, 1, 3);
        auto lat = testgen::random_lattice(rng, rank, 3);
        auto s = testgen::random_structure(rng, rank, 3, 3, 5, 4);
        int max_degree = 5;
        auto c = normalize_C(expand_structure(s, lat, max_degree), lat);
        TruncatedSeries expect(rank, max_degree);
        for (const auto& t : s.terms()) {
            auto e = exp_truncated(linear_pairing_form(lat, t.cls, max_degree), max_degree);
            expect = series_add(expect, series_scale(e, t.coefficient));
        }
        CHECK(c == expect);
    }
}

TEST_CASE("cosh parity: symmetric structures have even normalized parts") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        int rank = testgen::uniform(rng, 1, 3);
        auto lat = testgen::random_lattice(rng, rank, 3);
        auto half = testgen::random_structure(rng, rank, 2, 3, 5, 4);
        std::vector<KMTerm> sym;
        for (const auto& t : half.terms()) {
            sym.push_back(t);
            sym.push_back({t.coefficient, negate(t.cls)});
        }
        auto c = normalize_C(expand_structure(KMStructure(std::move(sym)), lat, 5), lat);
        for (int d = 1; d <= 5; d += 2) CHECK(c.parts[d].empty());
    }
}

TEST_CASE("contract differentiates along a direction") {
    IntersectionLattice diag(2, {1, 0, 0, -1});
    LatticeClass k{1, 0};
    auto f = exp_truncated(linear_pairing_form(diag, k, 5), 5);
    RatVec v{Rat(2), Rat(3)};
    // d/dv e^{K.x} = (K.v) e^{K.x}; here QK = (1,0) so K.v means (QK).v = 2
    auto once = contract(f, v, 1);
    auto expect = series_scale(exp_truncated(linear_pairing_form(diag, k, 4), 4), Rat(2));
    CHECK(once == expect);

    CHECK(contract(f, v, 0) == f);

    auto quad = quadratic_half_form(diag, +1, 2);
    auto second = contract(quad, v, 2);
    CHECK(poly_eval(second.parts[0], RatVec{}) == pair_q(diag, v, v));

    CHECK_THROWS_AS(contract(f, v, -1), Error);
}

TEST_CASE("contract composes and commutes") {
    std::mt19937 rng(5);
    IntersectionLattice lat = testgen::random_lattice(rng, 3, 3);
    auto f = expand_structure(testgen::random_structure(rng, 3, 3, 3, 5, 4), lat, 6);
    RatVec v{Rat(1), Rat(-2), Rat(3)};
    RatVec w{Rat(2), Rat(1), Rat(0)};
    CHECK(contract(contract(f, v, 1), v, 2) == contract(f, v, 3));
    CHECK(contract(contract(f, v, 1), w, 1) == contract(contract(f, w, 1), v, 1));
}
