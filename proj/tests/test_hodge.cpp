#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "kmwb/workbench.hpp"

using namespace kmwb;

namespace {

// omega = e1 + i e2, its conjugate, and h = e3 over Q = diag(1,1,-1).
IntersectionLattice hodge_lattice() {
    return IntersectionLattice(3, {1, 0, 0, 0, 1, 0, 0, 0, -1});
}

HodgeBasis standard_basis() {
    GaussRat zero, one(Rat(1)), i_unit(Rat(0), Rat(1));
    HodgeVector omega{Bidegree::TwoZero, {one, i_unit, zero}};
    HodgeVector omega_bar{Bidegree::ZeroTwo, {one, GaussRat(Rat(0), Rat(-1)), zero}};
    HodgeVector h{Bidegree::OneOne, {zero, zero, one}};
    return HodgeBasis(hodge_lattice(), {omega, omega_bar, h});
}

KMStructure random_11_structure(std::mt19937& rng, int max_terms) {
    // type-(1,1) classes over the standard basis are the multiples of e3
    std::set<int> used;
    std::vector<KMTerm> terms;
    int want = testgen::uniform(rng, 1, max_terms);
    while (static_cast<int>(terms.size()) < want) {
        int c = testgen::uniform(rng, -5, 5);
        if (!used.insert(c).second) continue;
        terms.push_back({testgen::random_coeff(rng, 5, 4), LatticeClass{0, 0, c}});
    }
    return KMStructure(std::move(terms));
}

}  // namespace

TEST_CASE("hodge basis validation enforces the period relations") {
    CHECK_NOTHROW(standard_basis());

    // Q(omega, omega) != 0 when omega = e1 + i e3 over diag(1,1,-1)
    GaussRat zero, one(Rat(1)), i_unit(Rat(0), Rat(1));
    HodgeVector bad_omega{Bidegree::TwoZero, {one, zero, i_unit}};
    HodgeVector bad_bar{Bidegree::ZeroTwo, {one, zero, GaussRat(Rat(0), Rat(-1))}};
    HodgeVector h{Bidegree::OneOne, {zero, one, zero}};
    CHECK_THROWS_AS(HodgeBasis(hodge_lattice(), {bad_omega, bad_bar, h}), Error);

    // missing conjugate
    HodgeVector omega{Bidegree::TwoZero, {one, i_unit, zero}};
    HodgeVector wrong_bar{Bidegree::ZeroTwo, {one, i_unit, zero}};
    CHECK_THROWS_AS(HodgeBasis(hodge_lattice(), {omega, wrong_bar, h}), Error);
}

TEST_CASE("to_hodge_coordinates rewrites Q(x,x) as 4ab - c^2") {
    auto hb = standard_basis();
    MonomialMap<Rat> q;  // x1^2 + x2^2 - x3^2
    q.emplace(Exponents{2, 0, 0}, Rat(1));
    q.emplace(Exponents{0, 2, 0}, Rat(1));
    q.emplace(Exponents{0, 0, 2}, Rat(-1));
    auto rewritten = to_hodge_coordinates(hb, q);
    REQUIRE(rewritten.size() == 2);
    CHECK(rewritten.at(Exponents{1, 1, 0}) == GaussRat(Rat(4)));
    CHECK(rewritten.at(Exponents{0, 0, 2}) == GaussRat(Rat(-1)));

    MonomialMap<Rat> c;
    c.emplace(Exponents{0, 0, 0}, make_rat(Int(7), Int(2)));
    CHECK(to_hodge_coordinates(hb, c) ==
          MonomialMap<GaussRat>{{Exponents{0, 0, 0}, GaussRat(make_rat(Int(7), Int(2)))}});

    // identity (all (1,1)) basis leaves polynomials unchanged
    GaussRat zero, one(Rat(1));
    HodgeVector e1{Bidegree::OneOne, {one, zero, zero}};
    HodgeVector e2{Bidegree::OneOne, {zero, one, zero}};
    HodgeVector e3{Bidegree::OneOne, {zero, zero, one}};
    HodgeBasis id(hodge_lattice(), {e1, e2, e3});
    auto same = to_hodge_coordinates(id, q);
    for (const auto& [e, coeff] : q) CHECK(same.at(e) == GaussRat(coeff));
}

TEST_CASE("purity holds for (1,1)-structures and fails on constructed impurity") {
    auto hb = standard_basis();
    auto lat = hodge_lattice();
    std::mt19937 rng(555);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = random_11_structure(rng, 3);
        CHECK(purity_check(hb, expand_structure(s, lat, 8)).pure);
    }

    TruncatedSeries impure(3, 2);
    impure.parts[2].emplace(Exponents{2, 0, 0}, Rat(1));  // (x1)^2 has a (4,0) piece
    auto rep = purity_check(hb, impure);
    CHECK_FALSE(rep.pure);
    REQUIRE_FALSE(rep.violations.empty());
    CHECK(rep.violations[0].degree == 2);

    CHECK(purity_check(hb, TruncatedSeries(3, 4)).pure);
}

TEST_CASE("purity verdicts survive swapping omega with its conjugate") {
    GaussRat zero, one(Rat(1)), i_unit(Rat(0), Rat(1));
    HodgeVector omega{Bidegree::TwoZero, {one, i_unit, zero}};
    HodgeVector omega_bar{Bidegree::ZeroTwo, {one, GaussRat(Rat(0), Rat(-1)), zero}};
    HodgeVector h{Bidegree::OneOne, {zero, zero, one}};
    HodgeVector omega2{Bidegree::TwoZero, omega_bar.coords};
    HodgeVector omega2_bar{Bidegree::ZeroTwo, omega.coords};
    HodgeBasis hb(hodge_lattice(), {omega, omega_bar, h});
    HodgeBasis swapped(hodge_lattice(), {omega2, omega2_bar, h});

    std::mt19937 rng(777);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = random_11_structure(rng, 3);
        auto q = expand_structure(s, hodge_lattice(), 6);
        CHECK(purity_check(hb, q).pure == purity_check(swapped, q).pure);
    }
}

TEST_CASE("restricting the normalized series to H^{0,2} leaves only q0") {
    // for pure series, setting the (1,1) and (2,0) coordinates to zero kills
    // every positive degree of C
    auto hb = standard_basis();
    auto lat = hodge_lattice();
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = random_11_structure(rng, 3);
        auto c = normalize_C(expand_structure(s, lat, 6), lat);
        for (int d = 0; d <= c.max_degree(); ++d) {
            auto hodge_part = to_hodge_coordinates(hb, c.parts[d]);
            GaussRat only02;
            for (const auto& [e, coeff] : hodge_part)
                if (e[0] == 0 && e[2] == 0) only02 += coeff;  // keep pure omega-bar powers
            if (d == 0)
                CHECK(only02 == GaussRat(s.q0()));
            else
                CHECK(only02.is_zero());
        }
    }
}

TEST_CASE("classes_type11_check names offenders") {
    auto hb = standard_basis();
    auto lat = hodge_lattice();
    CHECK(classes_type11_check(hb, lat, KMStructure({{Rat(1), {0, 0, 1}}})).ok);
    CHECK(classes_type11_check(hb, lat, KMStructure()).ok);

    auto rep = classes_type11_check(hb, lat, KMStructure({{Rat(1), {1, 0, 0}}}));
    CHECK_FALSE(rep.ok);
    CHECK(rep.offenders == std::vector<LatticeClass>{{1, 0, 0}});
}

TEST_CASE("forms identity q(omega + conj) = q0 e^{Q(omega, conj)}") {
    auto hb = standard_basis();
    auto lat = hodge_lattice();

    KMStructure s({{Rat(1), {0, 0, 1}}, {Rat(1), {0, 0, -1}}});
    auto rep = forms_identity_check(hb, lat, s, 0, 8);
    REQUIRE(rep.hypotheses_met);
    CHECK(rep.ok);
    CHECK(rep.q0 == 2);
    CHECK(rep.exponent == 2);             // Q(omega, omega-bar) = 2
    CHECK(rep.x == RatVec{Rat(2), Rat(0), Rat(0)});

    KMStructure trivial({{Rat(1), {0, 0, 0}}});
    auto rep2 = forms_identity_check(hb, lat, trivial, 0, 6);
    CHECK(rep2.ok);
    CHECK(rep2.q0 == 1);

    KMStructure off({{Rat(1), {1, 0, 0}}});
    auto rep3 = forms_identity_check(hb, lat, off, 0, 4);
    CHECK_FALSE(rep3.hypotheses_met);
}
