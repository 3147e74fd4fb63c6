#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "rtlens/lattice.hpp"

using namespace rtlens;

TEST_CASE("order admissibility") {
    RootDatum g2 = build_root_datum(LieType::G2);
    RootDatum f4 = build_root_datum(LieType::F4);
    RootDatum e8 = build_root_datum(LieType::E8);

    CHECK_NOTHROW(validate_order(g2, 5));
    CHECK_NOTHROW(validate_order(g2, 7));
    CHECK_NOTHROW(validate_order(g2, 25));
    CHECK_THROWS_AS(validate_order(g2, 9), InvalidOrderError);  // divisible by 3
    CHECK_THROWS_AS(validate_order(g2, 8), InvalidOrderError);  // even
    CHECK_THROWS_AS(validate_order(g2, 3), InvalidOrderError);  // <= h_vee
    CHECK_THROWS_AS(validate_order(f4, 9), InvalidOrderError);  // = h_vee
    CHECK_NOTHROW(validate_order(f4, 11));
    CHECK_NOTHROW(validate_order(f4, 13));
    CHECK_THROWS_AS(validate_order(e8, 29), InvalidOrderError); // <= h_vee = 30
    CHECK_NOTHROW(validate_order(e8, 31));

    try {
        validate_order(g2, 9);
    } catch (const InvalidOrderError& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("X_N enumeration") {
    RootDatum g2 = build_root_datum(LieType::G2);
    XnRange range(g2, 5);
    CHECK(range.size() == 25);
    std::set<IntVec> seen;
    long long count = 0;
    IntVec prev;
    for (const auto& w : range) {
        CHECK(w.order == 5);
        seen.insert(w.coords);
        if (count > 0) CHECK(prev < w.coords); // lexicographic, last coordinate fastest
        prev = w.coords;
        ++count;
    }
    CHECK(count == 25);
    CHECK(seen.size() == 25);

    RootDatum f4 = build_root_datum(LieType::F4);
    CHECK(XnRange(f4, 11).size() == 14641);

    RootDatum e8 = build_root_datum(LieType::E8);
    CHECK_THROWS_AS(XnRange(e8, 31), CapacityError);
    try {
        xn_size_checked(e8, 31);
    } catch (const CapacityError& e) {
        CHECK(std::string(e.what()).find("31^8") != std::string::npos);
    }
}

TEST_CASE("index codecs round-trip") {
    RootDatum g2 = build_root_datum(LieType::G2);
    for (long long i = 0; i < 25; ++i) CHECK(xn_index(g2, 5, xn_coords(g2, 5, i)) == i);
    CHECK(xn_coords(g2, 5, 0) == IntVec{0, 0});
    CHECK(xn_coords(g2, 5, 1) == IntVec{0, 1});
    CHECK(xn_coords(g2, 5, 5) == IntVec{1, 0});
}

TEST_CASE("quadratic forms on classes") {
    RootDatum g2 = build_root_datum(LieType::G2);
    WeightClass zero{&g2, 5, {0, 0}};
    CHECK(quad_forms(zero) == std::pair<long long, long long>{0, 0});

    WeightClass a1{&g2, 5, {1, 0}};
    CHECK(quad_forms(a1).first == 2); // (a1, a1) = 2 mod 5

    // lift independence: shifting a lift by N times anything preserves both values
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<long long> dist(0, 4), shift(-2, 2);
    for (int t = 0; t < 20; ++t) {
        IntVec c{dist(rng), dist(rng)};
        IntVec lifted{c[0] + 5 * shift(rng), c[1] + 5 * shift(rng)};
        CHECK(quad_forms(WeightClass{&g2, 5, c}) == quad_forms(WeightClass{&g2, 5, lifted}));
    }
}

TEST_CASE("shifted Weyl action preserves the twist exponent exactly") {
    RootDatum g2 = build_root_datum(LieType::G2);
    auto group = weyl_group(g2);
    auto quad = [&](const IntVec& v) {
        IntVec v2r{v[0] + 2 * g2.rho[0], v[1] + 2 * g2.rho[1]};
        return pairing(g2, v2r, v);
    };
    // exhaustive over X_5 and the whole group: (w(l+r)-r+2r, w(l+r)-r) = (l+2r, l)
    for (const auto& w : group) {
        for (const auto& cls : XnRange(g2, 5)) {
            IntVec x{cls.coords[0] + g2.rho[0], cls.coords[1] + g2.rho[1]};
            IntVec wx = w.apply(x);
            IntVec lam2{wx[0] - g2.rho[0], wx[1] - g2.rho[1]};
            CHECK(quad(cls.coords) == quad(lam2));
        }
    }
}

namespace {

// independent oracle: scan all lifts in [-N, N]^r for alcove membership
std::set<IntVec> alcove_brute(const RootDatum& d, long N) {
    std::set<IntVec> out;
    IntVec x(d.rank, -N);
    while (true) {
        if (in_alcove(d, N, x)) out.insert(x);
        int pos = d.rank - 1;
        while (pos >= 0) {
            if (++x[pos] <= N) break;
            x[pos] = -N;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

} // namespace

TEST_CASE("alcove enumeration against the brute-force oracle") {
    RootDatum g2 = build_root_datum(LieType::G2);

    // N = 5: the inequality scan leaves nothing (max of 2(rho,a)/(a,a) is 5)
    AlcoveSet a5 = alcove(g2, 5);
    CHECK(a5.members.empty());
    CHECK(alcove_brute(g2, 5).empty());

    // N = 7: exactly the zero weight
    AlcoveSet a7 = alcove(g2, 7);
    CHECK(a7.members == std::vector<IntVec>{{0, 0}});
    CHECK(alcove_brute(g2, 7) == std::set<IntVec>{{0, 0}});

    for (long N : {11L, 13L}) {
        AlcoveSet a = alcove(g2, N);
        auto brute = alcove_brute(g2, N);
        CHECK(a.members.size() == brute.size());
        for (const auto& m : a.members) CHECK(brute.count(m) == 1);
    }
    CHECK(alcove(g2, 11).members.size() == 5);
    CHECK(alcove(g2, 13).members.size() == 8);
}

TEST_CASE("alcove boundary is excluded") {
    RootDatum g2 = build_root_datum(LieType::G2);
    // lift hitting 2(l+rho, theta_s)/(theta_s,theta_s) = N for the highest
    // short root at N = 7: n = (2,1) gives the boundary value 7
    IntVec boundary{2, 1};
    CHECK(!in_alcove(g2, 7, boundary));
}

TEST_CASE("F4 alcove at N = 13 is the zero weight alone") {
    RootDatum f4 = build_root_datum(LieType::F4);
    AlcoveSet a = alcove(f4, 13);
    CHECK(a.members == std::vector<IntVec>{{0, 0, 0, 0}});
    CHECK(alcove(f4, 11).members.empty());
}
