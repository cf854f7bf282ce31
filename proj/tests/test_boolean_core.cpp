#include "fixtures.hpp"

#include <doctest.h>

#include <set>

using namespace mbfreal;
using fixtures::fn;

namespace {

// Independent oracle: every table whose true set is closed under going up one coordinate.
std::vector<std::uint64_t> brute_force_monotone(int n) {
    std::uint32_t corners = 1u << n;
    std::vector<std::uint64_t> out;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << corners); ++t) {
        bool ok = true;
        for (std::uint32_t a = 0; a < corners && ok; ++a)
            for (std::uint32_t b = 0; b < corners && ok; ++b)
                if ((a & b) == a && ((t >> a) & 1) && !((t >> b) & 1)) ok = false;
        if (ok) out.push_back(t);
    }
    return out;
}

TruthTable table_of(std::uint64_t bits) {
    TruthTable t;
    for (int i = 0; i < 64; ++i)
        if ((bits >> i) & 1) t.set(i);
    return t;
}

}  // namespace

TEST_CASE("corner strings read y1 from the left") {
    Corner c = Corner::parse("100");
    CHECK(c.index == 1);
    CHECK(c.bit(1));
    CHECK_FALSE(c.bit(3));
    CHECK(Corner::parse("011").index == 6);
    CHECK(Corner{3, 6}.str() == "011");
    CHECK_THROWS_AS(Corner::parse("012"), InputError);
    CHECK_THROWS_AS(Corner::parse(""), InputError);
}

TEST_CASE("insert and remove bit are inverse") {
    for (int var = 1; var <= 4; ++var)
        for (std::uint32_t c = 0; c < 8; ++c)
            for (bool v : {false, true}) {
                auto big = insert_bit(c, var, v);
                CHECK(((big >> (var - 1)) & 1u) == static_cast<std::uint32_t>(v));
                CHECK(remove_bit(big, var) == c);
            }
}

TEST_CASE("evaluate") {
    CHECK_FALSE(MbfFunction::constant(3, false)(7));
    auto [f, g] = std::pair{fixtures::pisigma_pair()[0], fixtures::pisigma_pair()[1]};
    CHECK(f(Corner::parse("101").index));
    CHECK(g(Corner::parse("010").index));
    CHECK_FALSE(f(Corner::parse("010").index));
}

TEST_CASE("is_monotone_positive") {
    TruthTable x;
    x.set(1);
    x.set(2);
    CHECK_FALSE(is_monotone_positive(2, x));
    TruthTable a;
    a.set(3);
    CHECK(is_monotone_positive(2, a));
    CHECK(is_monotone_positive(3, fixtures::pisigma_pair()[0].table()));
    CHECK_THROWS_AS(MbfFunction(2, x), NotMonotone);
}

TEST_CASE("hex roundtrip and validation") {
    auto f = fixtures::pisigma_pair()[0];
    CHECK(f.to_hex() == "mbf:3:e0");
    CHECK(MbfFunction::from_hex("mbf:3:e0") == f);
    CHECK(MbfFunction::from_hex("mbf:1:2").true_corners() == std::vector<std::uint32_t>{1});
    CHECK(MbfFunction::from_hex("mbf:4:fffe") == MbfFunction::from_hex("mbf:4:FFFE"));
    CHECK_THROWS_AS(MbfFunction::from_hex("mbf:2:6"), InputError);
    CHECK_THROWS_AS(MbfFunction::from_hex("mbf:3:e"), InputError);
    CHECK_THROWS_AS(MbfFunction::from_hex("3:e0"), InputError);
    CHECK_THROWS_AS(MbfFunction::from_hex("mbf:1:4"), InputError);
    for (int n = 0; n <= 4; ++n)
        for (const auto& g : enumerate_mbf_positive(n)) CHECK(MbfFunction::from_hex(g.to_hex()) == g);
}

TEST_CASE("enumeration matches brute force") {
    const std::size_t expected[] = {2, 3, 6, 20, 168};
    for (int n = 0; n <= 4; ++n) {
        auto oracle = brute_force_monotone(n);
        auto got = enumerate_mbf_positive(n);
        REQUIRE(got.size() == oracle.size());
        CHECK(got.size() == expected[n]);
        std::set<std::uint64_t> want(oracle.begin(), oracle.end());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(want.count(got[i].table().word(0)) == 1);
            if (i) CHECK(got[i - 1] < got[i]);
        }
    }
    CHECK(enumerate_mbf_positive(5).size() == 7581);
    CHECK_THROWS_AS(enumerate_mbf_positive(6), ArityMismatch);
}

TEST_CASE("ordered pairs and tuples") {
    CHECK(enumerate_ordered_pairs(1).size() == 6);
    CHECK(enumerate_ordered_pairs(2).size() == 20);
    CHECK(enumerate_ordered_pairs(3).size() == 168);
    CHECK(enumerate_ordered_tuples(1, 1).size() == 3);
    CHECK(enumerate_ordered_tuples(1, 2).size() == 6);
    CHECK(enumerate_ordered_tuples(2, 2).size() == 20);
    // Chains of length 3 in a 3-element chain: multisets of size 3 from 3 items.
    CHECK(enumerate_ordered_tuples(1, 3).size() == 10);
    for (const auto& t : enumerate_ordered_tuples(2, 3)) CHECK_NOTHROW(validate_tuple(t));
}

TEST_CASE("implies") {
    auto t = fixtures::pisigma_pair();
    CHECK(implies(MbfFunction::constant(3, false), t[0]));
    CHECK(implies(t[0], t[1]));
    CHECK_FALSE(implies(t[1], t[0]));
    CHECK(implies(t[0], t[0]));
    CHECK_FALSE(strictly_precedes(t[0], t[0]));
    CHECK_THROWS_AS(implies(t[0], MbfFunction::constant(2, true)), ArityMismatch);
    CHECK_THROWS_AS(validate_tuple({t[1], t[0]}), std::invalid_argument);
    CHECK_NOTHROW(validate_tuple({t[0], t[0]}));
}

TEST_CASE("beta_normalize") {
    BooleanFunction neg{1, {}};
    neg.table.set(0);
    auto id = beta_normalize(neg, {Sign::Minus});
    CHECK(id == fn(1, {"1"}));
    auto f = fixtures::pisigma_pair()[0];
    BooleanFunction raw{3, f.table()};
    CHECK(beta_normalize(raw, {Sign::Plus, Sign::Plus, Sign::Plus}) == f);

    // g11 of the example network: positive in y1, negative in y2. The truth set
    // {10,11} does not depend on y2, so flipping y2 leaves it as is.
    BooleanFunction g11{2, fn(2, {"10", "11"}).table()};
    auto pos = beta_normalize(g11, {Sign::Plus, Sign::Minus});
    CHECK(pos == fn(2, {"10", "11"}));

    // A function that really depends on the repressor: y1 AND NOT y2 -> y1 AND y2'.
    BooleanFunction and_not{2, {}};
    and_not.table.set(Corner::parse("10").index);
    auto p = beta_normalize(and_not, {Sign::Plus, Sign::Minus});
    CHECK(p == fn(2, {"11"}));
    auto back = beta_denormalize(p, {Sign::Plus, Sign::Minus});
    CHECK(back.table == and_not.table);
    CHECK_THROWS_AS(beta_normalize(and_not, {Sign::Plus, Sign::Plus}), NotMonotone);
}

TEST_CASE("restrict_and_collapse") {
    auto t6 = fixtures::pisigma_pair();
    CHECK(restrict_and_collapse(t6[0], 1, Side::Ceiling) == fn(2, {"01", "11"}));
    CHECK(restrict_and_collapse(t6[1], 1, Side::Floor) == fn(2, {"10", "11"}));
    auto t8 = fixtures::k_only_pair();
    auto t7 = fixtures::sps_pair();
    CHECK(restrict_and_collapse(t8[0], 4, Side::Floor) == t7[0]);
    CHECK(restrict_and_collapse(t8[1], 4, Side::Floor) == t7[1]);
}

TEST_CASE("collapse containment holds for every ordered pair") {
    // Floor of f implies ceiling of f, and collapses keep the order between f and g.
    for (int n = 2; n <= 3; ++n)
        for (const auto& [f, g] : enumerate_ordered_pairs(n))
            for (int l = 1; l <= n; ++l) {
                auto ff = restrict_and_collapse(f, l, Side::Floor);
                auto fc = restrict_and_collapse(f, l, Side::Ceiling);
                auto gf = restrict_and_collapse(g, l, Side::Floor);
                auto gc = restrict_and_collapse(g, l, Side::Ceiling);
                CHECK(implies(ff, fc));
                CHECK(implies(ff, gf));
                CHECK(implies(fc, gc));
            }
}

TEST_CASE("eta") {
    for (int n = 1; n <= 3; ++n) {
        auto h = eta(MbfFunction::constant(n, false), MbfFunction::constant(n, true));
        for (std::uint32_t c = 0; c < h.corner_count(); ++c) CHECK(h(c) == static_cast<bool>((c >> n) & 1u));
        auto [a, b] = eta_inverse(h);
        CHECK(a == MbfFunction::constant(n, false));
        CHECK(b == MbfFunction::constant(n, true));
        auto [c1, c2] = eta_inverse(MbfFunction::constant(n + 1, true));
        CHECK(c1 == MbfFunction::constant(n, true));
        CHECK(c2 == MbfFunction::constant(n, true));
    }
    auto t7 = fixtures::sps_pair();
    auto h = eta(t7[0], t7[1]);
    TruthTable direct;
    for (auto c : t7[0].true_corners()) direct.set(c);
    for (auto c : t7[1].true_corners()) direct.set(8 + c);
    CHECK(is_monotone_positive(4, direct));
    CHECK(h.table() == direct);
    CHECK_THROWS_AS(eta(t7[1], t7[0]), std::invalid_argument);

    std::set<MbfFunction> images;
    for (const auto& [f, g] : enumerate_ordered_pairs(3)) {
        auto img = eta(f, g);
        images.insert(img);
        auto [a, b] = eta_inverse(img);
        CHECK(a == f);
        CHECK(b == g);
    }
    CHECK(images.size() == 168);
}
