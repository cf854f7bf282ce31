#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace mbfreal;
using fixtures::q;

namespace {

InteractionStructure S(const char* text, int n) { return InteractionStructure::parse(text, n); }

Witness pisigma_witness(const char* phi2) {
    return fixtures::witness(3, "(z1+z2)*z3", {4, q(phi2), 2}, {9, q("4.5")});
}

Witness sps_witness() { return fixtures::witness(3, "z1z2+z3", {3, q("3.1"), 4}, {9, q("4.5")}); }

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// Compares the ceiling of f with the floor of g in each direction, working on the
// table strings directly.
std::vector<int> oracle_directions(const fixtures::ProblemRow& row) {
    std::vector<int> out;
    for (int l = 1; l <= 3; ++l) {
        std::set<std::string> fc, gf;
        for (int c = 0; c < 8; ++c) {
            std::string corner = fixtures::kTableColumns[c];
            char bit = corner[l - 1];
            std::string rest = corner;
            rest.erase(l - 1, 1);
            if (bit == '1' && row.cells[c][0] == '1') fc.insert(rest);
            if (bit == '0' && row.cells[c][1] == '1') gf.insert(rest);
        }
        bool le = std::includes(gf.begin(), gf.end(), fc.begin(), fc.end());
        bool ge = std::includes(fc.begin(), fc.end(), gf.begin(), gf.end());
        if (!le && !ge) out.push_back(l);
    }
    return out;
}

std::size_t count_kind(const Certificate& c, Certificate::Kind k) {
    return std::count_if(c.children.begin(), c.children.end(), [&](const Certificate& x) { return x.kind == k; });
}

}  // namespace

TEST_CASE("verify_witness on the reference pairs") {
    auto t6 = fixtures::pisigma_pair();
    CHECK(verify_witness(t6, pisigma_witness("4")));
    CHECK(verify_witness(t6, pisigma_witness("4.1")));
    auto swapped = pisigma_witness("4");
    std::swap(swapped.thresholds[0], swapped.thresholds[1]);
    CHECK_FALSE(verify_witness(t6, swapped));
    CHECK(verify_witness(fixtures::sps_pair(), sps_witness()));

    // phi = 1 everywhere gives Lambda(000) = 2; a threshold there is degenerate.
    auto on = pisigma_witness("4");
    on.thresholds[1] = 2;
    CHECK_THROWS_AS(verify_witness(t6, on), InvalidWitness);
    auto nonpos = pisigma_witness("4");
    nonpos.thresholds = {9, q("-1/2")};
    CHECK_FALSE(verify_witness(t6, nonpos));
}

TEST_CASE("reference witnesses realize every non-Sigma pair") {
    const auto& rows = fixtures::problem_rows();
    const auto& wit = fixtures::realizing_rows();
    REQUIRE(rows.size() == 18);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CAPTURE(i + 1);
        CHECK(verify_witness(fixtures::problem_pair(rows[i]), fixtures::realizing_witness(wit[i])));
    }
}

TEST_CASE("listed pairs are exactly the Sigma failures for n = 3") {
    std::set<std::pair<std::string, std::string>> table, failures;
    for (const auto& row : fixtures::problem_rows()) {
        auto t = fixtures::problem_pair(row);
        table.insert({t[0].to_hex(), t[1].to_hex()});
        auto dirs = incomparable_directions(t[0], t[1]);
        CHECK(dirs == oracle_directions(row));
        CHECK_FALSE(dirs.empty());
    }
    CHECK(table.size() == 18);
    std::size_t realizable = 0;
    for (const auto& [f, g] : enumerate_ordered_pairs(3)) {
        OrderedTuple t{f, g};
        auto v = check_sigma(t);
        REQUIRE(v.kind != Verdict::Kind::Unknown);
        if (v.kind == Verdict::Kind::Realizable) {
            ++realizable;
            CHECK(verify_witness(t, *v.witness));
        } else {
            failures.insert({f.to_hex(), g.to_hex()});
            CHECK(verify_certificate(t, *v.certificate));
        }
    }
    CHECK(realizable == 150);
    CHECK(failures == table);
}

TEST_CASE("printed direction column") {
    const auto& rows = fixtures::problem_rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CAPTURE(i + 1);
        auto dirs = incomparable_directions(fixtures::problem_pair(rows[i])[0], fixtures::problem_pair(rows[i])[1]);
        bool listed = std::all_of(rows[i].directions.begin(), rows[i].directions.end(),
                                  [&](int d) { return contains(dirs, d); });
        // The last three rows carry labels shifted by one direction.
        CHECK(listed == (i < 15));
    }
    CHECK(incomparable_directions(fixtures::problem_pair(rows[15])[0], fixtures::problem_pair(rows[15])[1]) ==
          std::vector<int>{3});
}

TEST_CASE("realize_k") {
    auto t6 = fixtures::pisigma_pair();
    auto k = realize_k(t6);
    CHECK(k.thresholds == std::vector<Rational>{q("3/2"), q("1/2")});
    for (const auto& v : k.values) CHECK((v == 0 || v == 1 || v == 2));
    CHECK(verify_k_witness(t6, k));

    auto one = realize_k({MbfFunction::constant(2, true)});
    CHECK(one.thresholds == std::vector<Rational>{q("1/2")});
    for (const auto& v : one.values) CHECK(v == 1);

    // const-0 < f < const-1: f must be exactly the corners where R exceeds 3/2.
    for (const auto& f : enumerate_mbf_positive(3)) {
        OrderedTuple t{MbfFunction::constant(3, false), f, MbfFunction::constant(3, true)};
        auto w = realize_k(t);
        CHECK(w.thresholds == std::vector<Rational>{q("5/2"), q("3/2"), q("1/2")});
        for (std::uint32_t c = 0; c < 8; ++c) {
            CHECK(w.values[c] == 1 + (f(c) ? 1 : 0));
            CHECK((w.values[c] > q("3/2")) == f(c));
        }
        CHECK(verify_k_witness(t, w));
    }
    auto broken = k;
    broken.thresholds[0] = q("1/4");
    CHECK_FALSE(verify_k_witness(t6, broken));
}

TEST_CASE("check_sigma small arities") {
    for (int n = 1; n <= 2; ++n)
        for (const auto& [f, g] : enumerate_ordered_pairs(n)) {
            OrderedTuple t{f, g};
            auto v = check_sigma(t);
            REQUIRE(v.kind == Verdict::Kind::Realizable);
            CHECK(verify_witness(t, *v.witness));
        }
    CHECK(check_sigma(fixtures::pisigma_pair()).kind == Verdict::Kind::NotRealizable);
    CHECK(check_sigma(fixtures::sps_pair()).kind == Verdict::Kind::NotRealizable);
}

TEST_CASE("Sigma certificates replay and reject tampering") {
    auto t6 = fixtures::pisigma_pair();
    auto v = check_sigma(t6);
    REQUIRE(v.certificate);
    CHECK(verify_certificate(t6, *v.certificate));
    auto tampered = *v.certificate;
    REQUIRE_FALSE(tampered.children.empty());
    tampered.children[0].multipliers[0] += 1;
    CHECK_FALSE(verify_certificate(t6, tampered));
    auto missing = *v.certificate;
    missing.children.pop_back();
    CHECK_FALSE(verify_certificate(t6, missing));
    // The Sigma refutation of the PiSigma pair does not transfer to a realizable pair.
    auto easy = enumerate_ordered_pairs(3).front();
    CHECK_FALSE(verify_certificate({easy.first, easy.second}, *v.certificate));
}

TEST_CASE("necessary_condition") {
    auto t6 = fixtures::pisigma_pair();
    auto c = necessary_condition(t6, S("z1+z2+z3", 3));
    REQUIRE(c);
    CHECK(c->direction == 1);
    CHECK(verify_certificate(t6, *c));
    CHECK_FALSE(necessary_condition(t6, S("(z1+z2)*z3", 3)));

    auto t7 = fixtures::sps_pair();
    auto c7 = necessary_condition(t7, S("(z2+z3)*z1", 3));
    REQUIRE(c7);
    CHECK(c7->direction == 1);
    CHECK(verify_certificate(t7, *c7));

    // Collapses of the PiSigma pair.
    CHECK(restrict_and_collapse(t6[0], 1, Side::Ceiling) == fixtures::fn(2, {"01", "11"}));
    CHECK(restrict_and_collapse(t6[1], 1, Side::Floor) == fixtures::fn(2, {"10", "11"}));
    CHECK(contains(incomparable_directions(t6[0], t6[1]), 1));
}

TEST_CASE("monomial_certificate") {
    auto t7 = fixtures::sps_pair();
    auto c = monomial_certificate(t7, S("(z1+z2)*z3", 3));
    REQUIRE(c);
    CHECK(c->monomial);
    CHECK(verify_certificate(t7, *c));
    CHECK_FALSE(monomial_certificate(fixtures::pisigma_pair(), S("(z1+z2)*z3", 3)));
    CHECK_FALSE(monomial_certificate(t7, S("z1z2+z3", 3)));
}

TEST_CASE("search_witness") {
    auto t6 = fixtures::pisigma_pair();
    auto w = search_witness(t6, S("(z1+z2)*z3", 3));
    REQUIRE(w);
    CHECK(verify_witness(t6, *w));

    auto row10 = fixtures::problem_pair(fixtures::problem_rows()[9]);
    auto s10 = S("z2(z1+z3)", 3);
    auto w10 = search_witness(row10, s10);
    REQUIRE(w10);
    CHECK(verify_witness(row10, *w10));
    CHECK(verify_witness(row10, fixtures::witness(3, "z2(z1+z3)", {4, 2, 4}, {9, q("4.5")})));

    OrderedTuple consts{MbfFunction::constant(1, false), MbfFunction::constant(1, true)};
    auto wc = search_witness(consts, S("z1", 1));
    REQUIRE(wc);
    CHECK(verify_witness(consts, *wc));

    CHECK_FALSE(search_witness(fixtures::sps_pair(), S("(z1+z2)*z3", 3)));
}

TEST_CASE("check_class separates the three algebraic classes") {
    auto t6 = fixtures::pisigma_pair();
    auto v6 = check_class(t6, RealizationClass::PiSigma);
    REQUIRE(v6.kind == Verdict::Kind::Realizable);
    CHECK(verify_witness(t6, *v6.witness));
    CHECK(v6.witness->structure.in_class(StructureClass::PiSigma));

    auto t7 = fixtures::sps_pair();
    auto v7 = check_class(t7, RealizationClass::PiSigma);
    REQUIRE(v7.kind == Verdict::Kind::NotRealizable);
    REQUIRE(v7.certificate);
    CHECK(v7.certificate->kind == Certificate::Kind::Exhaustion);
    CHECK(v7.certificate->children.size() == 5);
    CHECK(count_kind(*v7.certificate, Certificate::Kind::Direction) == 4);
    CHECK(count_kind(*v7.certificate, Certificate::Kind::Farkas) == 1);
    for (const auto& child : v7.certificate->children)
        if (child.kind == Certificate::Kind::Farkas) CHECK(child.structure->str() == "(z1+z2)*z3");
    CHECK(verify_certificate(t7, *v7.certificate));

    auto s7 = check_class(t7, RealizationClass::SigmaPiSigma);
    REQUIRE(s7.kind == Verdict::Kind::Realizable);
    CHECK(verify_witness(t7, *s7.witness));
    CHECK(s7.witness->structure.str() == "z1*z2+z3");

    CHECK_THROWS_AS(check_class({MbfFunction::constant(5, false)}, RealizationClass::PiSigma), ArityMismatch);
}

TEST_CASE("check_class on the four-input pair needs the collapse argument") {
    auto t8 = fixtures::k_only_pair();
    auto v = check_class(t8, RealizationClass::SigmaPiSigma);
    REQUIRE(v.kind == Verdict::Kind::NotRealizable);
    CHECK(count_kind(*v.certificate, Certificate::Kind::Collapse) > 0);
    CHECK(verify_certificate(t8, *v.certificate));
    CHECK(verify_k_witness(t8, realize_k(t8)));

    CheckOptions no_collapse;
    no_collapse.collapse_from_arity = 99;
    CHECK(check_class(t8, RealizationClass::SigmaPiSigma, no_collapse).kind == Verdict::Kind::Unknown);
}

TEST_CASE("class K is always realizable") {
    auto v = check_class(fixtures::k_only_pair(), RealizationClass::K);
    REQUIRE(v.kind == Verdict::Kind::Realizable);
    CHECK(verify_k_witness(fixtures::k_only_pair(), *v.k_witness));
}

TEST_CASE("lift_eta") {
    auto t6 = fixtures::pisigma_pair();
    auto lifted = lift_eta(t6[0], t6[1], pisigma_witness("4"), StructureClass::PiSigma);
    auto h = eta(t6[0], t6[1]);
    CHECK(verify_witness({h}, lifted));
    CHECK(has_factor(lifted.structure, 4));
    CHECK(lifted.phi.high[3] / lifted.phi.low[3] == 2);

    auto lowered = lower_eta(h, lifted);
    CHECK(lowered.first == t6);
    CHECK(verify_witness(lowered.first, lowered.second));

    for (const auto& [f, g] : enumerate_ordered_pairs(2)) {
        auto v = check_sigma({f, g});
        REQUIRE(v.witness);
        auto w = lift_eta(f, g, *v.witness, StructureClass::Sigma);
        auto hh = eta(f, g);
        CHECK(verify_witness({hh}, w));
        auto back = lower_eta(hh, w);
        CHECK(back.first == OrderedTuple{f, g});
        CHECK(verify_witness(back.first, back.second));
    }

    // Projection onto the new coordinate from the constant pair.
    OrderedTuple consts{MbfFunction::constant(1, false), MbfFunction::constant(1, true)};
    auto wc = check_sigma(consts);
    auto proj = eta(consts[0], consts[1]);
    CHECK(verify_witness({proj}, lift_eta(consts[0], consts[1], *wc.witness, StructureClass::Sigma)));
}

TEST_CASE("lower_eta on the projection") {
    auto h = eta(MbfFunction::constant(2, false), MbfFunction::constant(2, true));
    auto v = search_witness({h}, S("z1+z2+z3", 3));
    REQUIRE(v);
    auto [pair, w] = lower_eta(h, *v);
    CHECK(pair == OrderedTuple{MbfFunction::constant(2, false), MbfFunction::constant(2, true)});
    CHECK(verify_witness(pair, w));
    CHECK_THROWS(lower_eta(eta(fixtures::pisigma_pair()[0], fixtures::pisigma_pair()[1]),
                           fixtures::witness(4, "(z1+z2)*(z3+z4)", {3, 3, 3, 3}, {20})));
}

TEST_CASE("collapse_witness") {
    auto t7 = fixtures::sps_pair();
    auto [p7, w7] = collapse_witness(t7, sps_witness(), 3, Side::Floor);
    CHECK(w7.structure.str() == "z1*z2");
    CHECK(p7[0] == restrict_and_collapse(t7[0], 3, Side::Floor));
    CHECK(verify_witness(p7, w7));

    auto t6 = fixtures::pisigma_pair();
    auto [p6, w6] = collapse_witness(t6, pisigma_witness("4"), 3, Side::Ceiling);
    CHECK(w6.structure.str() == "z1+z2");
    CHECK(w6.phi.high == std::vector<Rational>{8, 8});
    CHECK(verify_witness(p6, w6));

    OrderedTuple single{fixtures::fn(2, {"10", "11"})};
    auto w = fixtures::witness(2, "z1", {3, 3}, {2});
    REQUIRE(verify_witness(single, w));
    auto [ps, ws] = collapse_witness(single, w, 2, Side::Floor);
    CHECK(ws.structure.str() == "z1");
    CHECK(verify_witness(ps, ws));
    CHECK_THROWS(collapse_witness({MbfFunction::constant(1, true)}, fixtures::witness(1, "z1", {2}, {q("1/2")}), 1,
                                  Side::Floor));
}

TEST_CASE("threshold conversion") {
    auto and2 = fixtures::fn(2, {"11"});
    SeparatingStructure sep{{1, 1}, q("1.5")};
    CHECK(separates(and2, sep));
    auto w = sigma_threshold_inverse(and2, sep);
    CHECK(w.phi.low == std::vector<Rational>{1, 1});
    CHECK(w.phi.high == std::vector<Rational>{2, 2});
    CHECK(w.thresholds == std::vector<Rational>{q("3.5")});
    CHECK(verify_witness({and2}, w));

    for (int n = 1; n <= 3; ++n) {
        auto one = MbfFunction::constant(n, true);
        SeparatingStructure s1{std::vector<Rational>(n, 0), Rational(-n) + q("1/2")};
        CHECK(separates(one, s1));
        auto w1 = sigma_threshold_inverse(one, s1);
        CHECK(w1.thresholds[0] == q("1/2"));
        CHECK(verify_witness({one}, w1));
    }
    CHECK_THROWS(sigma_threshold_inverse(and2, {{1, -1}, 1}));
    CHECK_THROWS(sigma_threshold_inverse(and2, {{1, 1}, -2}));

    for (const auto& f : enumerate_mbf_positive(3)) {
        auto v = check_sigma({f});
        REQUIRE(v.witness);
        auto fwd = sigma_threshold_convert(*v.witness);
        CHECK(separates(f, fwd));
        auto inv = sigma_threshold_inverse(f, fwd);
        CHECK(verify_witness({f}, inv));
    }
}
