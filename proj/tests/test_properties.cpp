#include "fixtures.hpp"
#include "generators.hpp"

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

using namespace mbfreal;
using namespace generators;

namespace {
constexpr int kCases = 1000;
}

TEST_CASE("realize_k verifies on random chains") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < kCases; ++trial) {
        int n = 1 + trial % 4;
        int k = 1 + (trial / 4) % 4;
        auto chain = random_chain(rng, n, k);
        auto w = realize_k(chain);
        CHECK(verify_k_witness(chain, w));
    }
}

TEST_CASE("lift_eta outputs verify") {
    std::mt19937 rng(202);
    int lifted = 0;
    for (int trial = 0; trial < kCases; ++trial) {
        int n = 1 + trial % 3;
        auto cls = random_class(rng);
        auto d = random_realized(rng, n, cls, 2);
        if (d.tuple.size() != 2) continue;
        auto w = lift_eta(d.tuple[0], d.tuple[1], d.witness, cls);
        CHECK(verify_witness({eta(d.tuple[0], d.tuple[1])}, w));
        CHECK(w.structure.in_class(cls));
        ++lifted;
    }
    CHECK(lifted == kCases);
}

TEST_CASE("lower_eta outputs verify") {
    std::mt19937 rng(303);
    int lowered = 0;
    for (int trial = 0; lowered < kCases; ++trial) {
        REQUIRE(trial < 20 * kCases);
        int n = 2 + trial % 3;
        auto cls = random_class(rng);
        auto d = random_realized(rng, n, cls, 1);
        const auto& s = d.witness.structure;
        if (std::popcount(s.support()) < 2) continue;
        for (int var = 1; var <= n; ++var) {
            if (!has_factor(s, var) && !has_simple_term(s, var)) continue;
            auto [pair, w] = lower_eta(d.tuple[0], d.witness, var);
            CHECK(implies(pair[0], pair[1]));
            CHECK(verify_witness(pair, w));
            CHECK(w.structure.in_class(cls));
            ++lowered;
        }
    }
}

TEST_CASE("collapse_witness outputs verify") {
    std::mt19937 rng(404);
    int collapsed = 0;
    for (int trial = 0; collapsed < kCases; ++trial) {
        REQUIRE(trial < 20 * kCases);
        int n = 2 + trial % 3;
        auto cls = random_class(rng);
        auto d = random_realized(rng, n, cls, 2);
        int var = std::uniform_int_distribution<int>(1, n)(rng);
        if (d.witness.structure.support() == (1u << (var - 1))) continue;
        Side side = trial % 2 ? Side::Floor : Side::Ceiling;
        auto [sub, w] = collapse_witness(d.tuple, d.witness, var, side);
        CHECK(sub.size() == d.tuple.size());
        CHECK(verify_witness(sub, w));
        ++collapsed;
    }
}

TEST_CASE("eta roundtrips exactly") {
    for (int n = 1; n <= 4; ++n) {
        auto pairs = enumerate_ordered_pairs(n);
        std::set<MbfFunction> image;
        for (const auto& [f, g] : pairs) {
            auto h = eta(f, g);
            CHECK(eta_inverse(h) == std::pair{f, g});
            image.insert(h);
        }
        auto all = enumerate_mbf_positive(n + 1);
        CHECK(image.size() == all.size());
        for (const auto& h : all) {
            auto [f, g] = eta_inverse(h);
            CHECK(eta(f, g) == h);
        }
    }
}

TEST_CASE("floor and ceiling containments") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& [f, g] : enumerate_ordered_pairs(n))
            for (int i = 1; i <= n; ++i) {
                auto ff = collapse_set(f, i, Side::Floor), fc = collapse_set(f, i, Side::Ceiling);
                auto gf = collapse_set(g, i, Side::Floor), gc = collapse_set(g, i, Side::Ceiling);
                CHECK(subset(ff, fc));
                CHECK(subset(gf, gc));
                CHECK(subset(ff, gf));
                CHECK(subset(fc, gc));
                CHECK(subset(ff, gc));
                if (n > 1) {
                    CHECK(restrict_and_collapse(f, i, Side::Floor).true_count() == static_cast<int>(ff.size()));
                    CHECK(restrict_and_collapse(g, i, Side::Ceiling).true_count() == static_cast<int>(gc.size()));
                }
            }
}

TEST_CASE("Sigma verdict is preserved by eta") {
    for (int n = 2; n <= 3; ++n)
        for (const auto& [f, g] : enumerate_ordered_pairs(n)) {
            auto pair = check_sigma({f, g}).kind;
            auto single = check_sigma({eta(f, g)}).kind;
            CHECK(pair != Verdict::Kind::Unknown);
            CHECK(pair == single);
        }
}

TEST_CASE("factor or term directions are comparable under any witness") {
    std::mt19937 rng(505);
    for (int trial = 0; trial < kCases; ++trial) {
        int n = 2 + trial % 3;
        auto d = random_realized(rng, n, random_class(rng), 2);
        if (d.tuple.size() != 2) continue;
        auto bad = incomparable_directions(d.tuple[0], d.tuple[1]);
        for (int l = 1; l <= n; ++l)
            if (has_factor(d.witness.structure, l) || has_simple_term(d.witness.structure, l))
                CHECK(std::find(bad.begin(), bad.end(), l) == bad.end());
    }
    // Same check on the witnesses found by the grid search for n = 3.
    for (const auto& [f, g] : enumerate_ordered_pairs(3)) {
        auto v = check_class({f, g}, RealizationClass::SigmaPiSigma);
        REQUIRE(v.kind == Verdict::Kind::Realizable);
        auto bad = incomparable_directions(f, g);
        for (int l = 1; l <= 3; ++l)
            if (has_factor(v.witness->structure, l) || has_simple_term(v.witness->structure, l))
                CHECK(std::find(bad.begin(), bad.end(), l) == bad.end());
    }
}

TEST_CASE("census verdicts replay and respect class nesting") {
    const RealizationClass order[] = {RealizationClass::Sigma, RealizationClass::PiSigma,
                                      RealizationClass::SigmaPiSigma, RealizationClass::K};
    std::map<RealizationClass, int> yes;
    for (const auto& [f, g] : enumerate_ordered_pairs(3)) {
        OrderedTuple t{f, g};
        std::vector<Verdict::Kind> kinds;
        for (auto cls : order) {
            auto v = check_class(t, cls);
            kinds.push_back(v.kind);
            if (v.kind == Verdict::Kind::Realizable) {
                ++yes[cls];
                if (v.witness) CHECK(verify_witness(t, *v.witness));
                if (v.k_witness) CHECK(verify_k_witness(t, *v.k_witness));
                CHECK((v.witness || v.k_witness));
            } else if (v.kind == Verdict::Kind::NotRealizable) {
                REQUIRE(v.certificate);
                CHECK(verify_certificate(t, *v.certificate));
            }
        }
        for (std::size_t a = 0; a < kinds.size(); ++a)
            for (std::size_t b = a + 1; b < kinds.size(); ++b)
                CHECK_FALSE((kinds[a] == Verdict::Kind::Realizable && kinds[b] == Verdict::Kind::NotRealizable));
    }
    CHECK(yes[RealizationClass::Sigma] == 150);
    CHECK(yes[RealizationClass::SigmaPiSigma] == 168);
    CHECK(yes[RealizationClass::K] == 168);
}
