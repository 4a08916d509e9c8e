#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "edpc/belief.hpp"
#include "edpc/serialize.hpp"
#include "oracles.hpp"

using edpc::DecisionMode;
using edpc::FocalElement;
using edpc::MassFunction;
using edpc::ReliabilityRule;

namespace {

FocalElement w(int community) { return FocalElement::singleton(community); }
FocalElement outlier() { return FocalElement::outlier(); }

MassFunction simple2(int community, double alpha) {
    return MassFunction::simple(w(community), alpha, 2);
}

void check_unit_sum(const MassFunction& m) {
    double total = 0.0;
    for (const auto& [focal, mass] : m.entries()) {
        CHECK(mass > 0.0);
        total += mass;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

// Worked-example inputs: the two expansion BBAs feeding the bridge
// node, rounded to four decimals as published.
const MassFunction table1_a = MassFunction({{w(0), 0.6065}, {outlier(), 0.3935}}, 2);
const MassFunction table1_b = MassFunction({{w(1), 0.6065}, {outlier(), 0.3935}}, 2);

} // namespace

TEST_CASE("focal element basics") {
    CHECK(outlier().is_outlier());
    CHECK_FALSE(outlier().is_singleton());
    CHECK(w(0).is_singleton());
    CHECK(w(3).community() == 3);
    CHECK(FocalElement::omega(2).mask() == 0b11);
    CHECK(FocalElement::omega(2) != FocalElement{outlier()});
    CHECK(FocalElement::subset(0b101).communities() == std::vector<int>{0, 2});
    CHECK_THROWS_AS(FocalElement::subset(0), edpc::validation_error);
    CHECK_THROWS_AS(FocalElement::singleton(-1), edpc::validation_error);
    CHECK_THROWS_AS(FocalElement::singleton(30), edpc::validation_error);
    CHECK(FocalElement::decision_less(w(0), w(1)));
    CHECK(FocalElement::decision_less(FocalElement::omega(2), outlier()));
    CHECK_FALSE(FocalElement::decision_less(outlier(), w(0)));
}

TEST_CASE("make_mass validates") {
    MassFunction bayesian = MassFunction::categorical(0, 2);
    CHECK(bayesian.mass(w(0)) == 1.0);
    CHECK(bayesian.entries().size() == 1);

    MassFunction vac = MassFunction::vacuous(2);
    CHECK(vac.is_vacuous());
    CHECK(vac.mass(outlier()) == 1.0);

    CHECK_THROWS_AS(MassFunction({{w(0), 0.5}}, 2), edpc::validation_error);
    CHECK_THROWS_AS(MassFunction({{w(0), -0.2}, {outlier(), 1.2}}, 2), edpc::validation_error);
    CHECK_THROWS_AS(MassFunction({{FocalElement::subset(0b100), 1.0}}, 2),
                    edpc::validation_error);
    CHECK_THROWS_AS(MassFunction({{w(0), 1.0}}, 0), edpc::validation_error);
    CHECK_THROWS_AS(MassFunction({{w(0), 1.0}}, 31), edpc::validation_error);

    // duplicates accumulate; zeros are dropped
    MassFunction merged({{w(0), 0.5}, {w(0), 0.5}, {w(1), 0.0}}, 2);
    CHECK(merged.entries().size() == 1);
    CHECK(merged.mass(w(0)) == 1.0);
}

TEST_CASE("dempster: O* is a two-sided neutral element") {
    MassFunction m({{w(0), 0.3}, {FocalElement::omega(2), 0.45}, {outlier(), 0.25}}, 2);
    MassFunction vac = MassFunction::vacuous(2);
    for (const MassFunction& combined : {edpc::dempster_combine(m, vac),
                                         edpc::dempster_combine(vac, m)}) {
        CHECK(combined.mass(w(0)) == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(combined.mass(FocalElement::omega(2)) == doctest::Approx(0.45).epsilon(1e-12));
        CHECK(combined.mass(outlier()) == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("dempster: reinforcing simple BBAs") {
    MassFunction m = simple2(0, 0.6);
    MassFunction combined = edpc::dempster_combine(m, m);
    CHECK(combined.mass(w(0)) == doctest::Approx(0.84).epsilon(1e-12));
    CHECK(combined.mass(outlier()) == doctest::Approx(0.16).epsilon(1e-12));
    check_unit_sum(combined);
}

TEST_CASE("dempster: conflict renormalization") {
    MassFunction m1({{w(0), 0.5}, {FocalElement::omega(2), 0.5}}, 2);
    MassFunction m2({{w(1), 0.5}, {FocalElement::omega(2), 0.5}}, 2);
    MassFunction combined = edpc::dempster_combine(m1, m2);
    CHECK(combined.mass(w(0)) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(combined.mass(w(1)) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(combined.mass(FocalElement::omega(2)) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    check_unit_sum(combined);
}

TEST_CASE("dempster: total conflict throws") {
    CHECK_THROWS_AS(
        edpc::dempster_combine(MassFunction::categorical(0, 2), MassFunction::categorical(1, 2)),
        edpc::validation_error);
}

TEST_CASE("dempster: frame mismatch throws") {
    CHECK_THROWS_AS(
        edpc::dempster_combine(MassFunction::categorical(0, 2), MassFunction::categorical(0, 3)),
        edpc::validation_error);
}

TEST_CASE("dubois-prade: conflicting mass moves to the union") {
    MassFunction m1({{w(0), 0.5}, {FocalElement::omega(2), 0.5}}, 2);
    MassFunction m2({{w(1), 0.5}, {FocalElement::omega(2), 0.5}}, 2);
    MassFunction combined = edpc::dubois_prade_combine(m1, m2);
    CHECK(combined.mass(w(0)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(combined.mass(w(1)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(combined.mass(FocalElement::omega(2)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("dubois-prade: the published bridge-node combination") {
    MassFunction combined = edpc::dubois_prade_combine(table1_a, table1_b);
    CHECK(combined.mass(w(0)) == doctest::Approx(0.2387).epsilon(1e-3));
    CHECK(combined.mass(w(1)) == doctest::Approx(0.2387).epsilon(1e-3));
    CHECK(combined.mass(FocalElement::omega(2)) == doctest::Approx(0.3678).epsilon(1e-3));
    CHECK(combined.mass(outlier()) == doctest::Approx(0.1548).epsilon(1e-3));
}

TEST_CASE("dubois-prade: O* neutral") {
    MassFunction m({{w(1), 0.7}, {outlier(), 0.3}}, 2);
    MassFunction combined = edpc::dubois_prade_combine(m, MassFunction::vacuous(2));
    CHECK(combined.mass(w(1)) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(combined.mass(outlier()) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("combination rules match the dense power-set oracle") {
    testutil::Rng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        int frame = rng.uniform_int(1, 3);
        MassFunction a = testutil::random_bba(rng, frame, 4);
        MassFunction b = testutil::random_bba(rng, frame, 4);

        auto dp = edpc::dubois_prade_combine(a, b);
        CHECK(testutil::max_abs_difference(dp, testutil::dubois_prade_oracle(
                                                   testutil::to_dense(a), testutil::to_dense(b)))
              <= 1e-12);
        check_unit_sum(dp);

        try {
            auto ds = edpc::dempster_combine(a, b);
            CHECK(testutil::max_abs_difference(ds, testutil::dempster_oracle(
                                                       testutil::to_dense(a),
                                                       testutil::to_dense(b))) <= 1e-12);
            check_unit_sum(ds);
        } catch (const edpc::validation_error&) {
            // total conflict; categorical opposites can legitimately collide
        }

        // commutativity (summation order differs, so compare within 1e-12)
        CHECK(testutil::max_abs_difference(edpc::dubois_prade_combine(b, a),
                                           testutil::to_dense(dp)) <= 1e-12);
    }
}

TEST_CASE("dempster associativity within 1e-9") {
    testutil::Rng rng(100);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int frame = rng.uniform_int(2, 3);
        MassFunction a = testutil::random_bba(rng, frame, 4);
        MassFunction b = testutil::random_bba(rng, frame, 4);
        MassFunction c = testutil::random_bba(rng, frame, 4);
        try {
            MassFunction left = edpc::dempster_combine(edpc::dempster_combine(a, b), c);
            MassFunction right = edpc::dempster_combine(a, edpc::dempster_combine(b, c));
            CHECK(testutil::max_abs_difference(left, testutil::to_dense(right)) <= 1e-9);
            ++checked;
        } catch (const edpc::validation_error&) {
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("discount") {
    MassFunction m({{w(0), 0.8}, {outlier(), 0.2}}, 2);
    MassFunction same = edpc::discount(m, 1.0);
    CHECK(same.mass(w(0)) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(edpc::discount(m, 0.0).is_vacuous());
    MassFunction half = edpc::discount(m, 0.5);
    CHECK(half.mass(w(0)) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(half.mass(outlier()) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK_THROWS_AS(edpc::discount(m, -0.1), edpc::validation_error);
    CHECK_THROWS_AS(edpc::discount(m, 1.1), edpc::validation_error);
}

TEST_CASE("combine_neighbor_evidence: published two-group example") {
    std::vector<MassFunction> evidence = {table1_a, table1_b};

    MassFunction max_rule = edpc::combine_neighbor_evidence(evidence);
    CHECK(max_rule.mass(w(0)) == doctest::Approx(0.2387).epsilon(1e-3));
    CHECK(max_rule.mass(w(1)) == doctest::Approx(0.2387).epsilon(1e-3));
    CHECK(max_rule.mass(FocalElement::omega(2)) == doctest::Approx(0.3678).epsilon(1e-3));
    CHECK(max_rule.mass(outlier()) == doctest::Approx(0.1548).epsilon(1e-3));

    MassFunction eq15 =
        edpc::combine_neighbor_evidence(evidence, ReliabilityRule::paper_eq15);
    CHECK(eq15.mass(w(0)) == doctest::Approx(0.2113).epsilon(1e-3));
    CHECK(eq15.mass(w(1)) == doctest::Approx(0.2113).epsilon(1e-3));
    CHECK(eq15.mass(FocalElement::omega(2)) == doctest::Approx(0.0920).epsilon(1e-3));
    CHECK(eq15.mass(outlier()) == doctest::Approx(0.4854).epsilon(1e-3));
}

TEST_CASE("combine_neighbor_evidence: single input passes through") {
    MassFunction m({{w(1), 0.62}, {outlier(), 0.38}}, 2);
    std::vector<MassFunction> one = {m};
    MassFunction out = edpc::combine_neighbor_evidence(one);
    CHECK(out.mass(w(1)) == doctest::Approx(0.62).epsilon(1e-12));
    CHECK(out.mass(outlier()) == doctest::Approx(0.38).epsilon(1e-12));
}

TEST_CASE("combine_neighbor_evidence: one group reinforces, no discounting") {
    std::vector<MassFunction> three(3, simple2(0, 0.5));
    MassFunction out = edpc::combine_neighbor_evidence(three);
    CHECK(out.mass(w(0)) == doctest::Approx(0.875).epsilon(1e-12));
    CHECK(out.mass(outlier()) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("combine_neighbor_evidence: inner Dempster closed form") {
    testutil::Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        int s = rng.uniform_int(1, 6);
        std::vector<MassFunction> group;
        double product = 1.0;
        for (int i = 0; i < s; ++i) {
            double alpha = 0.05 + 0.9 * rng.uniform01();
            product *= 1.0 - alpha;
            group.push_back(simple2(1, alpha));
        }
        MassFunction out = edpc::combine_neighbor_evidence(group);
        CHECK(out.mass(w(1)) == doctest::Approx(1.0 - product).epsilon(1e-9));
    }
}

TEST_CASE("combine_neighbor_evidence: vacuous inputs are neutral") {
    MassFunction m = simple2(0, 0.7);
    std::vector<MassFunction> padded = {MassFunction::vacuous(2), m, MassFunction::vacuous(2)};
    MassFunction out = edpc::combine_neighbor_evidence(padded);
    CHECK(out.mass(w(0)) == doctest::Approx(0.7).epsilon(1e-12));

    std::vector<MassFunction> all_vacuous = {MassFunction::vacuous(2), MassFunction::vacuous(2)};
    CHECK(edpc::combine_neighbor_evidence(all_vacuous).is_vacuous());
}

TEST_CASE("combine_neighbor_evidence: errors") {
    std::vector<MassFunction> none;
    CHECK_THROWS_AS(edpc::combine_neighbor_evidence(none), edpc::validation_error);
    std::vector<MassFunction> mixed = {MassFunction::categorical(0, 2),
                                       MassFunction::categorical(0, 3)};
    CHECK_THROWS_AS(edpc::combine_neighbor_evidence(mixed), edpc::validation_error);
}

TEST_CASE("combine_neighbor_evidence: general BBAs group by their largest focal") {
    // dominant focal of the first input is w1, so both pieces land in one group
    MassFunction general({{w(0), 0.2}, {w(1), 0.5}, {outlier(), 0.3}}, 2);
    MassFunction support = simple2(1, 0.6);
    std::vector<MassFunction> evidence = {general, support};
    MassFunction out = edpc::combine_neighbor_evidence(evidence);
    // single group: plain Dempster of the two, no discounting
    MassFunction expected = edpc::dempster_combine(general, support);
    CHECK(testutil::max_abs_difference(out, testutil::to_dense(expected)) <= 1e-12);
}

TEST_CASE("decide") {
    MassFunction bridge({{w(0), 0.2387}, {w(1), 0.2387},
                         {FocalElement::omega(2), 0.3678},
                         {outlier(), 0.1548}},
                        2);
    CHECK(decide(bridge, DecisionMode::all_focal) == FocalElement::omega(2));
    CHECK(decide(bridge, DecisionMode::singletons_only) == w(0)); // tie toward lower id

    CHECK(decide(MassFunction::vacuous(2), DecisionMode::all_focal) == outlier());
    CHECK(decide(MassFunction::vacuous(2), DecisionMode::singletons_only) == outlier());

    MassFunction overlap_only({{FocalElement::omega(2), 0.8}, {outlier(), 0.2}}, 2);
    CHECK(decide(overlap_only, DecisionMode::singletons_only) == outlier());

    MassFunction even({{w(0), 0.5}, {outlier(), 0.5}}, 2);
    CHECK(decide(even, DecisionMode::all_focal) == w(0)); // subset beats O* on ties
}

TEST_CASE("mass json round trip") {
    testutil::Rng rng(102);
    for (int trial = 0; trial < 50; ++trial) {
        int frame = rng.uniform_int(1, 4);
        MassFunction m = testutil::random_bba(rng, frame, 5);
        MassFunction back = edpc::mass_from_json(edpc::mass_to_json(m), frame);
        CHECK(back == m);
    }
    CHECK_THROWS_AS(edpc::mass_from_json("[{\"focal\": \"bogus\", \"mass\": 1.0}]", 2),
                    edpc::validation_error);
    CHECK_THROWS_AS(edpc::mass_from_json("[{\"focal\": [0], \"mass\": 0.5}]", 2),
                    edpc::validation_error);
    CHECK_THROWS_AS(edpc::mass_from_json("[{\"focal\": [5], \"mass\": 1.0}]", 2),
                    edpc::validation_error);
}
