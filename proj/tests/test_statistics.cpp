#include "birnbaum/statistics.hpp"

#include "birnbaum/errors.hpp"
#include "birnbaum/methods.hpp"
#include "birnbaum/report.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <functional>

using namespace birnbaum;

namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::validation_error;
}

StatisticPartition singletons(const Experiment& e) {
    StatisticPartition t{"identity", {}};
    for (const auto& x : e.outcomes) t.blocks.push_back({x});
    return t;
}

StatisticPartition one_block(const Experiment& e) {
    return {"all", {e.outcomes}};
}

} // namespace

TEST_CASE("partition validation") {
    auto f = two_ancillaries_fixture();
    const Experiment& e = *f.unconditional;
    CHECK_NOTHROW(check_partition(e, singletons(e)));

    CHECK(code_of([&] {
              check_partition(e, {"bad", {{"(1,1)"}, {"(1,1)", "(1,2)", "(2,1)", "(2,2)"}}});
          }) == Errc::not_a_partition);
    CHECK(code_of([&] { check_partition(e, {"bad", {{"(1,1)"}}}); }) == Errc::not_a_partition);
    CHECK(code_of([&] { check_partition(e, {"bad", {e.outcomes, {}}}); }) ==
          Errc::not_a_partition);
    CHECK(code_of([&] { check_partition(e, {"bad", {e.outcomes, {"ghost"}}}); }) ==
          Errc::not_a_partition);
}

TEST_CASE("sufficiency: identity partition always passes") {
    auto f = two_ancillaries_fixture();
    auto check = is_sufficient(*f.unconditional, singletons(*f.unconditional));
    CHECK(check.sufficient);
    for (const auto& block : check.conditional_table) {
        REQUIRE(block.size() == 1);
        CHECK(block[0].second == Rational(1));
    }
}

TEST_CASE("sufficiency: one block on the U-conditional fails with a certificate") {
    auto f = two_ancillaries_fixture();
    auto check = is_sufficient(*f.conditional_u1, one_block(*f.conditional_u1));
    CHECK(!check.sufficient);
    REQUIRE(check.counterexample);
    // p_theta((1,1))/1 is 1/2 under one parameter and 1/4 under the other
    CHECK(check.counterexample->conditional_a != check.counterexample->conditional_b);
}

TEST_CASE("minimal sufficient partition of the unconditional model is all singletons") {
    auto f = two_ancillaries_fixture();
    auto t = minimal_sufficient(*f.unconditional);
    CHECK(t.blocks.size() == 4); // likelihood ratios 2, 2/3, 4/5, 4/3 all distinct
    CHECK(is_sufficient(*f.unconditional, t).sufficient);

    auto tu = minimal_sufficient(*f.conditional_u1);
    CHECK(tu.blocks.size() == 2);
}

TEST_CASE("minimal sufficient groups identical likelihood columns") {
    auto e = validate_experiment("dup", {"1", "2"}, {"a", "b", "c"},
                                 {{{1, 4}, {1, 4}, {1, 2}}, {{1, 3}, {1, 3}, {1, 3}}});
    auto t = minimal_sufficient(e);
    REQUIRE(t.blocks.size() == 2);
    CHECK(t.blocks[0] == std::vector<std::string>{"a", "b"});
    CHECK(t.blocks[1] == std::vector<std::string>{"c"});
}

TEST_CASE("minimal sufficient pairs proportional outcomes across mixture components") {
    auto e1 = binomial_experiment(12, default_theta_grid());
    auto e2 = negbinomial_experiment(3, default_theta_grid(), 24);
    auto mix = make_mixture(e1, e2);
    auto t = minimal_sufficient(*mix.base);
    auto block = t.blocks[block_containing(t, "(1,9)")];
    CHECK(block == std::vector<std::string>{"(1,9)", "(2,9)"});
}

TEST_CASE("minimal sufficient is sufficient on random experiments; refinements pass, "
          "coarsenings fail") {
    bwtest::Rng rng(101);
    for (int trial = 0; trial < 120; ++trial) {
        auto params = bwtest::theta_labels(static_cast<std::size_t>(bwtest::rand_int(rng, 1, 3)));
        auto e = bwtest::random_experiment(rng, "r", params,
                                           static_cast<std::size_t>(bwtest::rand_int(rng, 1, 6)),
                                           12);
        auto t = minimal_sufficient(*e);
        CHECK(is_sufficient(*e, t).sufficient);

        // refining: split the first block with >= 2 members into two
        for (std::size_t b = 0; b < t.blocks.size(); ++b) {
            if (t.blocks[b].size() >= 2) {
                StatisticPartition finer = t;
                std::vector<std::string> head{finer.blocks[b].front()};
                finer.blocks[b].erase(finer.blocks[b].begin());
                finer.blocks.push_back(std::move(head));
                CHECK(is_sufficient(*e, finer).sufficient);
                break;
            }
        }
        // coarsening: merging any two distinct blocks must break sufficiency
        for (std::size_t i = 0; i + 1 < t.blocks.size(); ++i) {
            StatisticPartition coarser{"m", {}};
            for (std::size_t b = 0; b < t.blocks.size(); ++b)
                if (b != i && b != i + 1) coarser.blocks.push_back(t.blocks[b]);
            std::vector<std::string> merged = t.blocks[i];
            merged.insert(merged.end(), t.blocks[i + 1].begin(), t.blocks[i + 1].end());
            coarser.blocks.push_back(std::move(merged));
            CHECK(!is_sufficient(*e, coarser).sufficient);
        }
    }
}

TEST_CASE("ancillarity of the coordinate statistics") {
    auto f = two_ancillaries_fixture();
    const Experiment& e = *f.unconditional;

    auto u = is_ancillary(e, {"U", {f.u_block1, f.u_block2}});
    CHECK(u.ancillary);
    CHECK(u.block_probs == std::vector<Rational>{{1, 3}, {2, 3}});

    auto v = is_ancillary(e, {"V", {f.v_block1, f.v_block2}});
    CHECK(v.ancillary);
    CHECK(v.block_probs == std::vector<Rational>{{1, 2}, {1, 2}});

    CHECK(is_ancillary(e, one_block(e)).ancillary);

    auto bad = is_ancillary(e, singletons(e));
    CHECK(!bad.ancillary);
    REQUIRE(bad.counterexample);
    CHECK(bad.counterexample->prob_a != bad.counterexample->prob_b);
}

TEST_CASE("enumerate_ancillaries finds exactly U and V on the example") {
    auto f = two_ancillaries_fixture();
    auto found = enumerate_ancillaries(*f.unconditional);
    REQUIRE(found.size() == 2);
    CHECK(found[0].blocks == std::vector<std::vector<std::string>>{f.u_block1, f.u_block2});
    CHECK(found[1].blocks == std::vector<std::vector<std::string>>{f.v_block1, f.v_block2});

    for (const auto& t : found) {
        auto check = is_ancillary(*f.unconditional, t);
        CHECK(check.ancillary);
        Rational total;
        for (const auto& p : check.block_probs) total += p;
        CHECK(total == Rational(1));
    }
}

TEST_CASE("enumerate_ancillaries counts Bell(n)-1 when every partition is ancillary") {
    // identical rows: the distribution never depends on the parameter
    auto same = validate_experiment_ptr(
        "same", {"1", "2"}, {"a", "b", "c", "d"},
        {{{1, 4}, {1, 4}, {1, 4}, {1, 4}}, {{1, 4}, {1, 4}, {1, 4}, {1, 4}}});
    CHECK(enumerate_ancillaries(*same).size() == 14); // Bell(4) - 1

    auto single_param = validate_experiment_ptr("one", {"t"}, {"a", "b", "c", "d", "e"},
                                                {{{1, 5}, {1, 5}, {1, 5}, {1, 5}, {1, 5}}});
    CHECK(enumerate_ancillaries(*single_param).size() == 51); // Bell(5) - 1

    auto singleton = validate_experiment_ptr("pt", {"t"}, {"a"}, {{{1}}});
    CHECK(enumerate_ancillaries(*singleton).empty());
}

TEST_CASE("enumerate_ancillaries enforces the outcome cap") {
    auto f = two_ancillaries_fixture();
    CHECK(code_of([&] { enumerate_ancillaries(*f.unconditional, 3); }) == Errc::too_large);
}

TEST_CASE("conditioning reproduces the U=1 and V=1 tables exactly") {
    auto f = two_ancillaries_fixture();
    const Experiment& e = *f.unconditional;

    Experiment u1 = condition(e, {"U", {f.u_block1, f.u_block2}}, 0);
    CHECK(u1.outcomes == std::vector<std::string>{"(1,1)", "(1,2)"});
    CHECK(u1.pmf == std::vector<std::vector<Rational>>{{{1, 2}, {1, 2}}, {{1, 4}, {3, 4}}});

    Experiment v1 = condition(e, {"V", {f.v_block1, f.v_block2}}, 0);
    CHECK(v1.outcomes == std::vector<std::string>{"(1,1)", "(2,1)"});
    CHECK(v1.pmf == std::vector<std::vector<Rational>>{{{1, 3}, {2, 3}}, {{1, 6}, {5, 6}}});
}

TEST_CASE("conditioning on the one-block partition is the identity") {
    auto f = two_ancillaries_fixture();
    Experiment same = condition(*f.unconditional, one_block(*f.unconditional), 0, "E");
    CHECK(same == *f.unconditional);
}

TEST_CASE("conditioning refuses non-ancillary statistics and bad blocks") {
    auto f = two_ancillaries_fixture();
    const Experiment& e = *f.unconditional;
    CHECK(code_of([&] { condition(e, singletons(e), 0); }) == Errc::not_ancillary);
    CHECK(code_of([&] {
              condition(e, {"U", {f.u_block1, f.u_block2}}, 7);
          }) == Errc::empty_block);
}

TEST_CASE("conditional likelihoods stay proportional with the block probability as constant") {
    bwtest::Rng rng(303);
    int exercised = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto params = bwtest::theta_labels(static_cast<std::size_t>(bwtest::rand_int(rng, 1, 3)));
        auto e = bwtest::random_experiment(rng, "r", params,
                                           static_cast<std::size_t>(bwtest::rand_int(rng, 2, 6)),
                                           12);
        auto ancillaries = enumerate_ancillaries(*e);
        if (ancillaries.empty()) continue;
        const auto& t = ancillaries.front();
        auto probs = is_ancillary(*e, t).block_probs;
        for (std::size_t b = 0; b < t.blocks.size(); ++b) {
            if (probs[b].is_zero()) continue;
            auto cond = std::make_shared<const Experiment>(condition(*e, t, b));
            for (const auto& x : t.blocks[b]) {
                auto c = proportionality_constant(make_base(e, x), make_base(cond, x));
                REQUIRE(c);
                CHECK(*c == probs[b]);
                ++exercised;
            }
        }
    }
    CHECK(exercised > 30);
}
