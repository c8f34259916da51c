#include "birnbaum/experiment.hpp"

#include "birnbaum/errors.hpp"
#include "birnbaum/report.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <functional>

using namespace birnbaum;

namespace {

std::vector<std::vector<Rational>> table1_rows() {
    return {{{1, 6}, {1, 6}, {2, 6}, {2, 6}}, {{1, 12}, {3, 12}, {5, 12}, {3, 12}}};
}

ExperimentPtr table1() {
    return validate_experiment_ptr("E", {"1", "2"}, {"(1,1)", "(1,2)", "(2,1)", "(2,2)"},
                                   table1_rows());
}

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::validation_error;
}

} // namespace

TEST_CASE("validate_experiment accepts the 4-outcome model") {
    auto e = table1();
    CHECK(e->params.size() == 2);
    CHECK(e->outcomes.size() == 4);
    CHECK(e->prob(1, 2) == Rational(5, 12));
}

TEST_CASE("validate_experiment accepts a degenerate single-outcome model") {
    auto e = validate_experiment("point", {"a", "b"}, {"only"}, {{{1}}, {{1}}});
    CHECK(e.outcomes.size() == 1);
}

TEST_CASE("validate_experiment rejects bad inputs with specific codes") {
    auto rows = table1_rows();
    rows[1][3] = Rational(4, 12);
    CHECK(code_of([&] {
              validate_experiment("bad", {"1", "2"}, {"a", "b", "c", "d"}, rows);
          }) == Errc::row_sum);

    CHECK(code_of([] {
              validate_experiment("bad", {"1"}, {"a", "b"}, {{{3, 2}, {-1, 2}}});
          }) == Errc::negative_prob);

    CHECK(code_of([] {
              validate_experiment("bad", {"1", "1"}, {"a"}, {{{1}}, {{1}}});
          }) == Errc::duplicate_label);
    CHECK(code_of([] {
              validate_experiment("bad", {"1"}, {"a", "a"}, {{{1, 2}, {1, 2}}});
          }) == Errc::duplicate_label);

    CHECK(code_of([] {
              validate_experiment("bad", {"1", "2"}, {"a", "b"},
                                  {{{0}, {1}}, {{0}, {1}}});
          }) == Errc::dead_outcome);

    CHECK(code_of([] {
              validate_experiment("bad", {"1"}, {"a", "b"}, {{{1}}});
          }) == Errc::mismatched_row_length);
    CHECK(code_of([] {
              validate_experiment("bad", {"1", "2"}, {"a"}, {{{1}}});
          }) == Errc::mismatched_row_length);
}

TEST_CASE("likelihood vectors read pmf columns") {
    auto e = table1();
    CHECK(likelihood_vector(make_base(e, "(1,1)")).entries ==
          std::vector<Rational>{{1, 6}, {1, 12}});

    auto f = two_ancillaries_fixture();
    CHECK(likelihood_vector(make_base(f.conditional_u1, "(1,1)")).entries ==
          std::vector<Rational>{{1, 2}, {1, 4}});

    auto point = validate_experiment_ptr("point", {"a", "b", "c"}, {"only"},
                                         {{{1}}, {{1}}, {{1}}});
    CHECK(likelihood_vector(make_base(point, "only")).entries ==
          std::vector<Rational>{1, 1, 1});
}

TEST_CASE("make_base rejects unknown outcomes") {
    CHECK(code_of([] { make_base(table1(), "nope"); }) == Errc::unresolved_reference);
}

TEST_CASE("proportionality constant: worked examples") {
    auto f = two_ancillaries_fixture();
    auto base_e = make_base(f.unconditional, "(1,1)");
    auto base_u = make_base(f.conditional_u1, "(1,1)");

    auto c = proportionality_constant(base_e, base_u);
    REQUIRE(c);
    CHECK(*c == Rational(1, 3));

    CHECK(*proportionality_constant(base_e, base_e) == Rational(1));

    // (1/2,1/4) vs (1/2,3/4): ratios 1 and 1/3 differ
    auto u2 = make_base(f.conditional_u1, "(1,2)");
    CHECK(!proportionality_constant(base_u, u2));
}

TEST_CASE("proportionality requires matching zero positions") {
    auto a = validate_experiment_ptr("a", {"1", "2"}, {"x", "y"},
                                     {{{1, 2}, {1, 2}}, {{0}, {1}}});
    auto b = validate_experiment_ptr("b", {"1", "2"}, {"x", "y"},
                                     {{{1, 2}, {1, 2}}, {{1, 4}, {3, 4}}});
    CHECK(!proportionality_constant(make_base(a, "x"), make_base(b, "x")));
}

TEST_CASE("proportionality demands equal parameter lists") {
    auto a = validate_experiment_ptr("a", {"1"}, {"x"}, {{{1}}});
    auto b = validate_experiment_ptr("b", {"2"}, {"x"}, {{{1}}});
    CHECK(code_of([&] { proportionality_constant(make_base(a, "x"), make_base(b, "x")); }) ==
          Errc::param_mismatch);
}

TEST_CASE("proportionality is reciprocal and transitive in constants") {
    bwtest::Rng rng(11);
    int found = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto u = bwtest::random_universe(rng);
        for (std::size_t i = 0; i < u.universe.size(); ++i) {
            for (std::size_t j = 0; j < u.universe.size(); ++j) {
                if (i == j) continue;
                auto cij = proportionality_constant(u.universe.base(i), u.universe.base(j));
                if (!cij) continue;
                ++found;
                auto cji = proportionality_constant(u.universe.base(j), u.universe.base(i));
                REQUIRE(cji);
                CHECK(*cji == cij->reciprocal());
                for (std::size_t k = 0; k < u.universe.size(); ++k) {
                    if (k == i || k == j) continue;
                    auto cjk = proportionality_constant(u.universe.base(j), u.universe.base(k));
                    if (!cjk) continue;
                    auto cik = proportionality_constant(u.universe.base(i), u.universe.base(k));
                    REQUIRE(cik);
                    CHECK(*cik == *cij * *cjk);
                }
            }
        }
    }
    CHECK(found > 20); // the generator must actually plant proportional pairs
}

TEST_CASE("mixtures tag outcomes and scale probabilities") {
    auto f = two_ancillaries_fixture();
    auto mix = make_mixture(f.conditional_u1, f.conditional_v1, Rational(1, 2));
    CHECK(mix.base->outcomes.size() == 4);

    auto idx = mix.base->outcome_index("(1,(1,1))");
    REQUIRE(idx);
    CHECK(mix.base->prob(0, *idx) == Rational(1, 4)); // (1/2)(1/2)
    CHECK(mix.base->prob(1, *idx) == Rational(1, 8)); // (1/2)(1/4)

    SUBCASE("self-mixture halves everything") {
        auto self = make_mixture(f.unconditional, f.unconditional, Rational(1, 2));
        for (std::size_t p = 0; p < 2; ++p)
            for (std::size_t x = 0; x < 4; ++x) {
                CHECK(self.base->pmf[p][x] == f.unconditional->pmf[p][x] / Rational(2));
                CHECK(self.base->pmf[p][x + 4] == f.unconditional->pmf[p][x] / Rational(2));
            }
    }
}

TEST_CASE("mixture component marginal equals its weight for every parameter") {
    bwtest::Rng rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        auto params = bwtest::theta_labels(2);
        auto e1 = bwtest::random_experiment(rng, "m1", params, 3, 12);
        auto e2 = bwtest::random_experiment(rng, "m2", params, 4, 12);
        Rational w(bwtest::rand_int(rng, 1, 11), 12);
        auto mix = make_mixture(e1, e2, w);
        for (std::size_t p = 0; p < params.size(); ++p) {
            Rational first_block;
            for (std::size_t x = 0; x < e1->outcomes.size(); ++x)
                first_block += mix.base->pmf[p][x];
            CHECK(first_block == w);
        }
    }
}

TEST_CASE("mixture rejects mismatched parameters and bad weights") {
    auto a = validate_experiment_ptr("a", {"1"}, {"x"}, {{{1}}});
    auto b = validate_experiment_ptr("b", {"2"}, {"x"}, {{{1}}});
    CHECK(code_of([&] { make_mixture(a, b); }) == Errc::param_mismatch);

    auto c = validate_experiment_ptr("c", {"1"}, {"x"}, {{{1}}});
    CHECK(code_of([&] { make_mixture(a, c, Rational(0)); }) == Errc::bad_weight);
    CHECK(code_of([&] { make_mixture(a, c, Rational(1)); }) == Errc::bad_weight);
    CHECK(code_of([&] { make_mixture(a, c, Rational(3, 2)); }) == Errc::bad_weight);
}

TEST_CASE("tagged outcome labels round-trip") {
    CHECK(tagged_outcome(1, "(1,1)") == "(1,(1,1))");
    auto parsed = parse_tagged_outcome("(2,tail)");
    REQUIRE(parsed);
    CHECK(parsed->first == 2);
    CHECK(parsed->second == "tail");
    CHECK(!parse_tagged_outcome("(3,x)"));
    CHECK(!parse_tagged_outcome("x"));
    CHECK(!parse_tagged_outcome("(1,)"));
    CHECK(!parse_tagged_outcome("(1x)"));
}
