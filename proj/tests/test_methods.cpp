#include "birnbaum/methods.hpp"

#include "birnbaum/errors.hpp"
#include "testutil.hpp"

#include <doctest.h>

using namespace birnbaum;

TEST_CASE("binomial tail p-values") {
    BinomialSpec spec{12, Rational(1, 2)};
    CHECK(binom_pvalue(spec, 9) == Rational(299, 4096)); // (220+66+12+1)/4096
    CHECK(binom_pvalue(spec, 0) == Rational(1));
    CHECK(binom_pvalue(spec, 12) == Rational(1, 4096)); // theta0^n

    CHECK(binom_pvalue({12, Rational(1, 4)}, 9) == Rational(6571, 16777216));

    CHECK_THROWS_AS(binom_pvalue(spec, 13), Error);
    CHECK_THROWS_AS(binom_pvalue(spec, -1), Error);
    CHECK_THROWS_AS(binom_pvalue({12, Rational(0)}, 3), Error);
}

TEST_CASE("negative binomial tail p-values via the finite complement") {
    NegBinomialSpec spec{3, Rational(1, 2)};
    CHECK(negbinom_pvalue(spec, 9) == Rational(134, 4096));
    CHECK(negbinom_pvalue(spec, 0) == Rational(1));
    CHECK(negbinom_pvalue({1, Rational(1, 2)}, 1) == Rational(1, 2)); // geometric tail
    CHECK(negbinom_pvalue({3, Rational(1, 4)}, 9) == Rational(529, 4194304));
}

TEST_CASE("p-values are monotone in the observed count") {
    BinomialSpec b{12, Rational(2, 3)};
    for (long x = 1; x <= 12; ++x) CHECK(binom_pvalue(b, x) <= binom_pvalue(b, x - 1));
    NegBinomialSpec nb{4, Rational(2, 3)};
    for (long s = 1; s <= 30; ++s) CHECK(negbinom_pvalue(nb, s) <= negbinom_pvalue(nb, s - 1));
}

TEST_CASE("mixture p-value averages the components and sits between them") {
    BinomialSpec b{12, Rational(1, 2)};
    NegBinomialSpec nb{3, Rational(1, 2)};
    CHECK(mixture_pvalue(b, nb, 9, 3) == Rational(433, 8192));

    for (const auto& theta0 : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
        BinomialSpec bb{12, theta0};
        NegBinomialSpec nn{3, theta0};
        Rational pb = binom_pvalue(bb, 9);
        Rational pn = negbinom_pvalue(nn, 9);
        Rational mix = mixture_pvalue(bb, nn, 9, 3);
        CHECK(mix == (pb + pn) / Rational(2));
        CHECK(mix >= (pb < pn ? pb : pn));
        CHECK(mix <= (pb < pn ? pn : pb));
    }

    // data consistent with both components at x = 0: both tails are 1
    CHECK(mixture_pvalue({3, Rational(1, 5)}, {3, Rational(1, 5)}, 0, 3) == Rational(1));

    CHECK_THROWS_AS(mixture_pvalue(b, nb, 8, 3), Error); // 8 + 3 != 12
    CHECK_THROWS_AS(mixture_pvalue(b, nb, 9, 4), Error); // failures != k
}

TEST_CASE("experiment factories produce valid models") {
    auto e1 = binomial_experiment(12, default_theta_grid());
    CHECK(e1->outcomes.size() == 13);
    CHECK(e1->params == std::vector<std::string>{"1/4", "1/2", "3/4"});

    auto e2 = negbinomial_experiment(3, default_theta_grid(), 24);
    CHECK(e2->outcomes.size() == 26);
    CHECK(e2->outcomes.back() == "tail");
    // the sink holds the exact tail mass
    auto idx = e2->outcome_index("tail");
    Rational head;
    for (long s = 0; s <= 24; ++s) head += negbinom_pmf(3, Rational(1, 2), s);
    CHECK(e2->prob(1, *idx) == Rational(1) - head);
}

TEST_CASE("audit: SP2 and WCP hold while LP fails at the classic data point") {
    MethodAuditReport r = audit_sp2_wcp({12, Rational(1, 2)}, {3, Rational(1, 2)}, 9, 3);
    CHECK(r.m_binom == Rational(299, 4096));
    CHECK(r.m_negbinom == Rational(134, 4096));
    CHECK(r.m_mix_tag1 == Rational(433, 8192));
    CHECK(r.m_mix_tag2 == Rational(433, 8192));
    CHECK(r.ev_mix_tag1 == Rational(299, 4096));
    CHECK(r.ev_mix_tag2 == Rational(134, 4096));
    CHECK(r.sp2_check);
    CHECK(r.wcp_check);
    CHECK(!r.lp_check);
    CHECK(r.sp1_violated);
    CHECK(r.proportionality == Rational(4));
    CHECK(r.sufficient_block == std::vector<std::string>{"(1,9)", "(2,9)"});
}

TEST_CASE("audit: LP violation persists across theta0 values") {
    for (const auto& theta0 : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
        MethodAuditReport r = audit_sp2_wcp({12, theta0}, {3, theta0}, 9, 3);
        CHECK(r.sp2_check);
        CHECK(r.wcp_check);
        CHECK(!r.lp_check);
    }
}

TEST_CASE("audit: equal component p-values exhibit no violation") {
    // identical components: the mixture of a binomial with itself
    // is impossible here, so use symmetric data where the tails coincide:
    // any spec pair with binom == negbinom tail at the data point.
    // k = n means 0 successes observed; both tails equal 1.
    MethodAuditReport r = audit_sp2_wcp({3, Rational(1, 2)}, {3, Rational(1, 2)}, 0, 3);
    CHECK(r.m_binom == Rational(1));
    CHECK(r.m_negbinom == Rational(1));
    CHECK(r.lp_check);
    CHECK(!r.sp1_violated);
}

TEST_CASE("audit rejects inconsistent data and too-small truncation") {
    CHECK_THROWS_AS(audit_sp2_wcp({12, Rational(1, 2)}, {3, Rational(1, 2)}, 9, 2), Error);
    CHECK_THROWS_AS(audit_sp2_wcp({12, Rational(1, 2)}, {3, Rational(1, 2)}, 9, 3, 5), Error);
}

TEST_CASE("component likelihoods stay proportional for every theta") {
    bwtest::Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        long k = bwtest::rand_int(rng, 1, 5);
        long s = bwtest::rand_int(rng, 0, 8);
        long n = s + k;
        Rational theta(bwtest::rand_int(rng, 1, 11), 12);
        Rational expected =
            binom_pmf(n, theta, s) / negbinom_pmf(k, theta, s);
        // the ratio is the pure count ratio C(n,s)/C(s+k-1,k-1), free of theta
        Rational other_theta(bwtest::rand_int(rng, 1, 11), 12);
        CHECK(binom_pmf(n, other_theta, s) ==
              expected * negbinom_pmf(k, other_theta, s));
    }
}

TEST_CASE("mixture p-value ignores the tag (method-level sufficiency)") {
    // both tags carry the same untagged data, so M is tag-invariant by type:
    // verified through the audit fields on a sweep
    for (long s = 0; s <= 9; s += 3) {
        MethodAuditReport r = audit_sp2_wcp({s + 3, Rational(1, 3)}, {3, Rational(1, 3)}, s, 3);
        CHECK(r.m_mix_tag1 == r.m_mix_tag2);
    }
}
