#include "birnbaum/methods.hpp"

#include "birnbaum/errors.hpp"
#include "birnbaum/relations.hpp"
#include "birnbaum/statistics.hpp"

#include <algorithm>

namespace birnbaum {

namespace {

Rational pow_rational(const Rational& base, long exp) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(exp));
    mpz_pow_ui(den.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(exp));
    return Rational(num, den);
}

Rational binomial_coefficient(long n, long k) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(c);
}

void check_theta(const Rational& theta) {
    if (theta.sign() <= 0 || theta >= Rational(1))
        fail(Errc::invalid_model, "theta " + theta.str() + " not in (0,1)");
}

} // namespace

Rational binom_pmf(long n, const Rational& theta, long x) {
    return binomial_coefficient(n, x) * pow_rational(theta, x) *
           pow_rational(Rational(1) - theta, n - x);
}

Rational negbinom_pmf(long k, const Rational& theta, long s) {
    return binomial_coefficient(s + k - 1, k - 1) * pow_rational(theta, s) *
           pow_rational(Rational(1) - theta, k);
}

Rational binom_pvalue(const BinomialSpec& spec, long x) {
    check_theta(spec.theta0);
    if (spec.n <= 0) fail(Errc::invalid_model, "binomial needs n >= 1");
    if (x < 0 || x > spec.n)
        fail(Errc::x_out_of_range, "observed successes " + std::to_string(x) +
                                       " outside 0.." + std::to_string(spec.n));
    Rational sum;
    for (long j = x; j <= spec.n; ++j) sum += binom_pmf(spec.n, spec.theta0, j);
    return sum;
}

Rational negbinom_pvalue(const NegBinomialSpec& spec, long s) {
    check_theta(spec.theta0);
    if (spec.k <= 0) fail(Errc::invalid_model, "negative binomial needs k >= 1");
    if (s < 0) fail(Errc::x_out_of_range, "observed successes must be >= 0");
    Rational below;
    for (long j = 0; j < s; ++j) below += negbinom_pmf(spec.k, spec.theta0, j);
    return Rational(1) - below;
}

namespace {

void check_data(const BinomialSpec& b, const NegBinomialSpec& nb, long successes, long failures) {
    if (successes < 0 || failures < 0)
        fail(Errc::inconsistent_data, "negative counts");
    if (successes + failures != b.n)
        fail(Errc::inconsistent_data,
             "successes + failures = " + std::to_string(successes + failures) +
                 " but the binomial has n = " + std::to_string(b.n));
    if (failures != nb.k)
        fail(Errc::inconsistent_data, "failures = " + std::to_string(failures) +
                                          " but the negative binomial stops at k = " +
                                          std::to_string(nb.k));
}

} // namespace

Rational mixture_pvalue(const BinomialSpec& b, const NegBinomialSpec& nb, long successes,
                        long failures) {
    check_data(b, nb, successes, failures);
    Rational sum = binom_pvalue(b, successes) + negbinom_pvalue(nb, successes);
    return sum / Rational(2);
}

ExperimentPtr binomial_experiment(long n, const std::vector<Rational>& thetas, std::string id) {
    if (n <= 0) fail(Errc::invalid_model, "binomial needs n >= 1");
    if (thetas.empty()) fail(Errc::invalid_model, "empty parameter grid");
    if (id.empty()) id = "binom" + std::to_string(n);

    std::vector<std::string> params, outcomes;
    for (const auto& t : thetas) {
        check_theta(t);
        params.push_back(t.str());
    }
    for (long x = 0; x <= n; ++x) outcomes.push_back(std::to_string(x));

    std::vector<std::vector<Rational>> pmf;
    for (const auto& t : thetas) {
        std::vector<Rational> row;
        for (long x = 0; x <= n; ++x) row.push_back(binom_pmf(n, t, x));
        pmf.push_back(std::move(row));
    }
    return validate_experiment_ptr(std::move(id), std::move(params), std::move(outcomes),
                                   std::move(pmf));
}

ExperimentPtr negbinomial_experiment(long k, const std::vector<Rational>& thetas, long s_max,
                                     std::string id) {
    if (k <= 0) fail(Errc::invalid_model, "negative binomial needs k >= 1");
    if (s_max < 0) fail(Errc::invalid_model, "truncation bound must be >= 0");
    if (thetas.empty()) fail(Errc::invalid_model, "empty parameter grid");
    if (id.empty()) id = "negbinom" + std::to_string(k);

    std::vector<std::string> params, outcomes;
    for (const auto& t : thetas) {
        check_theta(t);
        params.push_back(t.str());
    }
    for (long s = 0; s <= s_max; ++s) outcomes.push_back(std::to_string(s));
    outcomes.push_back("tail");

    std::vector<std::vector<Rational>> pmf;
    for (const auto& t : thetas) {
        std::vector<Rational> row;
        Rational head;
        for (long s = 0; s <= s_max; ++s) {
            Rational p = negbinom_pmf(k, t, s);
            head += p;
            row.push_back(std::move(p));
        }
        row.push_back(Rational(1) - head); // exact tail mass P(S > s_max)
        pmf.push_back(std::move(row));
    }
    return validate_experiment_ptr(std::move(id), std::move(params), std::move(outcomes),
                                   std::move(pmf));
}

std::vector<Rational> default_theta_grid() {
    return {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
}

MethodAuditReport audit_sp2_wcp(const BinomialSpec& b, const NegBinomialSpec& nb, long successes,
                                long failures, long s_max, const std::vector<Rational>& thetas) {
    check_data(b, nb, successes, failures);
    if (s_max < successes)
        fail(Errc::inconsistent_data, "truncation bound below the observed success count");

    MethodAuditReport report;
    report.m_binom = binom_pvalue(b, successes);
    report.m_negbinom = negbinom_pvalue(nb, successes);
    report.m_mix_tag1 = mixture_pvalue(b, nb, successes, failures);
    report.m_mix_tag2 = report.m_mix_tag1; // M sees the untagged data only
    report.ev_mix_tag1 = report.m_binom;
    report.ev_mix_tag2 = report.m_negbinom;

    // Likelihood proportionality of the audited pair, exact on the whole grid.
    report.proportionality =
        binomial_coefficient(b.n, successes) /
        binomial_coefficient(successes + nb.k - 1, nb.k - 1);
    for (const auto& t : thetas) {
        if (binom_pmf(b.n, t, successes) !=
            report.proportionality * negbinom_pmf(nb.k, t, successes))
            fail(Errc::validation_error, "proportionality premise failed at theta = " + t.str());
    }

    // The sufficiency witness T(j,x) = (1,x) on the truncated mixture: the
    // tagged pair lands in one block of the minimal sufficient partition.
    ExperimentPtr e1 = binomial_experiment(b.n, thetas);
    ExperimentPtr e2 = negbinomial_experiment(nb.k, thetas, s_max);
    MixtureExperiment mix = make_mixture(e1, e2, Rational(1, 2));
    StatisticPartition minsuf = minimal_sufficient(*mix.base);
    const std::string tag1 = tagged_outcome(1, std::to_string(successes));
    const std::string tag2 = tagged_outcome(2, std::to_string(successes));
    std::size_t block = block_containing(minsuf, tag1);
    bool same_block = false;
    for (const auto& label : minsuf.blocks[block]) same_block |= (label == tag2);
    report.sufficient_block = minsuf.blocks[block];

    report.sp2_check = same_block && report.m_mix_tag1 == report.m_mix_tag2;
    report.wcp_check = report.ev_mix_tag1 == report.m_binom &&
                       report.ev_mix_tag2 == report.m_negbinom;
    report.lp_check = report.ev_mix_tag1 == report.ev_mix_tag2;
    report.sp1_violated = same_block && !report.lp_check;

    report.narrative =
        std::string("conditional-report rule: SP2 ") + (report.sp2_check ? "holds" : "FAILS") +
        ", WCP " + (report.wcp_check ? "holds" : "FAILS") + ", LP " +
        (report.lp_check ? "holds" : "violated") +
        (report.sp1_violated
             ? "; the same rule violates sufficiency stated as a property of the inference"
             : "");
    report.convention = "negative binomial: theta = success probability, sampling stops at "
                        "failure number " +
                        std::to_string(nb.k) +
                        ", S counts successes; this is the reading under which the component "
                        "likelihoods are proportional";
    return report;
}

} // namespace birnbaum
