#pragma once

#include "birnbaum/experiment.hpp"

#include <string>
#include <vector>

namespace birnbaum {

/// Binomial(n, theta) experiment, testing theta = theta0 against theta > theta0.
struct BinomialSpec {
    long n = 0;
    Rational theta0;
};

/// Negative binomial: theta = success probability, sampling stops at the k-th
/// failure, S = number of successes observed.
struct NegBinomialSpec {
    long k = 0;
    Rational theta0;
};

/// Exact P(Binomial(n, theta0) >= x).
Rational binom_pvalue(const BinomialSpec& spec, long x);

/// Exact P(S >= s) via the finite complement 1 - sum_{j<s} P(S = j).
Rational negbinom_pvalue(const NegBinomialSpec& spec, long s);

/// Exact average of the two component p-values for data = (successes,
/// failures). Requires successes + failures = n and failures = k.
Rational mixture_pvalue(const BinomialSpec& b, const NegBinomialSpec& nb, long successes,
                        long failures);

/// Exact binomial pmf value C(n,x) theta^x (1-theta)^(n-x).
Rational binom_pmf(long n, const Rational& theta, long x);

/// Exact negative-binomial pmf value C(s+k-1,k-1) theta^s (1-theta)^k.
Rational negbinom_pmf(long k, const Rational& theta, long s);

/// Finite experiment object for a binomial model over a grid of parameter
/// values; outcome labels are the success counts "0".."n".
ExperimentPtr binomial_experiment(long n, const std::vector<Rational>& thetas,
                                  std::string id = "");

/// Finite experiment object for the negative binomial, truncated at s_max
/// successes with the exact tail mass folded into a "tail" sink outcome.
ExperimentPtr negbinomial_experiment(long k, const std::vector<Rational>& thetas, long s_max,
                                     std::string id = "");

/// The default parameter grid used when building experiment objects.
std::vector<Rational> default_theta_grid();

/// Outcome of auditing the conditional-report rule Ev(E_mix,(j,x)) = M(E_j,x)
/// on one data point: the method-level sufficiency property (SP2) and WCP both
/// hold, yet the rule violates LP whenever the component p-values differ.
struct MethodAuditReport {
    Rational m_binom;      // M(E1, x)
    Rational m_negbinom;   // M(E2, x)
    Rational m_mix_tag1;   // M(E_mix, (1,x))
    Rational m_mix_tag2;   // M(E_mix, (2,x))
    Rational ev_mix_tag1;  // Ev(E_mix, (1,x)) = M(E1, x)
    Rational ev_mix_tag2;  // Ev(E_mix, (2,x)) = M(E2, x)

    bool sp2_check = false; // M constant on the sufficient block
    bool wcp_check = false; // Ev(E_mix,(j,x)) = Ev(E_j,x)
    bool lp_check = false;  // Ev agrees on the L-related pair
    bool sp1_violated = false; // Ev differs on an S-related pair of the mixture

    Rational proportionality;                 // c: binomial pmf = c * negbinomial pmf
    std::vector<std::string> sufficient_block; // the block of T(j,x) = (1,x) on the mixture
    std::string narrative;
    std::string convention; // the counting convention the audit relies on
};

/// Builds the truncated mixture, certifies the sufficiency witness, and
/// evaluates the three checks. Throws INCONSISTENT_DATA unless
/// successes + failures = n and failures = k.
MethodAuditReport audit_sp2_wcp(const BinomialSpec& b, const NegBinomialSpec& nb, long successes,
                                long failures, long s_max = 24,
                                const std::vector<Rational>& thetas = default_theta_grid());

} // namespace birnbaum
