#include "birnbaum/freq_examples.hpp"

#include "birnbaum/errors.hpp"
#include "birnbaum/normal.hpp"

#include <cmath>

namespace birnbaum {

std::optional<Ex3Conditioning> parse_ex3_conditioning(std::string_view name) {
    if (name == "unconditional") return Ex3Conditioning::unconditional;
    if (name == "given-x-positive") return Ex3Conditioning::given_x_positive;
    if (name == "given-x-zero") return Ex3Conditioning::given_x_zero;
    return std::nullopt;
}

const char* ex3_conditioning_name(Ex3Conditioning c) {
    switch (c) {
        case Ex3Conditioning::unconditional: return "unconditional";
        case Ex3Conditioning::given_x_positive: return "given-x-positive";
        case Ex3Conditioning::given_x_zero: return "given-x-zero";
    }
    return "?";
}

Rational example3_coverage(const Rational& theta, Ex3Conditioning conditioning) {
    if (theta.sign() < 0 || theta >= Rational(1))
        fail(Errc::invalid_model, "theta " + theta.str() + " not in [0,1)");
    switch (conditioning) {
        case Ex3Conditioning::unconditional:
            return Rational(1) - theta;
        case Ex3Conditioning::given_x_positive:
            if (theta.is_zero())
                fail(Errc::condition_impossible,
                     "X > 0 has probability 0 when theta = 0");
            return Rational(1);
        case Ex3Conditioning::given_x_zero:
            return theta.is_zero() ? Rational(1) : Rational(0);
    }
    fail(Errc::invalid_model, "unknown conditioning");
}

namespace {

CondValue conditional(const Rational& hit_prob, const Rational& event_prob) {
    CondValue v;
    v.event_prob = event_prob;
    if (!event_prob.is_zero()) {
        v.defined = true;
        v.value = hit_prob / event_prob;
    }
    return v;
}

Example4Values example4_closed_form(const Rational& eps, const Rational& theta) {
    const Rational p = Rational(1, 2) + theta * eps; // X_i = theta + 1
    const Rational q = Rational(1, 2) - theta * eps; // X_i = theta - 1
    const Rational p2 = p * p, q2 = q * q;
    const bool eps_zero = eps.is_zero();

    // Whether the tie values fall in the other estimate's reachable interval:
    // theta-1 in A_{theta+1} iff theta >= 2 - 1/(2 eps); theta+1 in
    // A_{theta-1} iff theta <= 1/(2 eps) - 2. For eps = 0 both intervals are
    // the whole line.
    bool minus_in_plus_set = true, plus_in_minus_set = true;
    if (!eps_zero) {
        const Rational half_range = Rational(1) / (Rational(2) * eps);
        minus_in_plus_set = theta >= Rational(2) - half_range;
        plus_in_minus_set = theta <= half_range - Rational(2);
    }

    Example4Values v;
    v.given_distinct = conditional(Rational(2) * p * q, Rational(2) * p * q);
    v.tie_only_minus =
        conditional(minus_in_plus_set ? Rational(0) : q2, minus_in_plus_set ? Rational(0) : q2);
    v.tie_only_plus = conditional(Rational(0), plus_in_minus_set ? Rational(0) : p2);
    {
        Rational hit = minus_in_plus_set ? q2 : Rational(0);
        Rational event = (minus_in_plus_set ? q2 : Rational(0)) +
                         (plus_in_minus_set ? p2 : Rational(0));
        v.tie_intersection = conditional(hit, event);
    }
    v.given_d1 = v.given_distinct;
    v.given_d0 = conditional(q2, p2 + q2);
    v.unconditional = Rational(1) - p2;
    v.modified_unconditional = Rational(2) * p * q;
    if (theta + Rational(1) > Rational(0)) v.modified_unconditional += p2;
    if (theta - Rational(1) <= Rational(0)) v.modified_unconditional += q2;
    return v;
}

Example4Values example4_enumerate(const Rational& eps, const Rational& theta) {
    const Rational p = Rational(1, 2) + theta * eps;
    const Rational q = Rational(1, 2) - theta * eps;
    const Rational lo = theta - Rational(1), hi = theta + Rational(1);
    const bool eps_zero = eps.is_zero();

    Rational am_lo, am_hi, ap_lo, ap_hi; // A_{theta-1}, A_{theta+1} endpoints
    if (!eps_zero) {
        const Rational half_range = Rational(1) / (Rational(2) * eps);
        am_lo = -half_range - Rational(1);
        am_hi = half_range - Rational(1);
        ap_lo = -half_range + Rational(1);
        ap_hi = half_range + Rational(1);
    }
    auto in_minus_set = [&](const Rational& x) { return eps_zero || (am_lo <= x && x <= am_hi); };
    auto in_plus_set = [&](const Rational& x) { return eps_zero || (ap_lo <= x && x <= ap_hi); };

    struct Acc {
        Rational event, hit;
    };
    Acc distinct, only_minus, only_plus, both, tie;
    Rational uncond, modified;

    const Rational vals[2] = {hi, lo};
    const Rational probs[2] = {p, q};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Rational prob = probs[i] * probs[j];
            if (prob.is_zero()) continue;
            const Rational& x1 = vals[i];
            const Rational& x2 = vals[j];
            const Rational minimum = x1 < x2 ? x1 : x2;
            const bool is_tie = (i == j);
            const bool t_hits = (minimum + Rational(1) == theta);

            if (t_hits) uncond += prob;
            // modified estimator: X_(1) - 1 on positive ties
            const Rational t_mod =
                (is_tie && minimum > Rational(0)) ? minimum - Rational(1) : minimum + Rational(1);
            if (t_mod == theta) modified += prob;

            auto bump = [&](Acc& acc) {
                acc.event += prob;
                if (t_hits) acc.hit += prob;
            };
            if (!is_tie) {
                bump(distinct);
            } else {
                bump(tie);
                const bool m = in_minus_set(minimum), pl = in_plus_set(minimum);
                if (m && !pl) bump(only_minus);
                if (pl && !m) bump(only_plus);
                if (m && pl) bump(both);
            }
        }
    }

    Example4Values v;
    v.given_distinct = conditional(distinct.hit, distinct.event);
    v.tie_only_minus = conditional(only_minus.hit, only_minus.event);
    v.tie_only_plus = conditional(only_plus.hit, only_plus.event);
    v.tie_intersection = conditional(both.hit, both.event);
    v.given_d1 = v.given_distinct;
    v.given_d0 = conditional(tie.hit, tie.event);
    v.unconditional = uncond;
    v.modified_unconditional = modified;
    return v;
}

} // namespace

Example4Analysis example4_analysis(const TwoPointModel& model) {
    const Rational& eps = model.epsilon;
    const Rational& theta = model.theta;
    if (eps.sign() < 0 || eps > Rational(1))
        fail(Errc::invalid_model, "epsilon " + eps.str() + " not in [0,1]");
    const Rational tilt = theta * eps;
    if (tilt.abs() > Rational(1, 2))
        fail(Errc::invalid_model, "theta " + theta.str() + " outside [-1/(2eps), 1/(2eps)]");

    Example4Analysis analysis;
    analysis.closed_form = example4_closed_form(eps, theta);
    analysis.enumerated = example4_enumerate(eps, theta);
    analysis.oracle_agrees = analysis.closed_form == analysis.enumerated;
    analysis.d_ancillary = eps.is_zero();
    analysis.a_sets_disjoint = eps > Rational(1, 2);
    return analysis;
}

namespace {

void check_instrument(const InstrumentSpec& inst) {
    if (!(inst.sigma > 0)) fail(Errc::invalid_model, "instrument sigma must be positive");
    if (!(inst.mu1 > inst.mu0)) fail(Errc::invalid_model, "instrument needs mu1 > mu0");
    if (inst.n < 1) fail(Errc::invalid_model, "instrument needs n >= 1");
}

double detectability(const InstrumentSpec& inst) {
    return (inst.mu1 - inst.mu0) * std::sqrt(static_cast<double>(inst.n)) / inst.sigma;
}

void check_pair(const InstrumentSpec& a, const InstrumentSpec& b) {
    check_instrument(a);
    check_instrument(b);
    if (a.mu0 != b.mu0 || a.mu1 != b.mu1)
        fail(Errc::invalid_model, "instruments must test the same pair of means");
}

} // namespace

AllocationResult equal_level_test(const InstrumentSpec& inst1, const InstrumentSpec& inst2,
                                  double alpha) {
    check_pair(inst1, inst2);
    if (!(alpha > 0.0 && alpha < 1.0)) fail(Errc::bad_alpha, "alpha must be in (0,1)");

    const double z = normal_quantile(1.0 - alpha);
    AllocationResult r;
    r.alpha1 = r.alpha2 = alpha;
    r.power1 = normal_cdf(detectability(inst1) - z);
    r.power2 = normal_cdf(detectability(inst2) - z);
    r.avg_alpha = alpha;
    r.avg_power = 0.5 * (r.power1 + r.power2);
    return r;
}

AllocationResult optimal_mixture_test(const InstrumentSpec& inst1, const InstrumentSpec& inst2,
                                      double overall_alpha) {
    check_pair(inst1, inst2);
    if (!(overall_alpha > 0.0 && overall_alpha < 1.0))
        fail(Errc::bad_alpha, "alpha must be in (0,1)");

    const double d1 = detectability(inst1);
    const double d2 = detectability(inst2);

    // Rejection region within component j: standardized mean above
    // z_j = lambda/delta_j + delta_j/2, the likelihood-ratio cut at exp(lambda).
    // The average size is strictly decreasing in lambda.
    auto size_at = [&](double lambda) {
        const double z1 = lambda / d1 + 0.5 * d1;
        const double z2 = lambda / d2 + 0.5 * d2;
        return 0.5 * ((1.0 - normal_cdf(z1)) + (1.0 - normal_cdf(z2)));
    };

    double lo = -1.0, hi = 1.0;
    for (int i = 0; i < 200 && size_at(lo) < overall_alpha; ++i) lo *= 2.0;
    for (int i = 0; i < 200 && size_at(hi) > overall_alpha; ++i) hi *= 2.0;
    if (size_at(lo) < overall_alpha || size_at(hi) > overall_alpha)
        fail(Errc::no_convergence, "could not bracket the likelihood-ratio cutoff");

    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (size_at(mid) >= overall_alpha)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15 * (1.0 + std::fabs(lo))) break;
    }
    const double lambda = 0.5 * (lo + hi);
    if (std::fabs(size_at(lambda) - overall_alpha) > 1e-9)
        fail(Errc::no_convergence, "size constraint not met to 1e-9");

    AllocationResult r;
    const double z1 = lambda / d1 + 0.5 * d1;
    const double z2 = lambda / d2 + 0.5 * d2;
    r.alpha1 = 1.0 - normal_cdf(z1);
    r.alpha2 = 1.0 - normal_cdf(z2);
    r.power1 = normal_cdf(d1 - z1);
    r.power2 = normal_cdf(d2 - z2);
    r.avg_alpha = 0.5 * (r.alpha1 + r.alpha2);
    r.avg_power = 0.5 * (r.power1 + r.power2);
    r.lr_cutoff = std::exp(lambda);
    return r;
}

ProductionLineReference production_line_reference() {
    return {};
}

} // namespace birnbaum
