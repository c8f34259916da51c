#include "birnbaum/experiment.hpp"

#include "birnbaum/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace birnbaum {

std::optional<std::size_t> Experiment::outcome_index(std::string_view label) const {
    for (std::size_t i = 0; i < outcomes.size(); ++i)
        if (outcomes[i] == label) return i;
    return std::nullopt;
}

std::optional<std::size_t> Experiment::param_index(std::string_view label) const {
    for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i] == label) return i;
    return std::nullopt;
}

bool Experiment::same_distribution(const Experiment& other) const {
    if (params != other.params) return false;
    if (outcomes.size() != other.outcomes.size()) return false;
    for (std::size_t o = 0; o < outcomes.size(); ++o) {
        auto j = other.outcome_index(outcomes[o]);
        if (!j) return false;
        for (std::size_t p = 0; p < params.size(); ++p)
            if (pmf[p][o] != other.pmf[p][*j]) return false;
    }
    return true;
}

Experiment validate_experiment(std::string id,
                               std::vector<std::string> params,
                               std::vector<std::string> outcomes,
                               std::vector<std::vector<Rational>> pmf) {
    if (params.empty()) fail(Errc::validation_error, "experiment '" + id + "' has no parameters");
    if (outcomes.empty()) fail(Errc::validation_error, "experiment '" + id + "' has no outcomes");

    std::set<std::string_view> seen;
    for (const auto& p : params)
        if (!seen.insert(p).second)
            fail(Errc::duplicate_label, "duplicate parameter label '" + p + "' in '" + id + "'");
    seen.clear();
    for (const auto& o : outcomes)
        if (!seen.insert(o).second)
            fail(Errc::duplicate_label, "duplicate outcome label '" + o + "' in '" + id + "'");

    if (pmf.size() != params.size())
        fail(Errc::mismatched_row_length,
             "experiment '" + id + "' has " + std::to_string(pmf.size()) + " rows for " +
                 std::to_string(params.size()) + " parameters");
    for (std::size_t p = 0; p < pmf.size(); ++p) {
        if (pmf[p].size() != outcomes.size())
            fail(Errc::mismatched_row_length,
                 "row for parameter '" + params[p] + "' in '" + id + "' has " +
                     std::to_string(pmf[p].size()) + " entries, expected " +
                     std::to_string(outcomes.size()));
        Rational sum;
        for (const auto& q : pmf[p]) {
            if (q.sign() < 0)
                fail(Errc::negative_prob,
                     "negative probability " + q.str() + " for parameter '" + params[p] +
                         "' in '" + id + "'");
            sum += q;
        }
        if (!sum.is_one())
            fail(Errc::row_sum, "row for parameter '" + params[p] + "' in '" + id +
                                    "' sums to " + sum.str() + ", expected 1");
    }
    for (std::size_t o = 0; o < outcomes.size(); ++o) {
        bool alive = false;
        for (std::size_t p = 0; p < params.size() && !alive; ++p)
            alive = !pmf[p][o].is_zero();
        if (!alive)
            fail(Errc::dead_outcome, "outcome '" + outcomes[o] + "' in '" + id +
                                         "' has probability 0 under every parameter");
    }

    return Experiment{std::move(id), std::move(params), std::move(outcomes), std::move(pmf)};
}

ExperimentPtr validate_experiment_ptr(std::string id,
                                      std::vector<std::string> params,
                                      std::vector<std::string> outcomes,
                                      std::vector<std::vector<Rational>> pmf) {
    return std::make_shared<const Experiment>(validate_experiment(
        std::move(id), std::move(params), std::move(outcomes), std::move(pmf)));
}

std::size_t InferenceBase::outcome_idx() const {
    auto i = experiment->outcome_index(outcome);
    if (!i) fail(Errc::validation_error,
                 "outcome '" + outcome + "' not in experiment '" + experiment->id + "'");
    return *i;
}

InferenceBase make_base(ExperimentPtr experiment, std::string outcome) {
    if (!experiment) fail(Errc::validation_error, "inference base without experiment");
    auto idx = experiment->outcome_index(outcome);
    if (!idx)
        fail(Errc::unresolved_reference,
             "outcome '" + outcome + "' not in experiment '" + experiment->id + "'");
    return InferenceBase{std::move(experiment), std::move(outcome)};
}

LikelihoodVector likelihood_vector(const InferenceBase& base) {
    const auto& e = *base.experiment;
    std::size_t x = base.outcome_idx();
    LikelihoodVector v;
    v.param_labels = e.params;
    v.entries.reserve(e.params.size());
    for (std::size_t p = 0; p < e.params.size(); ++p)
        v.entries.push_back(e.pmf[p][x]);
    return v;
}

std::optional<Rational> proportionality_constant(const InferenceBase& a, const InferenceBase& b) {
    if (a.experiment->params != b.experiment->params)
        fail(Errc::param_mismatch, "experiments '" + a.experiment->id + "' and '" +
                                       b.experiment->id + "' have different parameter lists");
    LikelihoodVector va = likelihood_vector(a);
    LikelihoodVector vb = likelihood_vector(b);
    std::optional<Rational> c;
    for (std::size_t p = 0; p < va.entries.size(); ++p) {
        const bool za = va.entries[p].is_zero();
        const bool zb = vb.entries[p].is_zero();
        if (za != zb) return std::nullopt;
        if (za) continue;
        Rational ratio = va.entries[p] / vb.entries[p];
        if (!c)
            c = ratio;
        else if (*c != ratio)
            return std::nullopt;
    }
    return c; // nullopt impossible: likelihood vectors are nonzero
}

std::string tagged_outcome(int component, std::string_view outcome) {
    return "(" + std::to_string(component) + "," + std::string(outcome) + ")";
}

std::optional<std::pair<int, std::string_view>> parse_tagged_outcome(std::string_view label) {
    if (label.size() < 5 || label.front() != '(' || label.back() != ')') return std::nullopt;
    if (label[2] != ',') return std::nullopt;
    int j = label[1] - '0';
    if (j != 1 && j != 2) return std::nullopt;
    return std::make_pair(j, label.substr(3, label.size() - 4));
}

MixtureExperiment make_mixture(ExperimentPtr e1, ExperimentPtr e2, const Rational& w1,
                               std::string id) {
    if (!e1 || !e2) fail(Errc::validation_error, "mixture of null experiments");
    if (e1->params != e2->params)
        fail(Errc::param_mismatch, "mixture components '" + e1->id + "' and '" + e2->id +
                                       "' have different parameter lists");
    if (w1.sign() <= 0 || w1 >= Rational(1))
        fail(Errc::bad_weight, "mixture weight " + w1.str() + " not in (0,1)");
    if (id.empty()) id = "mix(" + e1->id + "," + e2->id + ")";

    const Rational w2 = Rational(1) - w1;
    std::vector<std::string> outcomes;
    outcomes.reserve(e1->outcomes.size() + e2->outcomes.size());
    for (const auto& x : e1->outcomes) outcomes.push_back(tagged_outcome(1, x));
    for (const auto& x : e2->outcomes) outcomes.push_back(tagged_outcome(2, x));

    std::vector<std::vector<Rational>> pmf(e1->params.size());
    for (std::size_t p = 0; p < e1->params.size(); ++p) {
        auto& row = pmf[p];
        row.reserve(outcomes.size());
        for (const auto& q : e1->pmf[p]) row.push_back(w1 * q);
        for (const auto& q : e2->pmf[p]) row.push_back(w2 * q);
    }

    MixtureExperiment mix;
    mix.base = validate_experiment_ptr(std::move(id), e1->params, std::move(outcomes),
                                       std::move(pmf));
    mix.first = std::move(e1);
    mix.second = std::move(e2);
    mix.weight_first = w1;
    return mix;
}

} // namespace birnbaum
