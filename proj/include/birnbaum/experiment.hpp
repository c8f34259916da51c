#pragma once

#include "birnbaum/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace birnbaum {

/// A finite statistical experiment: ordered parameter labels, ordered outcome
/// labels, and one exact pmf row per parameter. Immutable after validation.
struct Experiment {
    std::string id;
    std::vector<std::string> params;
    std::vector<std::string> outcomes;
    std::vector<std::vector<Rational>> pmf; // [param][outcome]

    std::optional<std::size_t> outcome_index(std::string_view label) const;
    std::optional<std::size_t> param_index(std::string_view label) const;
    const Rational& prob(std::size_t param, std::size_t outcome) const {
        return pmf[param][outcome];
    }

    /// Same parameters (ordered), same outcome set, same probabilities per
    /// (parameter, outcome label). Outcome order and id are ignored.
    bool same_distribution(const Experiment& other) const;

    /// Field-by-field equality including id and label order.
    friend bool operator==(const Experiment&, const Experiment&) = default;
};

using ExperimentPtr = std::shared_ptr<const Experiment>;

/// Checks all experiment invariants: row sums exactly 1, no negative entries,
/// unique labels, rectangular pmf, no outcome dead under every parameter.
Experiment validate_experiment(std::string id,
                               std::vector<std::string> params,
                               std::vector<std::string> outcomes,
                               std::vector<std::vector<Rational>> pmf);

ExperimentPtr validate_experiment_ptr(std::string id,
                                      std::vector<std::string> params,
                                      std::vector<std::string> outcomes,
                                      std::vector<std::vector<Rational>> pmf);

/// An experiment together with one observed outcome.
struct InferenceBase {
    ExperimentPtr experiment;
    std::string outcome;

    std::size_t outcome_idx() const;
    friend bool operator==(const InferenceBase& a, const InferenceBase& b) {
        return a.experiment->id == b.experiment->id && a.outcome == b.outcome;
    }
};

/// Validates that the outcome exists and has positive probability under at
/// least one parameter (guaranteed for validated experiments).
InferenceBase make_base(ExperimentPtr experiment, std::string outcome);

struct LikelihoodVector {
    std::vector<std::string> param_labels;
    std::vector<Rational> entries;

    friend bool operator==(const LikelihoodVector&, const LikelihoodVector&) = default;
};

LikelihoodVector likelihood_vector(const InferenceBase& base);

/// Returns c > 0 with p_a(x_a) = c * p_b(x_b) for every parameter, if any.
/// Zero entries must match positionally. Throws PARAM_MISMATCH when the
/// ordered parameter lists differ.
std::optional<Rational> proportionality_constant(const InferenceBase& a, const InferenceBase& b);

/// Tagged outcome label "(j,x)" for component j in {1,2}.
std::string tagged_outcome(int component, std::string_view outcome);

/// Inverse of tagged_outcome; nullopt when the label does not have the shape.
std::optional<std::pair<int, std::string_view>> parse_tagged_outcome(std::string_view label);

/// A two-component mixture: base experiment over tagged outcomes plus the
/// component experiments and the first component's weight.
struct MixtureExperiment {
    ExperimentPtr base;
    ExperimentPtr first;
    ExperimentPtr second;
    Rational weight_first;
};

/// Builds the mixture p((j,x)) = w_j * p_j(x). Components must share the
/// ordered parameter list; 0 < w1 < 1. Default id "mix(id1,id2)".
MixtureExperiment make_mixture(ExperimentPtr e1, ExperimentPtr e2,
                               const Rational& w1 = Rational(1, 2),
                               std::string id = "");

} // namespace birnbaum
