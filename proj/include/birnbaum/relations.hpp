#pragma once

#include "birnbaum/experiment.hpp"
#include "birnbaum/statistics.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace birnbaum {

enum class RelationKind { S, C, A, L };

const char* relation_name(RelationKind kind);
std::optional<RelationKind> parse_relation(std::string_view name);

/// Evidence for one positive relation check. Which fields are set depends on
/// the kind: L carries the constant; C/A-via-mixture carry the component index
/// and weight; S/A-via-conditioning carry the block.
struct RelationWitness {
    std::string text;
    std::optional<Rational> constant;       // L: c with p_a = c * p_b; C/A: weight
    std::vector<std::string> block;          // S: sufficient block; A: conditioning block
    std::optional<int> component;            // C, A via mixture indicator: j
    std::optional<std::string> statistic_id; // A: witnessing ancillary statistic
};

struct RelationResult {
    bool related = false;
    RelationWitness witness;
};

/// Evans' set relations on pairs of inference bases.
///   S: same experiment, outcomes in one block of the minimal sufficient partition.
///   C: one side is a 50-50 mixture observed at (j,x); the other is component j at x.
///   A: one side is the other's conditional on an ancillary block containing the
///      outcome, or the mixture-indicator case with any weight.
///   L: likelihood vectors proportional.
/// Throws PARAM_MISMATCH when parameter lists differ.
RelationResult related(RelationKind kind, const InferenceBase& a, const InferenceBase& b);

/// A finite set of inference bases over a registry of experiments.
/// No duplicate (experiment id, outcome) pairs; ids name distinct structures.
class Universe {
public:
    std::size_t add(InferenceBase base);
    std::size_t size() const { return bases_.size(); }
    const InferenceBase& base(std::size_t i) const { return bases_.at(i); }
    const std::vector<InferenceBase>& bases() const { return bases_; }
    ExperimentPtr experiment(const std::string& id) const;
    bool contains(const std::string& experiment_id, const std::string& outcome) const;

private:
    std::vector<InferenceBase> bases_;
    std::map<std::string, ExperimentPtr> experiments_;
};

struct ClosureEdge {
    std::size_t a, b;
    RelationKind kind;
    RelationWitness witness;
};

struct ClosureResult {
    std::set<RelationKind> kinds_used;
    std::vector<ClosureEdge> edges;
    /// Finest partition joining every edge's endpoints; classes ordered and
    /// labeled by their lowest member index, members ascending.
    std::vector<std::vector<std::size_t>> classes;

    std::size_t class_of(std::size_t base_index) const;
};

/// Checks every pair under every requested kind and unions the endpoints.
/// Pairs whose experiments have different parameter lists are unrelated.
ClosureResult closure(const Universe& u, const std::set<RelationKind>& kinds);

struct ChainStep {
    InferenceBase from, to;
    RelationKind kind;
    RelationWitness witness;
};

/// A machine-checkable sequence of principle applications. Each step has been
/// re-verified by related(); `verified` records that this succeeded.
struct WitnessChain {
    std::vector<ChainStep> steps;
    std::optional<MixtureExperiment> mixture; // the constructed 50-50 mixture
    Rational constant;                        // c with p_a = c * p_b
    std::optional<Rational> block_conditional; // P(tagged a-outcome | sufficient block)
    std::vector<std::string> sufficient_block;
    bool verified = false;
};

/// Birnbaum's construction: for L-related bases, builds the 50-50 mixture and
/// the chain a -C- (mix,(1,x_a)) -S- (mix,(2,x_b)) -C- b. Identical bases give
/// an empty chain. Throws NOT_L_RELATED otherwise.
WitnessChain birnbaum_chain(const InferenceBase& a, const InferenceBase& b);

struct VerifyBirnbaumReport {
    struct Pair {
        std::size_t a, b;
        Rational constant;
        WitnessChain chain;
    };
    std::size_t original_size = 0;
    std::size_t augmented_size = 0;
    std::vector<Pair> l_pairs;
    std::vector<std::vector<std::size_t>> l_classes;           // closure({L}) on originals
    std::vector<std::vector<std::size_t>> sc_classes_restricted; // closure({S,C}) on augmented, restricted
    bool chains_verified = false; // every constructed chain re-verified
    bool complete = false;        // restricted {S,C} classes == L classes
    bool sound = false;           // restricted {S,C} classes refine L classes
};

/// Augments the universe with the mixtures Birnbaum's chain needs for every
/// L-related pair (repeated `depth` times), then compares the {S,C}-closure
/// restricted to the original bases against the L-closure.
VerifyBirnbaumReport verify_birnbaum(const Universe& u, int depth = 1);

} // namespace birnbaum
