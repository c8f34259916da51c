#pragma once

#include "birnbaum/experiment.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace birnbaum {

/// A statistic on a finite sample space, represented extensionally as the
/// partition it induces. Blocks hold outcome labels.
struct StatisticPartition {
    std::string id;
    std::vector<std::vector<std::string>> blocks;

    friend bool operator==(const StatisticPartition&, const StatisticPartition&) = default;
};

/// Throws NOT_A_PARTITION unless blocks are disjoint, nonempty, and cover the
/// experiment's sample space exactly.
void check_partition(const Experiment& e, const StatisticPartition& t);

/// Index of the block containing `outcome`; throws EMPTY_BLOCK if absent.
std::size_t block_containing(const StatisticPartition& t, std::string_view outcome);

struct SufficiencyCheck {
    bool sufficient = false;

    /// On success: per block, the parameter-free conditional probability of
    /// each member outcome (skipping parameters with zero block probability).
    std::vector<std::vector<std::pair<std::string, Rational>>> conditional_table;

    struct CounterExample {
        std::size_t block;
        std::string outcome;
        std::string param_a, param_b;
        Rational conditional_a, conditional_b;
    };
    std::optional<CounterExample> counterexample;
};

/// True iff within every block the conditional distribution given the block is
/// the same for all parameters with positive block probability.
SufficiencyCheck is_sufficient(const Experiment& e, const StatisticPartition& t);

struct AncillarityCheck {
    bool ancillary = false;

    /// On success: the parameter-free probability of each block.
    std::vector<Rational> block_probs;

    struct CounterExample {
        std::size_t block;
        std::string param_a, param_b;
        Rational prob_a, prob_b;
    };
    std::optional<CounterExample> counterexample;
};

/// True iff every block's probability is the same for all parameters.
AncillarityCheck is_ancillary(const Experiment& e, const StatisticPartition& t);

/// The coarsest sufficient partition: blocks are the classes of outcomes with
/// proportional likelihood vectors, ordered by first appearance.
StatisticPartition minimal_sufficient(const Experiment& e);

/// All ancillary partitions of the sample space except the trivial one-block
/// partition, in restricted-growth-string order. Throws TOO_LARGE when the
/// sample space exceeds `max_outcomes` (Bell-number growth).
std::vector<StatisticPartition> enumerate_ancillaries(const Experiment& e,
                                                      std::size_t max_outcomes = 12);

/// The conditional experiment given an ancillary block: outcomes are the block
/// members (in the parent's order) with pmf p(x)/p(block). Refuses
/// non-ancillary partitions. Default id "<exp>|<stat>=<idx>".
Experiment condition(const Experiment& e, const StatisticPartition& t, std::size_t block_index,
                     std::string result_id = "");

} // namespace birnbaum
