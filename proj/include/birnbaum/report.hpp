#pragma once

#include "birnbaum/experiment.hpp"
#include "birnbaum/rational.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace birnbaum {

/// Fixed-point double rendering ("%.6f") so report text is reproducible.
std::string format_double(double value, int decimals = 6);

/// The two-ancillaries experiment (the 4-outcome unconditional model) and its
/// named U/V statistics and conditionals, used by reports and tests.
struct TwoAncillariesFixture {
    ExperimentPtr unconditional;  // E
    ExperimentPtr conditional_u1; // E|U=1
    ExperimentPtr conditional_v1; // E|V=1
    std::vector<std::string> u_block1, u_block2, v_block1, v_block2;
};
TwoAncillariesFixture two_ancillaries_fixture();

/// P(mle = param j | model) for each true parameter i, as rows [i][j].
std::vector<std::vector<Rational>> mle_accuracy(const Experiment& e);

/// Consolidated reproduction report over every built-in example; output is
/// deterministic byte-for-byte.
struct PaperReport {
    std::string text;
    nlohmann::json json;
};
PaperReport paper_report();

} // namespace birnbaum
