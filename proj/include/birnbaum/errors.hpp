#pragma once

#include <stdexcept>
#include <string>

namespace birnbaum {

enum class Errc {
    row_sum,
    negative_prob,
    duplicate_label,
    dead_outcome,
    mismatched_row_length,
    param_mismatch,
    bad_weight,
    not_a_partition,
    too_large,
    not_ancillary,
    empty_block,
    not_l_related,
    x_out_of_range,
    inconsistent_data,
    condition_impossible,
    invalid_model,
    bad_alpha,
    no_convergence,
    parse_error,
    validation_error,
    unresolved_reference,
};

const char* errc_name(Errc code);

/// Domain error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace birnbaum
