#include "birnbaum/errors.hpp"

namespace birnbaum {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::row_sum: return "ROW_SUM";
        case Errc::negative_prob: return "NEGATIVE_PROB";
        case Errc::duplicate_label: return "DUPLICATE_LABEL";
        case Errc::dead_outcome: return "DEAD_OUTCOME";
        case Errc::mismatched_row_length: return "MISMATCHED_ROW_LENGTH";
        case Errc::param_mismatch: return "PARAM_MISMATCH";
        case Errc::bad_weight: return "BAD_WEIGHT";
        case Errc::not_a_partition: return "NOT_A_PARTITION";
        case Errc::too_large: return "TOO_LARGE";
        case Errc::not_ancillary: return "NOT_ANCILLARY";
        case Errc::empty_block: return "EMPTY_BLOCK";
        case Errc::not_l_related: return "NOT_L_RELATED";
        case Errc::x_out_of_range: return "X_OUT_OF_RANGE";
        case Errc::inconsistent_data: return "INCONSISTENT_DATA";
        case Errc::condition_impossible: return "CONDITION_IMPOSSIBLE";
        case Errc::invalid_model: return "INVALID_MODEL";
        case Errc::bad_alpha: return "BAD_ALPHA";
        case Errc::no_convergence: return "NO_CONVERGENCE";
        case Errc::parse_error: return "PARSE_ERROR";
        case Errc::validation_error: return "VALIDATION_ERROR";
        case Errc::unresolved_reference: return "UNRESOLVED_REFERENCE";
    }
    return "UNKNOWN";
}

} // namespace birnbaum
