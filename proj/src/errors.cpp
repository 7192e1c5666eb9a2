#include "zetalab/errors.hpp"

namespace zetalab {

const char* errc_name(errc code) {
    switch (code) {
        case errc::pole_at_one: return "PoleAtOne";
        case errc::pole_at_zero_or_one: return "PoleAtZeroOrOne";
        case errc::pole_at_nonpositive_integer: return "PoleAtNonpositiveInteger";
        case errc::accuracy_exceeded: return "AccuracyExceeded";
        case errc::scan_step_too_coarse: return "ScanStepTooCoarse";
        case errc::branch_at_one: return "BranchAtOne";
        case errc::depth_cap_exceeded: return "DepthCapExceeded";
        case errc::grid_too_short: return "GridTooShort";
        case errc::non_monotone_target: return "NonMonotoneTarget";
        case errc::abscissa_violation: return "AbscissaViolation";
        case errc::pole_hit: return "PoleHit";
        case errc::pole_at_one_in_window: return "PoleAtOneInWindow";
        case errc::unsupported: return "Unsupported";
        case errc::grid_mismatch: return "GridMismatch";
        case errc::support_touches_boundary: return "SupportTouchesBoundary";
        case errc::support_unbounded: return "SupportUnbounded";
        case errc::shift_out_of_range: return "ShiftOutOfRange";
        case errc::pole_on_segment: return "PoleOnSegment";
        case errc::pole_in_range: return "PoleInRange";
        case errc::zero_table_too_small: return "ZeroTableTooSmall";
        case errc::range_exceeded: return "RangeExceeded";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::io_error: return "IoError";
        case errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace zetalab
