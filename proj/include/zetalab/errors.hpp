#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

/// Error identities raised by library operations. Each value names the
/// violated precondition or the resource limit that was hit, so callers
/// (and the CLI exit-code mapping) can dispatch without string matching.
enum class errc {
    pole_at_one,                  // zeta-type evaluation requested at s = 1
    pole_at_zero_or_one,          // completed-zeta evaluation at s = 0 or s = 1
    pole_at_nonpositive_integer,  // gamma evaluation at 0, -1, -2, ...
    accuracy_exceeded,            // term budget exhausted before tolerance
    scan_step_too_coarse,         // two sign changes inside one refined cell
    branch_at_one,                // real log-integral at x = 1
    depth_cap_exceeded,           // lattice depth too small for requested x
    grid_too_short,               // epsilon grid spans fewer than 4 decades
    non_monotone_target,          // oscillation amplitude breaks monotonicity
    abscissa_violation,           // Dirichlet series evaluated below abscissa
    pole_hit,                     // closed-form evaluation lands on a pole
    pole_at_one_in_window,        // tube/density sum with a pole at s = 1
    unsupported,                  // operation undefined for this string kind
    grid_mismatch,                // operands sampled on different grids
    support_touches_boundary,     // declared support inside the guard band
    support_unbounded,            // support reaches the grid edge; shift sums diverge
    shift_out_of_range,           // shifted support leaves the grid
    pole_on_segment,              // symbol has a pole on the sampled segment
    pole_in_range,                // spectrum segment crosses s = 1
    zero_table_too_small,         // explicit formula needs more zeros
    range_exceeded,               // argument outside the supported desk scale
    budget_exceeded,              // operator sum needs too many shifted copies
    io_error,                     // cache or output file unusable
    invalid_argument,             // malformed config or CLI input
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
    throw Error(code, std::string(errc_name(code)) + ": " + what);
}

}  // namespace zetalab
