#pragma once

#include <stdexcept>
#include <string>

namespace qcd {

// Every library failure derives from qcd::error so callers can map it to a
// report row without catching unrelated exceptions.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct truncation_too_short : error { using error::error; };
struct zero_argument : error { using error::error; };
struct degenerate_spacing : error { using error::error; };
struct budget_exceeded : error { using error::error; };
struct near_degenerate_spectrum : error { using error::error; };
struct singular_interpolation : error { using error::error; };
struct pole_evaluation : error { using error::error; };
struct root_collision : error { using error::error; };
struct root_tracking_lost : error { using error::error; };
struct no_convergence : error { using error::error; };
struct jacobian_singular : error { using error::error; };
struct parse_error : error { using error::error; };

}  // namespace qcd
