#pragma once

#include "tstk/config.hpp"
#include "tstk/report.hpp"

namespace tstk {

// Runs the selected invariant suites for m in {1, 2} (and 3 when c.m3) and
// returns the populated report. Deterministic for a fixed config.
Report run_verify(const RunConfig& c);

}  // namespace tstk
