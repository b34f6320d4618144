// Deterministic line-oriented serialization of run traces: one JSON object
// per line (header, then one record per executed step, then a summary), so
// long runs stream and identical runs produce byte-identical files.
#pragma once

#include <ostream>

#include "snpsim/engine.hpp"

namespace snpsim {

void write_trace(std::ostream& os, const snp_system& sys, const run_trace& trace);

}  // namespace snpsim
