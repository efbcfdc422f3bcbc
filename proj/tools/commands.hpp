#pragma once

#include <string>

#include "phasecade/config.hpp"

namespace phasecade::cli {

// Single solve at the configured parameters and first seed; writes
// phases.csv, drive_spectra.csv, constellation.csv, trace.csv, summary.json
// and run_meta.json into cfg.out_dir. Returns 0, or 2 on solver divergence.
int cmd_solve(const RunConfig& cfg);

// One figure sweep; writes sweep_<axis>.csv (plus _upper/_lower when more
// than one seed) and sweep_<axis>_meta.json into cfg.out_dir. Returns 0, or
// 3 when any grid point was flagged.
int cmd_sweep(const RunConfig& cfg, SweepAxis axis);

// UTC wall-clock timestamp, ISO 8601. Lives only in metadata sidecars so the
// data CSVs stay byte-identical between identical runs.
std::string utc_timestamp();

}  // namespace phasecade::cli
