#pragma once

#include <iosfwd>
#include <string>

#include "maxdisc/core.hpp"

namespace maxdisc {

// CSV rows are `x,y,label` with label r or b; an optional header line is
// skipped. With jitter enabled, repeated coordinates are displaced by a tiny
// deterministic amount (k * 1e-9 * scale for the k-th duplicate) so exact
// ties cannot load a single grid row.
LabeledPoints ingest_csv(const std::string& path, bool jitter = false);
LabeledPoints ingest_csv_stream(std::istream& in, bool jitter = false);

void write_points_csv(const LabeledPoints& pts, std::ostream& out);

std::string region_to_json(const Region& region);
std::string scan_result_to_json(const ScanResult& res);

}  // namespace maxdisc
