#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "maxdisc/core.hpp"
#include "maxdisc/grid.hpp"

namespace maxdisc {

// Exact maximizer of a linear phi over all grid rectangles, O(r^3): for each
// row pair, columns collapse to per-column masses and a maximum-subarray scan
// runs over them. Nonempty-rectangle convention (all-nonpositive weights
// yield the best single column).
std::pair<GridRect, double> exact_grid_max_kadane(const Grid& g, const DiscrepancyFn& f);

struct ExactRectOptions {
    std::size_t cap = 2000;       // refuse larger inputs
    std::size_t kadane_max = 1000;  // linear phi: row-pair scan up to here,
                                    // divide-and-conquer lattice engine above
};

// Exact maximum over all rectangles with corners on the point-coordinate
// lattice. Linear phi runs in roughly quadratic to cubic time; other phi
// enumerate all O(m^4) lattice rectangles against prefix counts.
ScanResult exact_rect_max(const LabeledPoints& pts, const DiscrepancyFn& f,
                          const ExactRectOptions& opts = {});

// Exact maximum over halfplanes bounded by lines through point pairs (both
// orientations) plus the empty and full halfplanes, O(m^3).
ScanResult exact_halfplane_max(const LabeledPoints& pts, const DiscrepancyFn& f,
                               std::size_t cap = 2000);

// Exact maximum over circumdisks of triples, diametral disks of pairs,
// single-point disks, and empty/full, O(m^4).
ScanResult exact_disk_max(const LabeledPoints& pts, const DiscrepancyFn& f,
                          std::size_t cap = 2000);

struct NetscanOptions {
    std::optional<std::size_t> n;  // override net size
    std::optional<std::size_t> s;  // override per-color sample size
    int net_vc_dim = 8;            // symmetric-difference range space sizing
};

// Two-sample baseline: enumerate all rectangles cornered at net-point
// coordinates and score each against the per-color samples by direct
// counting.
ScanResult netscan_baseline(const LabeledPoints& pts, double eps, const DiscrepancyFn& f,
                            std::uint64_t seed, const NetscanOptions& opts = {});

}  // namespace maxdisc
