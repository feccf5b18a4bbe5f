#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "maxdisc/core.hpp"

namespace maxdisc {

// Dual of a point (px, py): the line y = px * x - py. Incidence and
// above/below order are preserved both ways.
struct DualLine {
    double slope = 0.0;
    double offset = 0.0;  // y(x) = slope * x - offset
    int src = -1;         // index into the originating point set

    double eval(double x) const { return slope * x - offset; }
};

DualLine dualize(const Point2& p, int src = -1);

// Arrangement of the (tilted) dual lines of a cover sample N, annotated with
// the dual lines of the red/blue measure samples. Per line, vertices are kept
// in x order; each edge between consecutive vertices records how many sample
// duals cross it, and signed crossing events drive the sweep counters.
struct Arrangement {
    struct Event {
        double x = 0.0;
        int delta = 0;  // +1: sample dual rises above this line to the right
        bool red = false;
    };
    struct PerLine {
        std::vector<double> vx;   // vertex x positions, ascending
        std::vector<double> vy;
        std::vector<int> vother;  // crossing line index per vertex
        std::vector<int> edge_red, edge_blue;  // size vx.size()+1
        std::vector<Event> events;             // ascending x
        // Closed/strict "at or above" counts at the far-left reference x0.
        double x0 = 0.0;
        int start_ge_red = 0, start_gt_red = 0;
        int start_ge_blue = 0, start_gt_blue = 0;
    };

    std::vector<DualLine> lines;
    std::vector<PerLine> per_line;
    std::size_t s_red = 0, s_blue = 0;
    double y_min = 0.0, y_max = 0.0;  // over N and samples, for trivial ranges
};

// Requires |N| >= 2. Duplicate points and equal dual slopes are separated by
// a deterministic rank-based tilt; sample duals coinciding with a tilted line
// inherit its tilt, so exact duplicates stay coincident.
Arrangement build_annotated_arrangement(const std::vector<Point2>& n_pts,
                                        const std::vector<Point2>& s_red,
                                        const std::vector<Point2>& s_blue);

struct SweepBest {
    Halfplane halfplane;
    double mu_red = 0.0, mu_blue = 0.0;
    double value = 0.0;
};

// Walks every vertex of the arrangement maintaining closed below-counts and
// evaluates both orientations of each vertex line, plus the empty and full
// halfplanes.
SweepBest sweep_max_halfplane(const Arrangement& arr, const DiscrepancyFn& f);

// Vertex-count probe used by tests: closed (red, blue) below-counts at every
// vertex of line `li`, in vx order.
std::vector<std::pair<int, int>> sweep_vertex_counts(const Arrangement& arr, int li);

// Cover sample + dual sweep + median-of-repetitions amplification.
ScanResult max_halfplane(const LabeledPoints& pts, double eps, double delta,
                         const DiscrepancyFn& f, std::uint64_t seed);

// Disk search by enumerating bases of up to three cover points (circumdisk,
// diametral disk, degenerate point disk), scoring each disk and its
// complement against the measure samples.
ScanResult max_disk(const LabeledPoints& pts, double eps, double delta, const DiscrepancyFn& f,
                    std::uint64_t seed);

int amplification_rounds(double delta);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace maxdisc
