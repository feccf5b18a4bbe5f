#pragma once

#include <array>
#include <functional>
#include <vector>

#include "maxdisc/core.hpp"
#include "maxdisc/grid.hpp"

namespace maxdisc {

// Upper bound on the gradient norm of the Kulldorff statistic over the
// clamped domain [xi, 1-xi]^2.
double lipschitz_bound(double xi);

struct SdfParams {
    double eps = 0.05;
    double tau = 0.0;           // 0: derive from xi via lipschitz_bound
    double xi = 1e-3;
    std::array<bool, 4> quadrants{true, true, true, true};
    double min_angle = 1e-6;    // stop splitting below this angle gap
    double triangle_share = 0.5;  // fraction of eps spent on the triangle bound
};

// One probed direction: the angle, the (mu_red, mu_blue) point achieved by
// maximizing its linear functional, and the achieving rectangle.
struct HullProbe {
    double theta = 0.0;
    double mu_red = 0.0, mu_blue = 0.0;
    GridRect rect;
};

struct SdfStats {
    std::array<int, 4> calls_per_quadrant{0, 0, 0, 0};
    std::vector<HullProbe> probes;
    int best_probe = -1;  // index into probes of the winning probe
    GridRect best_rect;
};

// Result of one linear maximization: the rectangle plus its exact masses.
struct LinearProbeOutcome {
    GridRect rect;
    double red_mass = 0.0, blue_mass = 0.0;
};

using LinearMaximizer = std::function<LinearProbeOutcome(const LinearFn&)>;

// Maximizes phi over grid rectangles with O(sqrt(tau/eps)) linear calls:
// probes the two boundary angles of each sign quadrant, then bisects the
// angle gap while the bounding triangle height exceeds the error budget.
ScanResult linearize_max(const Grid& g, const DiscrepancyFn& phi, const SdfParams& params,
                         const LinearMaximizer& maximizer, SdfStats* stats = nullptr);

// Exact inner maximizer (row-pair scan over prefix masses); used by tests and
// available to callers without a prebuilt tree.
LinearMaximizer exact_linear_maximizer(const Grid& g);

}  // namespace maxdisc
