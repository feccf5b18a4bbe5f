#include "maxdisc/sdf.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>

#include "maxdisc/baselines.hpp"

namespace maxdisc {

double lipschitz_bound(double xi) {
    if (!(xi > 0.0 && xi < 0.5)) {
        throw std::invalid_argument("lipschitz_bound: xi must lie in (0, 1/2)");
    }
    // d/dr = ln(r(1-b)/(b(1-r))), d/db = (1-r)/(1-b) - r/b; both extreme at
    // opposite corners of the clamped square.
    const double dr = 2.0 * std::log((1.0 - xi) / xi);
    const double db = (1.0 - xi) / xi - xi / (1.0 - xi);
    return std::hypot(dr, db);
}

LinearMaximizer exact_linear_maximizer(const Grid& g) {
    auto ps = std::make_shared<PrefixGrid>(prefix_sums(g));
    const Grid* grid = &g;
    return [grid, ps](const LinearFn& f) {
        const auto [rect, value] =
            exact_grid_max_kadane(*grid, DiscrepancyFn::general_linear(f.alpha, f.beta));
        (void)value;
        auto [r, b] = rect_counts(*ps, rect);
        return LinearProbeOutcome{rect, r, b};
    };
}

namespace {

struct ProbePoint {
    double r = 0.0, b = 0.0;  // normalized fractions
    GridRect rect;
};

struct Linearizer {
    const Grid& g;
    const DiscrepancyFn& phi;
    const LinearMaximizer& maximizer;
    SdfStats* stats;
    double h_stop = 0.0;
    double min_angle = 1e-6;
    std::map<double, ProbePoint> memo;

    int best_index = -1;
    double best_value = -std::numeric_limits<double>::infinity();
    ProbePoint best_point;

    ProbePoint probe(double theta, int quadrant) {
        auto it = memo.find(theta);
        if (it != memo.end()) return it->second;
        const LinearFn f{-std::cos(theta), std::sin(theta)};
        const LinearProbeOutcome out = maximizer(f);
        ProbePoint p;
        p.r = out.red_mass / g.red_n;
        p.b = out.blue_mass / g.blue_n;
        p.rect = out.rect;
        memo.emplace(theta, p);
        if (stats) {
            stats->calls_per_quadrant[quadrant] += 1;
            stats->probes.push_back({theta, p.r, p.b, p.rect});
        }
        const double v = phi_eval(phi, p.r, p.b);
        if (v > best_value) {
            best_value = v;
            best_point = p;
            best_index = stats ? static_cast<int>(stats->probes.size()) - 1 : -1;
        }
        return p;
    }

    void bisect(double th1, const ProbePoint& p1, double th2, const ProbePoint& p2,
                int quadrant) {
        if (th2 - th1 < min_angle) return;
        const double gap = std::hypot(p1.r - p2.r, p1.b - p2.b);
        const double h = (gap / 2.0) * std::tan((th2 - th1) / 2.0);
        if (h <= h_stop) return;
        const double tm = (th1 + th2) / 2.0;
        const ProbePoint pm = probe(tm, quadrant);
        bisect(th1, p1, tm, pm, quadrant);
        bisect(tm, pm, th2, p2, quadrant);
    }
};

}  // namespace

ScanResult linearize_max(const Grid& g, const DiscrepancyFn& phi, const SdfParams& params,
                         const LinearMaximizer& maximizer, SdfStats* stats) {
    if (!(params.eps > 0.0)) throw std::invalid_argument("linearize_max: eps must be positive");
    const double xi = phi.kind == PhiKind::Kulldorff ? phi.xi : params.xi;
    const double tau = params.tau > 0.0 ? params.tau : lipschitz_bound(xi);

    Linearizer lin{g, phi, maximizer, stats};
    lin.h_stop = params.eps * params.triangle_share / tau;
    lin.min_angle = params.min_angle;

    constexpr double kHalfPi = 1.5707963267948966;
    for (int q = 0; q < 4; ++q) {
        if (!params.quadrants[static_cast<std::size_t>(q)]) continue;
        const double th1 = q * kHalfPi;
        const double th2 = (q + 1) * kHalfPi;
        const ProbePoint p1 = lin.probe(th1, q);
        const ProbePoint p2 = lin.probe(th2, q);
        lin.bisect(th1, p1, th2, p2, q);
    }
    if (stats != nullptr) {
        stats->best_probe = lin.best_index;
        stats->best_rect = lin.best_point.rect;
    }

    ScanResult out;
    Rectangle clamp{-1.0, 1.0, -1.0, 1.0};
    if (g.r > 1) {
        clamp = Rectangle{g.x_cuts[1] - 1.0, g.x_cuts[g.r - 1] + 1.0, g.y_cuts[1] - 1.0,
                          g.y_cuts[g.r - 1] + 1.0};
    }
    out.region = g.cell_bounds(lin.best_point.rect, clamp);
    out.mu_red = lin.best_point.r;
    out.mu_blue = lin.best_point.b;
    out.value = phi_eval(phi, lin.best_point.r, lin.best_point.b);
    out.method = "sdf-linearize";
    return out;
}

}  // namespace maxdisc
