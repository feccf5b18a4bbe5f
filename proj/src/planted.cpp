#include "maxdisc/planted.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace maxdisc {

Shape shape_from_string(const std::string& s) {
    if (s == "rect" || s == "rectangle") return Shape::Rectangle;
    if (s == "halfplane") return Shape::Halfplane;
    if (s == "disk") return Shape::Disk;
    throw std::invalid_argument("unknown shape: " + s);
}

std::string shape_to_string(Shape s) {
    switch (s) {
        case Shape::Rectangle: return "rectangle";
        case Shape::Halfplane: return "halfplane";
        case Shape::Disk: return "disk";
    }
    return "rectangle";
}

namespace {

Region plant_region(const std::vector<Point2>& pts, const PlantedSpec& spec,
                    std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const std::size_t want = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(spec.data_fraction * spec.m)));
    switch (spec.shape) {
        case Shape::Rectangle: {
            // Random center and aspect; side lengths sized for the target
            // fraction of a uniform square.
            const double aspect = std::exp(uni(rng) * 1.2 - 0.6);
            double w = std::sqrt(spec.data_fraction) * aspect;
            double h = std::sqrt(spec.data_fraction) / aspect;
            w = std::min(w, 1.0);
            h = std::min(h, 1.0);
            const double x0 = uni(rng) * (1.0 - w);
            const double y0 = uni(rng) * (1.0 - h);
            return Rectangle{x0, x0 + w, y0, y0 + h};
        }
        case Shape::Halfplane: {
            // Direction chosen at random, offset at the fraction quantile of
            // the projections so the region holds the requested count.
            const double ang = uni(rng) * 6.283185307179586;
            const double a = std::cos(ang), b = std::sin(ang);
            std::vector<double> proj(pts.size());
            for (std::size_t i = 0; i < pts.size(); ++i) proj[i] = a * pts[i].x + b * pts[i].y;
            std::vector<double> sorted = proj;
            std::sort(sorted.begin(), sorted.end());
            const std::size_t k = std::min(want, sorted.size()) - 1;
            return Halfplane(a, b, sorted[k]);
        }
        case Shape::Disk: {
            const Point2 center{uni(rng), uni(rng)};
            std::vector<double> d2(pts.size());
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const double dx = pts[i].x - center.x;
                const double dy = pts[i].y - center.y;
                d2[i] = dx * dx + dy * dy;
            }
            std::sort(d2.begin(), d2.end());
            const std::size_t k = std::min(want, d2.size()) - 1;
            return Disk{center, std::sqrt(d2[k])};
        }
    }
    return Rectangle{};
}

}  // namespace

PlantedInstance generate_planted(const PlantedSpec& spec) {
    if (spec.m < 2) throw std::invalid_argument("generate_planted: need at least 2 points");
    if (!(spec.data_fraction > 0.0 && spec.data_fraction <= 1.0)) {
        throw std::invalid_argument("generate_planted: data_fraction must lie in (0, 1]");
    }
    for (double rate : {spec.rate_in, spec.rate_out}) {
        if (!(rate >= 0.0 && rate <= 1.0)) {
            throw std::invalid_argument("generate_planted: rates must lie in [0, 1]");
        }
    }
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<Point2> pts(spec.m);
    for (auto& p : pts) {
        p.x = uni(rng);
        p.y = uni(rng);
    }
    PlantedInstance out;
    out.region = plant_region(pts, spec, rng);

    for (const auto& p : pts) {
        const double rate = region_contains(out.region, p) ? spec.rate_in : spec.rate_out;
        if (uni(rng) < rate) {
            out.points.reds.push_back(p);
        } else {
            out.points.blues.push_back(p);
        }
    }
    // Both colors must be present; relabel one point deterministically if a
    // degenerate rate configuration left a side empty.
    if (out.points.reds.empty()) {
        out.points.reds.push_back(out.points.blues.back());
        out.points.blues.pop_back();
    }
    if (out.points.blues.empty()) {
        out.points.blues.push_back(out.points.reds.back());
        out.points.reds.pop_back();
    }
    return out;
}

}  // namespace maxdisc
