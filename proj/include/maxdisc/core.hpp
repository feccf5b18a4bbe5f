#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace maxdisc {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// Red/blue labeled planar points. Multiset semantics: duplicates allowed,
// and a point may appear under both colors.
struct LabeledPoints {
    std::vector<Point2> reds;
    std::vector<Point2> blues;

    std::size_t size() const { return reds.size() + blues.size(); }
    void validate() const;
};

// Closed axis-aligned rectangle. Points on the boundary count as inside.
struct Rectangle {
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;

    bool contains(const Point2& p) const {
        return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
    }
};

// Closed halfplane {p : a*x + b*y <= c} with (a, b) unit length.
struct Halfplane {
    double a = 0.0, b = 1.0, c = 0.0;

    Halfplane() = default;
    Halfplane(double a_, double b_, double c_);

    bool contains(const Point2& p) const { return a * p.x + b * p.y <= c; }
};

// Closed disk. Containment uses a tiny relative slack so that points on the
// boundary (e.g. the basis of a circumdisk) stay inside under roundoff.
struct Disk {
    Point2 center;
    double radius = 0.0;

    bool contains(const Point2& p) const {
        const double dx = p.x - center.x;
        const double dy = p.y - center.y;
        const double r2 = radius * radius;
        return dx * dx + dy * dy <= r2 + 1e-9 * r2 + 1e-30;
    }
};

enum class PhiKind {
    LinearPlus,     // r - b
    LinearMinus,    // b - r
    LinearAbs,      // |r - b|
    GeneralLinear,  // alpha*r + beta*b, alpha^2 + beta^2 = 1
    Kulldorff,      // r ln(r/b) + (1-r) ln((1-r)/(1-b)) on [xi, 1-xi]^2
};

struct DiscrepancyFn {
    PhiKind kind = PhiKind::LinearAbs;
    double alpha = 0.0, beta = 0.0;  // GeneralLinear coefficients
    double xi = 1e-3;                // Kulldorff clamp margin

    static DiscrepancyFn linear_plus() { return {PhiKind::LinearPlus, 0, 0, 0}; }
    static DiscrepancyFn linear_minus() { return {PhiKind::LinearMinus, 0, 0, 0}; }
    static DiscrepancyFn linear_abs() { return {PhiKind::LinearAbs, 0, 0, 0}; }
    static DiscrepancyFn general_linear(double alpha, double beta);
    static DiscrepancyFn kulldorff(double xi = 1e-3);
};

double phi_eval(const DiscrepancyFn& f, double r, double b);

// Coefficient form of a linear phi; empty for LinearAbs and Kulldorff.
struct LinearFn {
    double alpha = 1.0;
    double beta = -1.0;
};

std::optional<LinearFn> as_linear(const DiscrepancyFn& f);

// Shared evaluation of a linear phi on raw per-color mass. Every maximizer
// (slab tree, Kadane, enumeration) scores candidates through this one
// expression so equal masses give bit-identical values.
struct LinearContext {
    double alpha = 1.0, beta = -1.0;
    double red_n = 1.0, blue_n = 1.0;

    double value(double red_mass, double blue_mass) const {
        return alpha * (red_mass / red_n) + beta * (blue_mass / blue_n);
    }
};

using Region = std::variant<Rectangle, Halfplane, Disk>;

// A reported range with its measured fractions, score and timing.
// `complement` marks results referring to the region's outside.
struct ScanResult {
    Region region = Rectangle{};
    bool complement = false;
    double mu_red = 0.0;
    double mu_blue = 0.0;
    double value = 0.0;
    double seconds = 0.0;
    std::string method;
};

bool region_contains(const Region& region, const Point2& p);

double mu(const Rectangle& range, const std::vector<Point2>& pts);
double mu(const Halfplane& range, const std::vector<Point2>& pts);
double mu(const Disk& range, const std::vector<Point2>& pts);
double mu(const Region& range, const std::vector<Point2>& pts);

ScanResult evaluate_range(const Region& range, const LabeledPoints& pts,
                          const DiscrepancyFn& f, bool complement = false);

}  // namespace maxdisc
