#include "maxdisc/core.hpp"

#include <algorithm>

namespace maxdisc {

void LabeledPoints::validate() const {
    if (reds.empty() || blues.empty()) {
        throw std::invalid_argument("LabeledPoints: need at least one point of each color");
    }
    for (const auto& p : reds) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw std::invalid_argument("LabeledPoints: non-finite red coordinate");
        }
    }
    for (const auto& p : blues) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw std::invalid_argument("LabeledPoints: non-finite blue coordinate");
        }
    }
}

Halfplane::Halfplane(double a_, double b_, double c_) {
    const double n = std::hypot(a_, b_);
    if (n == 0.0 || !std::isfinite(n)) {
        throw std::invalid_argument("Halfplane: zero or non-finite normal");
    }
    a = a_ / n;
    b = b_ / n;
    c = c_ / n;
}

DiscrepancyFn DiscrepancyFn::general_linear(double alpha, double beta) {
    const double n = std::hypot(alpha, beta);
    if (n == 0.0 || !std::isfinite(n)) {
        throw std::invalid_argument("DiscrepancyFn: zero or non-finite linear coefficients");
    }
    DiscrepancyFn f;
    f.kind = PhiKind::GeneralLinear;
    f.alpha = alpha / n;
    f.beta = beta / n;
    return f;
}

DiscrepancyFn DiscrepancyFn::kulldorff(double xi) {
    if (!(xi > 0.0 && xi < 0.5)) {
        throw std::invalid_argument("DiscrepancyFn: kulldorff xi must lie in (0, 1/2)");
    }
    DiscrepancyFn f;
    f.kind = PhiKind::Kulldorff;
    f.xi = xi;
    return f;
}

double phi_eval(const DiscrepancyFn& f, double r, double b) {
    switch (f.kind) {
        case PhiKind::LinearPlus:
            return r - b;
        case PhiKind::LinearMinus:
            return b - r;
        case PhiKind::LinearAbs:
            return std::abs(r - b);
        case PhiKind::GeneralLinear:
            return f.alpha * r + f.beta * b;
        case PhiKind::Kulldorff: {
            const double rc = std::clamp(r, f.xi, 1.0 - f.xi);
            const double bc = std::clamp(b, f.xi, 1.0 - f.xi);
            return rc * std::log(rc / bc) + (1.0 - rc) * std::log((1.0 - rc) / (1.0 - bc));
        }
    }
    return 0.0;
}

std::optional<LinearFn> as_linear(const DiscrepancyFn& f) {
    switch (f.kind) {
        case PhiKind::LinearPlus:
            return LinearFn{1.0, -1.0};
        case PhiKind::LinearMinus:
            return LinearFn{-1.0, 1.0};
        case PhiKind::GeneralLinear:
            return LinearFn{f.alpha, f.beta};
        default:
            return std::nullopt;
    }
}

bool region_contains(const Region& region, const Point2& p) {
    return std::visit([&](const auto& r) { return r.contains(p); }, region);
}

namespace {

template <class R>
double mu_impl(const R& range, const std::vector<Point2>& pts) {
    if (pts.empty()) {
        throw std::invalid_argument("mu: empty point sequence");
    }
    std::size_t inside = 0;
    for (const auto& p : pts) {
        if (range.contains(p)) ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(pts.size());
}

}  // namespace

double mu(const Rectangle& range, const std::vector<Point2>& pts) { return mu_impl(range, pts); }
double mu(const Halfplane& range, const std::vector<Point2>& pts) { return mu_impl(range, pts); }
double mu(const Disk& range, const std::vector<Point2>& pts) { return mu_impl(range, pts); }

double mu(const Region& range, const std::vector<Point2>& pts) {
    return std::visit([&](const auto& r) { return mu_impl(r, pts); }, range);
}

ScanResult evaluate_range(const Region& range, const LabeledPoints& pts,
                          const DiscrepancyFn& f, bool complement) {
    pts.validate();
    double r = mu(range, pts.reds);
    double b = mu(range, pts.blues);
    if (complement) {
        r = 1.0 - r;
        b = 1.0 - b;
    }
    ScanResult out;
    out.region = range;
    out.complement = complement;
    out.mu_red = r;
    out.mu_blue = b;
    out.value = phi_eval(f, r, b);
    return out;
}

}  // namespace maxdisc
