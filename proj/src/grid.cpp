#include "maxdisc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace maxdisc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Evenly ranked order statistics of one color along one axis: values at
// ranks floor(k*n/r) for k = 1..r-1.
void color_cut_candidates(std::vector<double> coords, int r, std::vector<double>& out) {
    std::sort(coords.begin(), coords.end());
    const std::size_t n = coords.size();
    for (int k = 1; k < r; ++k) {
        std::size_t idx = static_cast<std::size_t>(
            (static_cast<long double>(k) * n) / r);
        if (idx >= n) idx = n - 1;
        out.push_back(coords[idx]);
    }
}

// Merge both colors' candidates into exactly r-1 strictly increasing interior
// cuts. Thinning keeps every ceil(q/(r-1))-th candidate (at most one skipped
// between kept cuts, which preserves the per-color 2/r mass bound); padding
// appends synthetic cuts above the maximum.
std::vector<double> make_axis_cuts(const std::vector<double>& red_coords,
                                   const std::vector<double>& blue_coords, int r) {
    std::vector<double> cuts;
    cuts.reserve(static_cast<std::size_t>(r) + 1);
    cuts.push_back(-kInf);
    if (r >= 2) {
        std::vector<double> cand;
        cand.reserve(2 * static_cast<std::size_t>(r));
        color_cut_candidates(red_coords, r, cand);
        color_cut_candidates(blue_coords, r, cand);
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

        const int want = r - 1;
        const int q = static_cast<int>(cand.size());
        std::vector<double> interior;
        if (q <= want) {
            interior = cand;
        } else {
            for (int t = 0; t < want; ++t) {
                interior.push_back(cand[static_cast<std::size_t>(
                    (static_cast<long long>(t + 1) * q) / r)]);
            }
            interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
        }
        double hi = std::max(red_coords.empty() ? 0.0 : *std::max_element(red_coords.begin(), red_coords.end()),
                             blue_coords.empty() ? 0.0 : *std::max_element(blue_coords.begin(), blue_coords.end()));
        if (!interior.empty()) hi = std::max(hi, interior.back());
        double pad = std::max(1.0, std::abs(hi));
        while (static_cast<int>(interior.size()) < want) {
            hi += pad;
            interior.push_back(hi);
        }
        cuts.insert(cuts.end(), interior.begin(), interior.end());
    }
    cuts.push_back(kInf);
    return cuts;
}

// Cell index: largest i with cuts[i] <= v (points at a cut go right).
int cell_index(const std::vector<double>& cuts, double v) {
    auto it = std::upper_bound(cuts.begin(), cuts.end(), v);
    return static_cast<int>(it - cuts.begin()) - 1;
}

void deposit(Mat& m, const std::vector<double>& x_cuts, const std::vector<double>& y_cuts,
             const std::vector<Point2>& pts) {
    for (const auto& p : pts) {
        m.at(cell_index(y_cuts, p.y), cell_index(x_cuts, p.x)) += 1.0;
    }
}

}  // namespace

bool rect_before(const GridRect& a, const GridRect& b) {
    if (a.i_lo != b.i_lo) return a.i_lo < b.i_lo;
    if (a.j_lo != b.j_lo) return a.j_lo < b.j_lo;
    if (a.i_hi != b.i_hi) return a.i_hi < b.i_hi;
    return a.j_hi < b.j_hi;
}

Rectangle Grid::cell_bounds(const GridRect& rect, const Rectangle& clamp_box) const {
    Rectangle out;
    out.x_lo = std::isinf(x_cuts[rect.i_lo]) ? clamp_box.x_lo : x_cuts[rect.i_lo];
    out.y_lo = std::isinf(y_cuts[rect.j_lo]) ? clamp_box.y_lo : y_cuts[rect.j_lo];
    // The upper cell boundary is exclusive; report the largest value below it
    // so the closed rectangle contains exactly the cells' points.
    const double xh = x_cuts[rect.i_hi + 1];
    const double yh = y_cuts[rect.j_hi + 1];
    out.x_hi = std::isinf(xh) ? clamp_box.x_hi : std::nextafter(xh, -kInf);
    out.y_hi = std::isinf(yh) ? clamp_box.y_hi : std::nextafter(yh, -kInf);
    return out;
}

Grid build_grid(const std::vector<Point2>& reds, const std::vector<Point2>& blues, int r) {
    if (r < 1) throw std::invalid_argument("build_grid: r must be at least 1");
    if (reds.empty() || blues.empty()) {
        throw std::invalid_argument("build_grid: both colors must be nonempty");
    }
    Grid g;
    g.r = r;
    std::vector<double> rx(reds.size()), ry(reds.size()), bx(blues.size()), by(blues.size());
    for (std::size_t i = 0; i < reds.size(); ++i) {
        rx[i] = reds[i].x;
        ry[i] = reds[i].y;
    }
    for (std::size_t i = 0; i < blues.size(); ++i) {
        bx[i] = blues[i].x;
        by[i] = blues[i].y;
    }
    g.x_cuts = make_axis_cuts(rx, bx, r);
    g.y_cuts = make_axis_cuts(ry, by, r);
    g.red_cnt = Mat(r, r);
    g.blue_cnt = Mat(r, r);
    deposit(g.red_cnt, g.x_cuts, g.y_cuts, reds);
    deposit(g.blue_cnt, g.x_cuts, g.y_cuts, blues);
    g.red_n = static_cast<double>(reds.size());
    g.blue_n = static_cast<double>(blues.size());
    return g;
}

Grid grid_from_counts(Mat red_cnt, Mat blue_cnt) {
    if (red_cnt.rows != red_cnt.cols || blue_cnt.rows != red_cnt.rows ||
        blue_cnt.cols != red_cnt.cols) {
        throw std::invalid_argument("grid_from_counts: matrices must be square and equal size");
    }
    Grid g;
    g.r = red_cnt.rows;
    g.x_cuts.push_back(-kInf);
    for (int i = 1; i < g.r; ++i) g.x_cuts.push_back(static_cast<double>(i));
    g.x_cuts.push_back(kInf);
    g.y_cuts = g.x_cuts;
    double rs = 0.0, bs = 0.0;
    for (double v : red_cnt.a) rs += v;
    for (double v : blue_cnt.a) bs += v;
    if (rs <= 0.0 || bs <= 0.0) {
        throw std::invalid_argument("grid_from_counts: both colors need positive mass");
    }
    g.red_cnt = std::move(red_cnt);
    g.blue_cnt = std::move(blue_cnt);
    g.red_n = rs;
    g.blue_n = bs;
    return g;
}

PrefixGrid prefix_sums(const Grid& g) {
    PrefixGrid ps;
    ps.r = g.r;
    ps.red_n = g.red_n;
    ps.blue_n = g.blue_n;
    ps.red_ps_cnt = Mat(g.r + 1, g.r + 1);
    ps.blue_ps_cnt = Mat(g.r + 1, g.r + 1);
    for (int j = 0; j < g.r; ++j) {
        for (int i = 0; i < g.r; ++i) {
            ps.red_ps_cnt.at(j + 1, i + 1) = g.red_cnt.at(j, i) + ps.red_ps_cnt.at(j, i + 1) +
                                             ps.red_ps_cnt.at(j + 1, i) - ps.red_ps_cnt.at(j, i);
            ps.blue_ps_cnt.at(j + 1, i + 1) = g.blue_cnt.at(j, i) + ps.blue_ps_cnt.at(j, i + 1) +
                                              ps.blue_ps_cnt.at(j + 1, i) - ps.blue_ps_cnt.at(j, i);
        }
    }
    return ps;
}

std::pair<double, double> rect_counts(const PrefixGrid& ps, const GridRect& rect) {
    if (rect.i_lo < 0 || rect.j_lo < 0 || rect.i_hi >= ps.r || rect.j_hi >= ps.r ||
        rect.i_lo > rect.i_hi || rect.j_lo > rect.j_hi) {
        throw std::out_of_range("rect_counts: invalid grid rectangle");
    }
    const auto sum = [&](const Mat& m) {
        return m.at(rect.j_hi + 1, rect.i_hi + 1) - m.at(rect.j_lo, rect.i_hi + 1) -
               m.at(rect.j_hi + 1, rect.i_lo) + m.at(rect.j_lo, rect.i_lo);
    };
    return {sum(ps.red_ps_cnt), sum(ps.blue_ps_cnt)};
}

std::pair<double, double> rect_weight(const PrefixGrid& ps, const GridRect& rect) {
    auto [rc, bc] = rect_counts(ps, rect);
    return {rc / ps.red_n, bc / ps.blue_n};
}

std::pair<GridRect, double> grid_enum_max(const Grid& g, const DiscrepancyFn& f) {
    const PrefixGrid ps = prefix_sums(g);
    GridRect best{0, 0, 0, 0};
    double best_value = -kInf;
    for (int i_lo = 0; i_lo < g.r; ++i_lo) {
        for (int j_lo = 0; j_lo < g.r; ++j_lo) {
            for (int i_hi = i_lo; i_hi < g.r; ++i_hi) {
                for (int j_hi = j_lo; j_hi < g.r; ++j_hi) {
                    const GridRect rect{i_lo, i_hi, j_lo, j_hi};
                    auto [r, b] = rect_weight(ps, rect);
                    const double v = phi_eval(f, r, b);
                    if (v > best_value) {
                        best_value = v;
                        best = rect;
                    }
                }
            }
        }
    }
    return {best, best_value};
}

int next_pow2(int v) {
    int p = 1;
    while (p < v) p <<= 1;
    return p;
}

int default_grid_resolution(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("default_grid_resolution: eps must be positive");
    return next_pow2(static_cast<int>(std::ceil(8.0 / eps)));
}

void dump_grid_csv(const Grid& g, std::ostream& os) {
    const auto emit_cuts = [&](const std::vector<double>& cuts) {
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            if (i) os << ',';
            os << cuts[i];
        }
        os << '\n';
    };
    emit_cuts(g.x_cuts);
    emit_cuts(g.y_cuts);
    const auto emit_mat = [&](bool red) {
        for (int j = 0; j < g.r; ++j) {
            for (int i = 0; i < g.r; ++i) {
                if (i) os << ',';
                os << (red ? g.red_weight(j, i) : g.blue_weight(j, i));
            }
            os << '\n';
        }
    };
    emit_mat(true);
    emit_mat(false);
}

}  // namespace maxdisc
