#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "maxdisc/core.hpp"

namespace maxdisc {

// Dense row-major matrix; rows index y, columns index x.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int row, int col) { return a[static_cast<std::size_t>(row) * cols + col]; }
    double at(int row, int col) const { return a[static_cast<std::size_t>(row) * cols + col]; }
};

// Inclusive cell-index bounds of a grid rectangle; i indexes columns (x),
// j indexes rows (y).
struct GridRect {
    int i_lo = 0, i_hi = 0;
    int j_lo = 0, j_hi = 0;

    bool operator==(const GridRect&) const = default;
};

// Lexicographic (i_lo, j_lo, i_hi, j_hi); shared tie order for maximizers.
bool rect_before(const GridRect& a, const GridRect& b);

// r x r cover of rectangle ranges. Cuts carry +-inf sentinels, so every point
// lands in exactly one cell (half-open on interior cuts). Cell masses are
// kept in source units (counts) next to the normalizers; the normalized
// weights red_weight/blue_weight sum to 1 per color.
struct Grid {
    int r = 0;
    std::vector<double> x_cuts;  // r+1 ascending, x_cuts[0] = -inf, x_cuts[r] = +inf
    std::vector<double> y_cuts;
    Mat red_cnt, blue_cnt;       // per-cell mass, row=y cell, col=x cell
    double red_n = 1.0, blue_n = 1.0;
    double red_total = 1.0, blue_total = 1.0;

    double red_weight(int j, int i) const { return red_cnt.at(j, i) / red_n; }
    double blue_weight(int j, int i) const { return blue_cnt.at(j, i) / blue_n; }

    // Data-coordinate rectangle containing exactly the points of the cells,
    // with infinite sentinels clamped to the given bounding box.
    Rectangle cell_bounds(const GridRect& rect, const Rectangle& clamp_box) const;
};

// Interior cuts are drawn from per-color order statistics on each axis (about
// r-1 evenly ranked candidates per color, merged and thinned to r-1), so each
// row and column holds at most ~2/r of either color's mass plus duplicate
// slack.
Grid build_grid(const std::vector<Point2>& reds, const std::vector<Point2>& blues, int r);

// Test/bench constructor from explicit cell masses; cuts become 0..r with
// sentinels replaced by +-inf.
Grid grid_from_counts(Mat red_cnt, Mat blue_cnt);

struct PrefixGrid {
    int r = 0;
    Mat red_ps_cnt, blue_ps_cnt;  // (r+1)x(r+1), mass units
    double red_n = 1.0, blue_n = 1.0;

    double red_ps(int j, int i) const { return red_ps_cnt.at(j, i) / red_n; }
    double blue_ps(int j, int i) const { return blue_ps_cnt.at(j, i) / blue_n; }
};

PrefixGrid prefix_sums(const Grid& g);

// Normalized (red, blue) weight of a cell-aligned rectangle, O(1).
std::pair<double, double> rect_weight(const PrefixGrid& ps, const GridRect& rect);

// Same in mass units.
std::pair<double, double> rect_counts(const PrefixGrid& ps, const GridRect& rect);

// Exact maximizer of phi over all O(r^4) grid rectangles; ties resolve to the
// lexicographically smallest rectangle.
std::pair<GridRect, double> grid_enum_max(const Grid& g, const DiscrepancyFn& f);

// Default resolution: ceil(8/eps) rounded up to a power of two.
int default_grid_resolution(double eps);

int next_pow2(int v);

// Debug dump: cut values, then the two normalized weight matrices.
void dump_grid_csv(const Grid& g, std::ostream& os);

}  // namespace maxdisc
