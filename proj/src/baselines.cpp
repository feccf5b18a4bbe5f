#include "maxdisc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "maxdisc/rect_linear.hpp"
#include "maxdisc/sampling.hpp"

namespace maxdisc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct GridCandidate {
    bool valid = false;
    GridRect rect;
    double value = 0.0;
    double red = 0.0, blue = 0.0;  // mass units
};

void offer(GridCandidate& best, const GridRect& rect, double value, double red, double blue) {
    if (!best.valid || value > best.value ||
        (value == best.value && rect_before(rect, best.rect))) {
        best = {true, rect, value, red, blue};
    }
}

// Maximum-subarray scan over per-column masses, scored through ctx. Masses
// ride along as pairs so candidate values are evaluated from exact sums.
void kadane_row_pair(const std::vector<double>& colred, const std::vector<double>& colblue,
                     int j_lo, int j_hi, const LinearContext& ctx, GridCandidate& best) {
    const int n = static_cast<int>(colred.size());
    double cur_r = 0.0, cur_b = 0.0;
    int cur_lo = 0;
    bool has_cur = false;
    for (int i = 0; i < n; ++i) {
        const double cell_val = ctx.value(colred[i], colblue[i]);
        if (has_cur) {
            const double ext_val = ctx.value(cur_r + colred[i], cur_b + colblue[i]);
            if (ext_val >= cell_val) {
                cur_r += colred[i];
                cur_b += colblue[i];
            } else {
                cur_r = colred[i];
                cur_b = colblue[i];
                cur_lo = i;
            }
        } else {
            cur_r = colred[i];
            cur_b = colblue[i];
            cur_lo = i;
            has_cur = true;
        }
        offer(best, GridRect{cur_lo, i, j_lo, j_hi}, ctx.value(cur_r, cur_b), cur_r, cur_b);
    }
}

GridCandidate kadane_on_counts(const Mat& red, const Mat& blue, const LinearContext& ctx) {
    const int rows = red.rows, cols = red.cols;
    GridCandidate best;
    std::vector<double> colred(cols), colblue(cols);
    for (int j_lo = 0; j_lo < rows; ++j_lo) {
        std::fill(colred.begin(), colred.end(), 0.0);
        std::fill(colblue.begin(), colblue.end(), 0.0);
        for (int j_hi = j_lo; j_hi < rows; ++j_hi) {
            for (int i = 0; i < cols; ++i) {
                colred[i] += red.at(j_hi, i);
                colblue[i] += blue.at(j_hi, i);
            }
            kadane_row_pair(colred, colblue, j_lo, j_hi, ctx, best);
        }
    }
    return best;
}

}  // namespace

std::pair<GridRect, double> exact_grid_max_kadane(const Grid& g, const DiscrepancyFn& f) {
    if (f.kind == PhiKind::LinearAbs) {
        const LinearContext plus{1.0, -1.0, g.red_n, g.blue_n};
        const LinearContext minus{-1.0, 1.0, g.red_n, g.blue_n};
        GridCandidate a = kadane_on_counts(g.red_cnt, g.blue_cnt, plus);
        GridCandidate b = kadane_on_counts(g.red_cnt, g.blue_cnt, minus);
        if (b.value > a.value || (b.value == a.value && rect_before(b.rect, a.rect))) a = b;
        return {a.rect, a.value};
    }
    const auto lin = as_linear(f);
    if (!lin) throw std::invalid_argument("exact_grid_max_kadane: phi must be linear");
    const LinearContext ctx{lin->alpha, lin->beta, g.red_n, g.blue_n};
    GridCandidate best = kadane_on_counts(g.red_cnt, g.blue_cnt, ctx);
    return {best.rect, best.value};
}

// ---------------------------------------------------------------------------

namespace {

struct Lattice {
    std::vector<double> xs, ys;  // sorted distinct coordinates
    std::vector<CellMass> cells;  // aggregated per lattice cell
    double red_n = 1.0, blue_n = 1.0;

    int nx() const { return static_cast<int>(xs.size()); }
    int ny() const { return static_cast<int>(ys.size()); }
};

int rank_of(const std::vector<double>& v, double x) {
    return static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
}

Lattice build_lattice(const LabeledPoints& pts) {
    Lattice lat;
    lat.xs.reserve(pts.size());
    lat.ys.reserve(pts.size());
    for (const auto& p : pts.reds) {
        lat.xs.push_back(p.x);
        lat.ys.push_back(p.y);
    }
    for (const auto& p : pts.blues) {
        lat.xs.push_back(p.x);
        lat.ys.push_back(p.y);
    }
    std::sort(lat.xs.begin(), lat.xs.end());
    lat.xs.erase(std::unique(lat.xs.begin(), lat.xs.end()), lat.xs.end());
    std::sort(lat.ys.begin(), lat.ys.end());
    lat.ys.erase(std::unique(lat.ys.begin(), lat.ys.end()), lat.ys.end());
    for (const auto& p : pts.reds) {
        lat.cells.push_back({rank_of(lat.ys, p.y), rank_of(lat.xs, p.x), 1.0, 0.0});
    }
    for (const auto& p : pts.blues) {
        lat.cells.push_back({rank_of(lat.ys, p.y), rank_of(lat.xs, p.x), 0.0, 1.0});
    }
    lat.red_n = static_cast<double>(pts.reds.size());
    lat.blue_n = static_cast<double>(pts.blues.size());
    return lat;
}

Rectangle lattice_rect(const Lattice& lat, const GridRect& rect) {
    Rectangle out;
    out.x_lo = lat.xs[std::min(rect.i_lo, lat.nx() - 1)];
    out.x_hi = lat.xs[std::min(rect.i_hi, lat.nx() - 1)];
    out.y_lo = lat.ys[std::min(rect.j_lo, lat.ny() - 1)];
    out.y_hi = lat.ys[std::min(rect.j_hi, lat.ny() - 1)];
    return out;
}

GridCandidate lattice_linear_max(const Lattice& lat, const LinearContext& ctx,
                                 const ExactRectOptions& opts, std::size_t m) {
    if (m <= opts.kadane_max) {
        Mat red(lat.ny(), lat.nx()), blue(lat.ny(), lat.nx());
        for (const auto& c : lat.cells) {
            red.at(c.row, c.col) += c.red;
            blue.at(c.row, c.col) += c.blue;
        }
        return kadane_on_counts(red, blue, ctx);
    }
    SlabTree tree = slab_tree_from_cells(next_pow2(lat.ny()), lat.nx(), lat.cells,
                                         lat.red_n, lat.blue_n);
    RectCandidate rc = max_linear_rect_tree(tree, ctx);
    GridCandidate out;
    out.valid = rc.valid;
    out.rect = rc.rect;
    out.rect.j_lo = std::min(out.rect.j_lo, lat.ny() - 1);  // padded rows are empty
    out.rect.j_hi = std::min(out.rect.j_hi, lat.ny() - 1);
    out.value = rc.value;
    out.red = rc.red;
    out.blue = rc.blue;
    return out;
}

GridCandidate lattice_phi_enum(const Lattice& lat, const DiscrepancyFn& f) {
    const int nx = lat.nx(), ny = lat.ny();
    Mat red_ps(ny + 1, nx + 1), blue_ps(ny + 1, nx + 1);
    for (const auto& c : lat.cells) {
        red_ps.at(c.row + 1, c.col + 1) += c.red;
        blue_ps.at(c.row + 1, c.col + 1) += c.blue;
    }
    for (int j = 1; j <= ny; ++j) {
        for (int i = 1; i <= nx; ++i) {
            red_ps.at(j, i) += red_ps.at(j - 1, i) + red_ps.at(j, i - 1) - red_ps.at(j - 1, i - 1);
            blue_ps.at(j, i) +=
                blue_ps.at(j - 1, i) + blue_ps.at(j, i - 1) - blue_ps.at(j - 1, i - 1);
        }
    }
    GridCandidate best;
    for (int j_lo = 0; j_lo < ny; ++j_lo) {
        for (int j_hi = j_lo; j_hi < ny; ++j_hi) {
            for (int i_lo = 0; i_lo < nx; ++i_lo) {
                for (int i_hi = i_lo; i_hi < nx; ++i_hi) {
                    const double r = red_ps.at(j_hi + 1, i_hi + 1) - red_ps.at(j_lo, i_hi + 1) -
                                     red_ps.at(j_hi + 1, i_lo) + red_ps.at(j_lo, i_lo);
                    const double b = blue_ps.at(j_hi + 1, i_hi + 1) - blue_ps.at(j_lo, i_hi + 1) -
                                     blue_ps.at(j_hi + 1, i_lo) + blue_ps.at(j_lo, i_lo);
                    const double v = phi_eval(f, r / lat.red_n, b / lat.blue_n);
                    offer(best, GridRect{i_lo, i_hi, j_lo, j_hi}, v, r, b);
                }
            }
        }
    }
    return best;
}

}  // namespace

ScanResult exact_rect_max(const LabeledPoints& pts, const DiscrepancyFn& f,
                          const ExactRectOptions& opts) {
    pts.validate();
    const std::size_t m = pts.size();
    if (m > opts.cap) {
        throw std::invalid_argument("exact_rect_max: input size " + std::to_string(m) +
                                    " exceeds cap " + std::to_string(opts.cap));
    }
    const Lattice lat = build_lattice(pts);
    GridCandidate best;
    if (f.kind == PhiKind::LinearAbs) {
        best = lattice_linear_max(lat, {1.0, -1.0, lat.red_n, lat.blue_n}, opts, m);
        GridCandidate alt = lattice_linear_max(lat, {-1.0, 1.0, lat.red_n, lat.blue_n}, opts, m);
        if (alt.value > best.value) best = alt;
    } else if (const auto lin = as_linear(f)) {
        best = lattice_linear_max(lat, {lin->alpha, lin->beta, lat.red_n, lat.blue_n}, opts, m);
    } else {
        best = lattice_phi_enum(lat, f);
    }
    ScanResult out;
    out.region = lattice_rect(lat, best.rect);
    out.mu_red = best.red / lat.red_n;
    out.mu_blue = best.blue / lat.blue_n;
    out.value = phi_eval(f, out.mu_red, out.mu_blue);
    out.method = "exact";
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct RegionCandidate {
    bool valid = false;
    Region region;
    double mu_red = 0.0, mu_blue = 0.0;
    double value = -kInf;
};

void offer_region(RegionCandidate& best, const Region& region, double r, double b, double v) {
    if (!best.valid || v > best.value) {
        best = {true, region, r, b, v};
    }
}

Rectangle bounding_box(const LabeledPoints& pts) {
    Rectangle box{kInf, -kInf, kInf, -kInf};
    const auto grow = [&](const Point2& p) {
        box.x_lo = std::min(box.x_lo, p.x);
        box.x_hi = std::max(box.x_hi, p.x);
        box.y_lo = std::min(box.y_lo, p.y);
        box.y_hi = std::max(box.y_hi, p.y);
    };
    for (const auto& p : pts.reds) grow(p);
    for (const auto& p : pts.blues) grow(p);
    return box;
}

}  // namespace

ScanResult exact_halfplane_max(const LabeledPoints& pts, const DiscrepancyFn& f,
                               std::size_t cap) {
    pts.validate();
    const std::size_t m = pts.size();
    if (m > cap) {
        throw std::invalid_argument("exact_halfplane_max: input size " + std::to_string(m) +
                                    " exceeds cap " + std::to_string(cap));
    }
    std::vector<Point2> all = pts.reds;
    all.insert(all.end(), pts.blues.begin(), pts.blues.end());
    const Rectangle box = bounding_box(pts);

    RegionCandidate best;
    const auto eval_halfplane = [&](const Halfplane& h) {
        const double r = mu(h, pts.reds);
        const double b = mu(h, pts.blues);
        offer_region(best, h, r, b, phi_eval(f, r, b));
    };
    eval_halfplane(Halfplane(0.0, 1.0, box.y_lo - 1.0));  // empty
    eval_halfplane(Halfplane(0.0, 1.0, box.y_hi + 1.0));  // full

    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const double nx = -(all[j].y - all[i].y);
            const double ny = all[j].x - all[i].x;
            if (nx == 0.0 && ny == 0.0) continue;  // duplicate point
            const double c = nx * all[i].x + ny * all[i].y;
            eval_halfplane(Halfplane(nx, ny, c));
            eval_halfplane(Halfplane(-nx, -ny, -c));
        }
    }
    ScanResult out;
    out.region = best.region;
    out.mu_red = best.mu_red;
    out.mu_blue = best.mu_blue;
    out.value = best.value;
    out.method = "exact-halfplane";
    return out;
}

namespace {

std::optional<Disk> circumdisk(const Point2& a, const Point2& b, const Point2& c) {
    const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    const double scale = std::max({std::abs(a.x) + std::abs(a.y), std::abs(b.x) + std::abs(b.y),
                                   std::abs(c.x) + std::abs(c.y), 1.0});
    if (std::abs(d) < 1e-12 * scale * scale) return std::nullopt;
    const double a2 = a.x * a.x + a.y * a.y;
    const double b2 = b.x * b.x + b.y * b.y;
    const double c2 = c.x * c.x + c.y * c.y;
    Disk disk;
    disk.center.x = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    disk.center.y = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    disk.radius = std::hypot(a.x - disk.center.x, a.y - disk.center.y);
    return disk;
}

Disk diametral_disk(const Point2& a, const Point2& b) {
    Disk disk;
    disk.center = {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
    disk.radius = std::hypot(a.x - b.x, a.y - b.y) / 2.0;
    return disk;
}

}  // namespace

ScanResult exact_disk_max(const LabeledPoints& pts, const DiscrepancyFn& f, std::size_t cap) {
    pts.validate();
    const std::size_t m = pts.size();
    if (m > cap) {
        throw std::invalid_argument("exact_disk_max: input size " + std::to_string(m) +
                                    " exceeds cap " + std::to_string(cap));
    }
    std::vector<Point2> all = pts.reds;
    all.insert(all.end(), pts.blues.begin(), pts.blues.end());
    const Rectangle box = bounding_box(pts);

    RegionCandidate best;
    const auto eval_disk = [&](const Disk& d) {
        const double r = mu(d, pts.reds);
        const double b = mu(d, pts.blues);
        offer_region(best, d, r, b, phi_eval(f, r, b));
    };
    eval_disk(Disk{{box.x_lo - 1.0, box.y_lo - 1.0}, 0.0});  // empty
    eval_disk(Disk{{(box.x_lo + box.x_hi) / 2.0, (box.y_lo + box.y_hi) / 2.0},
                   std::hypot(box.x_hi - box.x_lo, box.y_hi - box.y_lo) + 1.0});  // full

    for (std::size_t i = 0; i < all.size(); ++i) {
        eval_disk(Disk{all[i], 0.0});
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            eval_disk(diametral_disk(all[i], all[j]));
            for (std::size_t k = j + 1; k < all.size(); ++k) {
                if (const auto d = circumdisk(all[i], all[j], all[k])) eval_disk(*d);
            }
        }
    }
    ScanResult out;
    out.region = best.region;
    out.mu_red = best.mu_red;
    out.mu_blue = best.mu_blue;
    out.value = best.value;
    out.method = "exact-disk";
    return out;
}

// ---------------------------------------------------------------------------

ScanResult netscan_baseline(const LabeledPoints& pts, double eps, const DiscrepancyFn& f,
                            std::uint64_t seed, const NetscanOptions& opts) {
    pts.validate();
    std::vector<Point2> all = pts.reds;
    all.insert(all.end(), pts.blues.begin(), pts.blues.end());

    std::vector<Point2> net;
    if (opts.n) {
        if (*opts.n >= all.size()) {
            net = all;
        } else {
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
            net.reserve(*opts.n);
            for (std::size_t i = 0; i < *opts.n; ++i) net.push_back(all[pick(rng)]);
        }
    } else {
        SampleParams np;
        np.eps = eps / 2.0;
        np.delta = 0.5;
        np.vc_dim = opts.net_vc_dim;
        np.seed = seed;
        net = eps_net(all, np);
    }

    SampleParams sp;
    sp.eps = eps / 4.0;
    sp.delta = 0.5;
    sp.vc_dim = 4;
    sp.seed = seed ^ 0xd1342543de82ef95ULL;
    std::vector<Point2> s_red, s_blue;
    if (opts.s) {
        const auto draw = [&](const std::vector<Point2>& from, std::uint64_t s2) {
            if (*opts.s >= from.size()) return from;
            std::mt19937_64 rng(s2);
            std::uniform_int_distribution<std::size_t> pick(0, from.size() - 1);
            std::vector<Point2> out;
            out.reserve(*opts.s);
            for (std::size_t i = 0; i < *opts.s; ++i) out.push_back(from[pick(rng)]);
            return out;
        };
        s_red = draw(pts.reds, sp.seed);
        s_blue = draw(pts.blues, sp.seed + 1);
    } else {
        s_red = eps_sample(pts.reds, sp);
        sp.seed += 1;
        s_blue = eps_sample(pts.blues, sp);
    }

    std::vector<double> xs, ys;
    xs.reserve(net.size());
    ys.reserve(net.size());
    for (const auto& p : net) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

    RegionCandidate best;
    Rectangle rect;
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        for (std::size_t jx = ix; jx < xs.size(); ++jx) {
            rect.x_lo = xs[ix];
            rect.x_hi = xs[jx];
            for (std::size_t iy = 0; iy < ys.size(); ++iy) {
                for (std::size_t jy = iy; jy < ys.size(); ++jy) {
                    rect.y_lo = ys[iy];
                    rect.y_hi = ys[jy];
                    const double r = mu(rect, s_red);
                    const double b = mu(rect, s_blue);
                    offer_region(best, rect, r, b, phi_eval(f, r, b));
                }
            }
        }
    }
    ScanResult out;
    out.region = best.region;
    out.mu_red = best.mu_red;
    out.mu_blue = best.mu_blue;
    out.value = best.value;
    out.method = "netscan";
    return out;
}

}  // namespace maxdisc
