#include "maxdisc/halfplane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>

#include "maxdisc/sampling.hpp"

namespace maxdisc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// splitmix64; per-repetition seeds derive from the master seed by counter.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master + 0x632be59bd9b4e019ULL * (index + 1));
}

int amplification_rounds(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("amplification_rounds: delta must lie in (0, 1)");
    }
    return std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / delta))));
}

DualLine dualize(const Point2& p, int src) { return DualLine{p.x, p.y, src}; }

namespace {

// Rank-based tilt that separates equal slopes. Sample duals matching a tilted
// line exactly (duplicated points) receive the same tilt and stay coincident.
struct Tilt {
    std::map<std::pair<double, double>, double> by_point;
    double unit = 0.0;

    double tilted(const DualLine& d) const {
        auto it = by_point.find({d.slope, d.offset});
        return it == by_point.end() ? d.slope : it->second;
    }
};

Tilt make_tilt(const std::vector<Point2>& n_pts) {
    Tilt t;
    std::vector<std::pair<double, double>> keys;
    keys.reserve(n_pts.size());
    double span = 1.0;
    for (const auto& p : n_pts) {
        keys.push_back({p.x, p.y});
        span = std::max(span, std::abs(p.x));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    t.unit = span * 1e-12;
    for (int attempt = 0; attempt < 40; ++attempt) {
        t.by_point.clear();
        for (std::size_t k = 0; k < keys.size(); ++k) {
            t.by_point[keys[k]] = keys[k].first + static_cast<double>(k + 1) * t.unit;
        }
        std::vector<double> slopes;
        slopes.reserve(keys.size());
        for (const auto& kv : t.by_point) slopes.push_back(kv.second);
        std::sort(slopes.begin(), slopes.end());
        if (std::adjacent_find(slopes.begin(), slopes.end()) == slopes.end()) return t;
        t.unit *= 2.0;
    }
    throw std::runtime_error("build_annotated_arrangement: could not separate dual slopes");
}

}  // namespace

Arrangement build_annotated_arrangement(const std::vector<Point2>& n_pts,
                                        const std::vector<Point2>& s_red,
                                        const std::vector<Point2>& s_blue) {
    if (n_pts.size() < 2) {
        throw std::invalid_argument("build_annotated_arrangement: need at least 2 cover points");
    }
    const Tilt tilt = make_tilt(n_pts);

    Arrangement arr;
    arr.s_red = s_red.size();
    arr.s_blue = s_blue.size();
    arr.lines.reserve(n_pts.size());
    for (std::size_t i = 0; i < n_pts.size(); ++i) {
        DualLine d = dualize(n_pts[i], static_cast<int>(i));
        d.slope = tilt.tilted(d);
        arr.lines.push_back(d);
    }

    arr.y_min = kInf;
    arr.y_max = -kInf;
    const auto note_y = [&](double y) {
        arr.y_min = std::min(arr.y_min, y);
        arr.y_max = std::max(arr.y_max, y);
    };
    for (const auto& p : n_pts) note_y(p.y);
    for (const auto& p : s_red) note_y(p.y);
    for (const auto& p : s_blue) note_y(p.y);

    const int n = static_cast<int>(arr.lines.size());
    arr.per_line.resize(n);

    // Pairwise vertices.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double ds = arr.lines[i].slope - arr.lines[j].slope;
            const double x = (arr.lines[i].offset - arr.lines[j].offset) / ds;
            const double y = arr.lines[i].eval(x);
            arr.per_line[i].vx.push_back(x);
            arr.per_line[i].vy.push_back(y);
            arr.per_line[i].vother.push_back(j);
            arr.per_line[j].vx.push_back(x);
            arr.per_line[j].vy.push_back(y);
            arr.per_line[j].vother.push_back(i);
        }
    }
    for (auto& pl : arr.per_line) {
        std::vector<std::size_t> order(pl.vx.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (pl.vx[a] != pl.vx[b]) return pl.vx[a] < pl.vx[b];
            return pl.vother[a] < pl.vother[b];
        });
        std::vector<double> vx, vy;
        std::vector<int> vo;
        for (std::size_t k : order) {
            vx.push_back(pl.vx[k]);
            vy.push_back(pl.vy[k]);
            vo.push_back(pl.vother[k]);
        }
        pl.vx = std::move(vx);
        pl.vy = std::move(vy);
        pl.vother = std::move(vo);
        pl.edge_red.assign(pl.vx.size() + 1, 0);
        pl.edge_blue.assign(pl.vx.size() + 1, 0);
    }

    // Annotate with sample duals: one crossing per non-parallel (sample, line)
    // pair. A crossing exactly at a vertex binds to the edge ending there.
    const auto annotate = [&](const std::vector<Point2>& sample, bool red) {
        for (const auto& p : sample) {
            DualLine g = dualize(p);
            g.slope = tilt.tilted(g);
            for (int i = 0; i < n; ++i) {
                auto& pl = arr.per_line[i];
                const double ds = arr.lines[i].slope - g.slope;
                if (ds == 0.0) continue;
                const double x = (arr.lines[i].offset - g.offset) / ds;
                const int edge = static_cast<int>(
                    std::lower_bound(pl.vx.begin(), pl.vx.end(), x) - pl.vx.begin());
                (red ? pl.edge_red : pl.edge_blue)[edge] += 1;
                Arrangement::Event ev;
                ev.x = x;
                ev.delta = g.slope > arr.lines[i].slope ? 1 : -1;
                ev.red = red;
                pl.events.push_back(ev);
            }
        }
    };
    annotate(s_red, true);
    annotate(s_blue, false);

    for (int i = 0; i < n; ++i) {
        auto& pl = arr.per_line[i];
        std::sort(pl.events.begin(), pl.events.end(),
                  [](const Arrangement::Event& a, const Arrangement::Event& b) { return a.x < b.x; });
        double x0 = pl.vx.empty() ? 0.0 : pl.vx.front();
        if (!pl.events.empty()) x0 = std::min(x0, pl.events.front().x);
        x0 -= 1.0;
        pl.x0 = x0;
        const auto count_starts = [&](const std::vector<Point2>& sample, int& ge, int& gt) {
            ge = gt = 0;
            const double base = arr.lines[i].eval(x0);
            for (const auto& p : sample) {
                DualLine g = dualize(p);
                g.slope = tilt.tilted(g);
                const double v = g.eval(x0);
                if (v >= base) ++ge;
                if (v > base) ++gt;
            }
        };
        count_starts(s_red, pl.start_ge_red, pl.start_gt_red);
        count_starts(s_blue, pl.start_ge_blue, pl.start_gt_blue);
    }
    return arr;
}

namespace {

// Walks one line's vertices, reporting closed (>=) and strict (>) "sample
// dual at-or-above" counts at each vertex. Samples exactly on the vertex
// count for the closed tally but not the strict one.
template <class Visit>
void walk_line(const Arrangement& arr, int li, Visit&& visit) {
    const auto& pl = arr.per_line[li];
    int ge_r = pl.start_ge_red, gt_r = pl.start_gt_red;
    int ge_b = pl.start_ge_blue, gt_b = pl.start_gt_blue;
    std::size_t ev = 0;
    std::size_t v = 0;
    while (v < pl.vx.size()) {
        const double x = pl.vx[v];
        while (ev < pl.events.size() && pl.events[ev].x < x) {
            const auto& e = pl.events[ev];
            (e.red ? ge_r : ge_b) += e.delta;
            (e.red ? gt_r : gt_b) += e.delta;
            ++ev;
        }
        int pos_r = 0, pos_b = 0, neg_r = 0, neg_b = 0;
        for (std::size_t k = ev; k < pl.events.size() && pl.events[k].x == x; ++k) {
            const auto& e = pl.events[k];
            if (e.delta > 0) {
                (e.red ? pos_r : pos_b) += e.delta;
            } else {
                (e.red ? neg_r : neg_b) += e.delta;
            }
        }
        // All vertices at this x see the same counts.
        while (v < pl.vx.size() && pl.vx[v] == x) {
            visit(v, ge_r + pos_r, ge_b + pos_b, gt_r + neg_r, gt_b + neg_b);
            ++v;
        }
        while (ev < pl.events.size() && pl.events[ev].x == x) {
            const auto& e = pl.events[ev];
            (e.red ? ge_r : ge_b) += e.delta;
            (e.red ? gt_r : gt_b) += e.delta;
            ++ev;
        }
    }
}

}  // namespace

std::vector<std::pair<int, int>> sweep_vertex_counts(const Arrangement& arr, int li) {
    std::vector<std::pair<int, int>> out(arr.per_line[li].vx.size());
    walk_line(arr, li, [&](std::size_t v, int ge_r, int ge_b, int, int) {
        out[v] = {ge_r, ge_b};
    });
    return out;
}

SweepBest sweep_max_halfplane(const Arrangement& arr, const DiscrepancyFn& f) {
    const double sr = static_cast<double>(std::max<std::size_t>(arr.s_red, 1));
    const double sb = static_cast<double>(std::max<std::size_t>(arr.s_blue, 1));
    SweepBest best;
    best.value = -kInf;
    const auto offer = [&](const Halfplane& h, double r, double b) {
        const double v = phi_eval(f, r, b);
        if (v > best.value) {
            best = SweepBest{h, r, b, v};
        }
    };
    // Trivial ranges.
    offer(Halfplane(0.0, 1.0, arr.y_min - 1.0), 0.0, 0.0);
    offer(Halfplane(0.0, 1.0, arr.y_max + 1.0), 1.0, 1.0);

    for (std::size_t li = 0; li < arr.lines.size(); ++li) {
        const auto& pl = arr.per_line[li];
        walk_line(arr, static_cast<int>(li),
                  [&](std::size_t v, int ge_r, int ge_b, int gt_r, int gt_b) {
                      const double xv = pl.vx[v];
                      const double yv = pl.vy[v];
                      // Primal line of the vertex: y = xv * X - yv.
                      offer(Halfplane(-xv, 1.0, -yv), ge_r / sr, ge_b / sb);
                      offer(Halfplane(xv, -1.0, yv), (arr.s_red - gt_r) / sr,
                            (arr.s_blue - gt_b) / sb);
                  });
    }
    return best;
}

namespace {

struct RepResult {
    ScanResult result;
    int rep = 0;
};

ScanResult median_by_value(std::vector<RepResult> reps) {
    std::sort(reps.begin(), reps.end(), [](const RepResult& a, const RepResult& b) {
        if (a.result.value != b.result.value) return a.result.value < b.result.value;
        return a.rep < b.rep;
    });
    return reps[(reps.size() - 1) / 2].result;
}

}  // namespace

ScanResult max_halfplane(const LabeledPoints& pts, double eps, double delta,
                         const DiscrepancyFn& f, std::uint64_t seed) {
    pts.validate();
    std::vector<Point2> all = pts.reds;
    all.insert(all.end(), pts.blues.begin(), pts.blues.end());

    const int rounds = amplification_rounds(delta);
    std::vector<RepResult> reps;
    for (int t = 0; t < rounds; ++t) {
        const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
        std::vector<Point2> cover = halfplane_weak_cover_sample(all, eps / 4.0, delta, s, 2);
        SampleParams sp;
        sp.eps = eps / 4.0;
        sp.delta = delta;
        sp.vc_dim = 2;
        sp.seed = derive_seed(s, 1);
        std::vector<Point2> s_red = eps_sample(pts.reds, sp);
        sp.seed = derive_seed(s, 2);
        std::vector<Point2> s_blue = eps_sample(pts.blues, sp);

        const Arrangement arr = build_annotated_arrangement(cover, s_red, s_blue);
        const SweepBest sb = sweep_max_halfplane(arr, f);
        ScanResult res;
        res.region = sb.halfplane;
        res.mu_red = sb.mu_red;
        res.mu_blue = sb.mu_blue;
        res.value = sb.value;
        res.method = "halfplane";
        reps.push_back({res, t});
    }
    return median_by_value(std::move(reps));
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

}  // namespace

ScanResult max_disk(const LabeledPoints& pts, double eps, double delta, const DiscrepancyFn& f,
                    std::uint64_t seed) {
    pts.validate();
    std::vector<Point2> all = pts.reds;
    all.insert(all.end(), pts.blues.begin(), pts.blues.end());

    const int rounds = amplification_rounds(delta);
    std::vector<RepResult> reps;
    for (int t = 0; t < rounds; ++t) {
        const std::uint64_t s = derive_seed(seed, 0x1000 + static_cast<std::uint64_t>(t));
        // Cover sized for the lifted (3-d halfspace) range space.
        std::vector<Point2> cover = halfplane_weak_cover_sample(all, eps / 4.0, delta, s, 3);
        SampleParams sp;
        sp.eps = eps / 4.0;
        sp.delta = delta;
        sp.vc_dim = 3;
        sp.seed = derive_seed(s, 1);
        std::vector<Point2> s_red = eps_sample(pts.reds, sp);
        sp.seed = derive_seed(s, 2);
        std::vector<Point2> s_blue = eps_sample(pts.blues, sp);
        const double sr = static_cast<double>(s_red.size());
        const double sbn = static_cast<double>(s_blue.size());

        ScanResult best;
        best.value = -kInf;
        best.method = "disk";
        const auto offer = [&](const Disk& d) {
            double cr = 0.0, cb = 0.0;
            for (const auto& p : s_red) {
                if (d.contains(p)) cr += 1.0;
            }
            for (const auto& p : s_blue) {
                if (d.contains(p)) cb += 1.0;
            }
            const double r = cr / sr;
            const double b = cb / sbn;
            const double v = phi_eval(f, r, b);
            if (v > best.value) {
                best.region = d;
                best.complement = false;
                best.mu_red = r;
                best.mu_blue = b;
                best.value = v;
            }
            const double vc = phi_eval(f, 1.0 - r, 1.0 - b);
            if (vc > best.value) {
                best.region = d;
                best.complement = true;
                best.mu_red = 1.0 - r;
                best.mu_blue = 1.0 - b;
                best.value = vc;
            }
        };
        for (std::size_t i = 0; i < cover.size(); ++i) {
            offer(Disk{cover[i], 0.0});
            for (std::size_t j = i + 1; j < cover.size(); ++j) {
                Disk dd;
                dd.center = {(cover[i].x + cover[j].x) / 2.0, (cover[i].y + cover[j].y) / 2.0};
                dd.radius = std::hypot(cover[i].x - cover[j].x, cover[i].y - cover[j].y) / 2.0;
                offer(dd);
                for (std::size_t k = j + 1; k < cover.size(); ++k) {
                    if (const auto d = circumdisk(cover[i], cover[j], cover[k])) offer(*d);
                }
            }
        }
        best.method = "disk";
        reps.push_back({best, t});
    }
    return median_by_value(std::move(reps));
}

}  // namespace maxdisc
