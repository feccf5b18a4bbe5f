#include "maxdisc/rect_linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxdisc {

namespace {

bool is_pow2(int v) { return v >= 1 && (v & (v - 1)) == 0; }

// Column-wise sum of two ascending ActiveCol lists.
std::vector<ActiveCol> merge_cols(const std::vector<ActiveCol>& a,
                                  const std::vector<ActiveCol>& b) {
    std::vector<ActiveCol> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].col < a[i].col) {
            out.push_back(b[j++]);
        } else {
            out.push_back({a[i].col, a[i].red + b[j].red, a[i].blue + b[j].blue});
            ++i;
            ++j;
        }
    }
    return out;
}

std::vector<int> merge_sorted_ints(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void assign_ranges(SlabTree& t, int node, int lo, int hi, int level) {
    t.nodes[node].level = level;
    t.nodes[node].row_lo = lo;
    t.nodes[node].row_hi = hi;
    if (lo == hi) return;
    const int mid = lo + (hi - lo) / 2;
    assign_ranges(t, t.lower_child(node), lo, mid, level + 1);
    assign_ranges(t, t.upper_child(node), mid + 1, hi, level + 1);
}

void fill_internal(SlabTree& t) {
    for (int k = t.rows - 2; k >= 0; --k) {
        t.nodes[k].cols = merge_cols(t.nodes[t.lower_child(k)].cols,
                                     t.nodes[t.upper_child(k)].cols);
    }
}

void fill_subtree_cols(SlabTree& t) {
    for (int k = static_cast<int>(t.nodes.size()) - 1; k >= 0; --k) {
        std::vector<int> own;
        own.reserve(t.nodes[k].cols.size());
        for (const auto& c : t.nodes[k].cols) own.push_back(c.col);
        if (t.is_leaf(k)) {
            t.nodes[k].subtree_cols = std::move(own);
        } else {
            t.nodes[k].subtree_cols = merge_sorted_ints(
                merge_sorted_ints(t.nodes[t.lower_child(k)].subtree_cols,
                                  t.nodes[t.upper_child(k)].subtree_cols),
                own);
        }
    }
}

SlabTree make_skeleton(int rows, int cols, double red_n, double blue_n) {
    SlabTree t;
    t.rows = rows;
    t.cols = cols;
    t.red_n = red_n;
    t.blue_n = blue_n;
    t.nodes.resize(2 * static_cast<std::size_t>(rows) - 1);
    assign_ranges(t, 0, 0, rows - 1, 0);
    return t;
}

double combined_fraction(const SlabTree& t, double red, double blue) {
    return red / t.red_n + blue / t.blue_n;
}

// Plain eta-compression of a column sequence. Emits an active column whenever
// the running combined mass reaches eta; the trailing remainder lands on the
// last contributing column. Conserves both colors' totals exactly.
std::vector<ActiveCol> compress_sequence(const SlabTree& t, const std::vector<ActiveCol>& raw,
                                         double eta) {
    if (eta <= 0.0) return raw;
    std::vector<ActiveCol> out;
    double acc_r = 0.0, acc_b = 0.0;
    for (const auto& c : raw) {
        acc_r += c.red;
        acc_b += c.blue;
        if (combined_fraction(t, acc_r, acc_b) >= eta) {
            out.push_back({c.col, acc_r, acc_b});
            acc_r = 0.0;
            acc_b = 0.0;
        }
    }
    if ((acc_r != 0.0 || acc_b != 0.0) && !raw.empty()) {
        if (!out.empty() && out.back().col == raw.back().col) {
            out.back().red += acc_r;
            out.back().blue += acc_b;
        } else {
            out.push_back({raw.back().col, acc_r, acc_b});
        }
    }
    return out;
}

// Residual chain for the exact-residual mode: the nodes forming the dyadic
// decomposition of the rows between `node` and the half boundary. For the
// lower half that is everything above the node within the half, for the upper
// half everything below.
void residual_chain(const SlabTree& t, int half_root, int node, bool lower_half,
                    std::vector<int>& out) {
    out.clear();
    int walk = node;
    while (walk != half_root) {
        const int parent = (walk - 1) / 2;
        if (lower_half && walk == t.lower_child(parent)) {
            out.push_back(t.upper_child(parent));
        } else if (!lower_half && walk == t.upper_child(parent)) {
            out.push_back(t.lower_child(parent));
        }
        walk = parent;
    }
}

void compress_half_exact_residual(const SlabTree& raw, SlabTree& out, int half_root,
                                  bool lower_half, double eta) {
    // Level order; within a level the chain members of later nodes are
    // already done (siblings nearer the half boundary come first).
    std::vector<int> order;
    std::vector<int> frontier{half_root};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int k : frontier) {
            order.push_back(k);
            if (!raw.is_leaf(k)) {
                if (lower_half) {
                    next.push_back(raw.upper_child(k));
                    next.push_back(raw.lower_child(k));
                } else {
                    next.push_back(raw.lower_child(k));
                    next.push_back(raw.upper_child(k));
                }
            }
        }
        frontier = std::move(next);
    }

    std::vector<int> chain;
    for (int k : order) {
        residual_chain(raw, half_root, k, lower_half, chain);
        if (chain.empty()) {
            out.nodes[k].cols = compress_sequence(raw, raw.nodes[k].cols, eta);
            continue;
        }
        // residual = raw(k) + raw(chain) - compressed(chain), per column
        std::vector<ActiveCol> residual = raw.nodes[k].cols;
        for (int u : chain) {
            residual = merge_cols(residual, raw.nodes[u].cols);
            std::vector<ActiveCol> neg;
            neg.reserve(out.nodes[u].cols.size());
            for (const auto& c : out.nodes[u].cols) neg.push_back({c.col, -c.red, -c.blue});
            residual = merge_cols(residual, neg);
        }
        out.nodes[k].cols = compress_sequence(raw, residual, eta);
    }
}

}  // namespace

SlabTree build_slab_tree(const Grid& g) {
    if (!is_pow2(g.r)) {
        throw std::invalid_argument("build_slab_tree: grid size must be a power of two");
    }
    SlabTree t = make_skeleton(g.r, g.r, g.red_n, g.blue_n);
    for (int row = 0; row < g.r; ++row) {
        auto& leaf = t.nodes[g.r - 1 + row];
        for (int i = 0; i < g.r; ++i) {
            const double r = g.red_cnt.at(row, i);
            const double b = g.blue_cnt.at(row, i);
            if (r != 0.0 || b != 0.0) leaf.cols.push_back({i, r, b});
        }
    }
    fill_internal(t);
    fill_subtree_cols(t);
    return t;
}

SlabTree slab_tree_from_cells(int rows_pow2, int cols, std::vector<CellMass> cells,
                              double red_n, double blue_n) {
    if (!is_pow2(rows_pow2)) {
        throw std::invalid_argument("slab_tree_from_cells: row count must be a power of two");
    }
    SlabTree t = make_skeleton(rows_pow2, cols, red_n, blue_n);
    std::sort(cells.begin(), cells.end(), [](const CellMass& a, const CellMass& b) {
        if (a.row != b.row) return a.row < b.row;
        return a.col < b.col;
    });
    for (std::size_t i = 0; i < cells.size();) {
        const int row = cells[i].row;
        if (row < 0 || row >= rows_pow2) {
            throw std::invalid_argument("slab_tree_from_cells: cell row out of range");
        }
        auto& leaf = t.nodes[rows_pow2 - 1 + row];
        while (i < cells.size() && cells[i].row == row) {
            const int col = cells[i].col;
            double r = 0.0, b = 0.0;
            while (i < cells.size() && cells[i].row == row && cells[i].col == col) {
                r += cells[i].red;
                b += cells[i].blue;
                ++i;
            }
            if (r != 0.0 || b != 0.0) leaf.cols.push_back({col, r, b});
        }
    }
    fill_internal(t);
    fill_subtree_cols(t);
    return t;
}

SlabTree compress(const SlabTree& raw, const CompressionParams& params) {
    if (params.eta < 0.0) throw std::invalid_argument("compress: eta must be nonnegative");
    SlabTree out = raw;
    if (params.eta == 0.0) return out;
    if (params.mode == CompressionMode::Basic) {
        for (std::size_t k = 0; k < raw.nodes.size(); ++k) {
            out.nodes[k].cols = compress_sequence(raw, raw.nodes[k].cols, params.eta);
        }
    } else {
        out.nodes[0].cols = compress_sequence(raw, raw.nodes[0].cols, params.eta);
        if (raw.rows > 1) {
            compress_half_exact_residual(raw, out, raw.lower_child(0), true, params.eta);
            compress_half_exact_residual(raw, out, raw.upper_child(0), false, params.eta);
        }
    }
    fill_subtree_cols(out);
    return out;
}

std::pair<double, double> spanning_rect_mass(const SlabTree& tree, const GridRect& rect) {
    const int mid = tree.rows / 2;
    if (tree.rows < 2 || rect.j_lo >= mid || rect.j_hi < mid) {
        throw std::invalid_argument("spanning_rect_mass: rectangle must cross the grid middle");
    }
    double red = 0.0, blue = 0.0;
    const auto add_slab = [&](int node) {
        for (const auto& c : tree.nodes[node].cols) {
            if (c.col < rect.i_lo || c.col > rect.i_hi) continue;
            red += c.red;
            blue += c.blue;
        }
    };
    // Suffix [j_lo, mid-1] in the lower half.
    int v = tree.lower_child(0);
    while (true) {
        if (tree.nodes[v].row_lo == rect.j_lo) {
            add_slab(v);
            break;
        }
        const int lc = tree.lower_child(v);
        const int uc = tree.upper_child(v);
        if (rect.j_lo > tree.nodes[lc].row_hi) {
            v = uc;
        } else {
            add_slab(uc);
            v = lc;
        }
    }
    // Prefix [mid, j_hi] in the upper half.
    v = tree.upper_child(0);
    while (true) {
        if (tree.nodes[v].row_hi == rect.j_hi) {
            add_slab(v);
            break;
        }
        const int lc = tree.lower_child(v);
        const int uc = tree.upper_child(v);
        if (rect.j_hi < tree.nodes[uc].row_lo) {
            v = lc;
        } else {
            add_slab(lc);
            v = uc;
        }
    }
    return {red, blue};
}

// ---------------------------------------------------------------------------

namespace {

bool cand_better(const IvalCand& a, const IvalCand& b) {
    if (!b.valid) return a.valid;
    if (!a.valid) return false;
    if (a.value != b.value) return a.value > b.value;
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
}

IvalCand join_cands(const IvalCand& a, const IvalCand& b, const LinearContext& ctx) {
    IvalCand out;
    out.valid = a.valid && b.valid;
    if (!out.valid) return out;
    out.red = a.red + b.red;
    out.blue = a.blue + b.blue;
    out.value = ctx.value(out.red, out.blue);
    out.lo = a.lo;
    out.hi = b.hi;
    return out;
}

}  // namespace

MaxIntervalState MaxIntervalState::column(int col, double red, double blue,
                                          const LinearContext& ctx) {
    MaxIntervalState s;
    s.span_lo = s.span_hi = col;
    s.total_red = red;
    s.total_blue = blue;
    IvalCand c;
    c.valid = true;
    c.red = red;
    c.blue = blue;
    c.value = ctx.value(red, blue);
    c.lo = c.hi = col;
    s.best = s.best_left = s.best_right = c;
    return s;
}

MaxIntervalState MaxIntervalState::zero_run(int lo, int hi) {
    MaxIntervalState s;
    s.span_lo = lo;
    s.span_hi = hi;
    IvalCand single;
    single.valid = true;
    single.lo = single.hi = lo;
    s.best = single;
    s.best_left = single;
    IvalCand suffix = single;
    suffix.hi = hi;  // folding zero columns extends the suffix candidate
    s.best_right = suffix;
    return s;
}

MaxIntervalState interval_merge(const MaxIntervalState& a, const MaxIntervalState& b,
                                const LinearContext& ctx) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.span_hi + 1 != b.span_lo) {
        throw std::invalid_argument("interval_merge: intervals must be adjacent");
    }
    MaxIntervalState s;
    s.span_lo = a.span_lo;
    s.span_hi = b.span_hi;
    s.total_red = a.total_red + b.total_red;
    s.total_blue = a.total_blue + b.total_blue;

    s.best = a.best;
    if (cand_better(b.best, s.best)) s.best = b.best;
    const IvalCand cross = join_cands(a.best_right, b.best_left, ctx);
    if (cand_better(cross, s.best)) s.best = cross;

    IvalCand a_total;
    a_total.valid = true;
    a_total.red = a.total_red;
    a_total.blue = a.total_blue;
    a_total.lo = a.span_lo;
    a_total.hi = a.span_hi;
    IvalCand b_total = a_total;
    b_total.red = b.total_red;
    b_total.blue = b.total_blue;
    b_total.lo = b.span_lo;
    b_total.hi = b.span_hi;

    s.best_left = a.best_left;
    const IvalCand left_ext = join_cands(a_total, b.best_left, ctx);
    if (cand_better(left_ext, s.best_left)) s.best_left = left_ext;

    s.best_right = b.best_right;
    const IvalCand right_ext = join_cands(a.best_right, b_total, ctx);
    if (cand_better(right_ext, s.best_right)) s.best_right = right_ext;
    return s;
}

// ---------------------------------------------------------------------------

namespace {

// Folds a strip sequence (with optional per-column extra masses from leaf
// slabs) and returns the final interval state.
struct SliceFold {
    const LinearContext& ctx;
    MaxIntervalState acc;

    explicit SliceFold(const LinearContext& c) : ctx(c) {}

    void add_block(const MaxIntervalState& st) { acc = interval_merge(acc, st, ctx); }
    void add_column(int col, double red, double blue) {
        acc = interval_merge(acc, MaxIntervalState::column(col, red, blue, ctx), ctx);
    }
};

struct LeafCursor {
    const std::vector<ActiveCol>* cols = nullptr;
    std::size_t pos = 0;

    // Sum of entries at exactly `col` (lists are strictly ascending).
    void take(int col, double& red, double& blue) {
        if (!cols) return;
        while (pos < cols->size() && (*cols)[pos].col < col) ++pos;
        if (pos < cols->size() && (*cols)[pos].col == col) {
            red += (*cols)[pos].red;
            blue += (*cols)[pos].blue;
        }
    }
};

struct StripSearcher {
    const SlabTree& tree;
    const LinearContext& ctx;
    RectCandidate best;

    StripSearcher(const SlabTree& t, const LinearContext& c) : tree(t), ctx(c) {}

    void offer(const IvalCand& cand, int j_lo, int j_hi) {
        if (!cand.valid) return;
        RectCandidate rc;
        rc.valid = true;
        rc.rect = GridRect{cand.lo, cand.hi, j_lo, j_hi};
        rc.red = cand.red;
        rc.blue = cand.blue;
        rc.value = cand.value;
        if (candidate_better(rc, best)) best = rc;
    }

    // New strip after the open set shrinks to `keep` and the given slabs are
    // absorbed. Every absorbed column is open in m (subtree activity only
    // shrinks along the recursion).
    StripState derive(const StripState& m, const std::vector<int>& keep,
                      const std::vector<const std::vector<ActiveCol>*>& absorb) const {
        std::vector<LeafCursor> cursors;
        cursors.reserve(absorb.size());
        for (const auto* a : absorb) cursors.push_back({a, 0});

        StripState out;
        out.segs.reserve(m.segs.size());
        std::size_t kp = 0;
        MaxIntervalState pending;
        bool has_pending = false;

        const auto flush = [&]() {
            if (has_pending) {
                StripSeg s;
                s.is_block = true;
                s.block = pending;
                out.segs.push_back(std::move(s));
                has_pending = false;
            }
        };
        const auto fold_block = [&](const MaxIntervalState& st) {
            pending = has_pending ? interval_merge(pending, st, ctx) : st;
            has_pending = true;
        };

        for (const auto& seg : m.segs) {
            if (seg.is_block) {
                fold_block(seg.block);
                continue;
            }
            double red = seg.red, blue = seg.blue;
            for (auto& cur : cursors) cur.take(seg.col, red, blue);
            while (kp < keep.size() && keep[kp] < seg.col) ++kp;
            if (kp < keep.size() && keep[kp] == seg.col) {
                flush();
                StripSeg s;
                s.col = seg.col;
                s.red = red;
                s.blue = blue;
                out.segs.push_back(std::move(s));
            } else {
                fold_block(MaxIntervalState::column(seg.col, red, blue, ctx));
            }
        }
        flush();
        return out;
    }

    void base_case(int t_node, int b_node, const StripState& m) {
        LeafCursor tc{&tree.nodes[t_node].cols, 0};
        LeafCursor bc{&tree.nodes[b_node].cols, 0};
        SliceFold fold(ctx);
        for (const auto& seg : m.segs) {
            if (seg.is_block) {
                fold.add_block(seg.block);
            } else {
                double red = seg.red, blue = seg.blue;
                tc.take(seg.col, red, blue);
                bc.take(seg.col, red, blue);
                fold.add_column(seg.col, red, blue);
            }
        }
        offer(fold.acc.best, tree.nodes[b_node].row_lo, tree.nodes[t_node].row_lo);
    }

    void run(int t_node, int b_node, const StripState& m) {
        if (tree.is_leaf(t_node) && tree.is_leaf(b_node)) {
            base_case(t_node, b_node, m);
            return;
        }
        const int tt = tree.upper_child(t_node);
        const int tb = tree.lower_child(t_node);
        const int bt = tree.upper_child(b_node);
        const int bb = tree.lower_child(b_node);
        const auto keep_for = [&](int x, int y) {
            return merge_sorted_ints(tree.nodes[x].subtree_cols, tree.nodes[y].subtree_cols);
        };
        // (1) top rows in T_t, bottom rows in B_b: absorb T_b and B_t.
        run(tt, bb, derive(m, keep_for(tt, bb), {&tree.nodes[tb].cols, &tree.nodes[bt].cols}));
        // (2) top rows in T_b, bottom rows in B_b: absorb B_t.
        run(tb, bb, derive(m, keep_for(tb, bb), {&tree.nodes[bt].cols}));
        // (3) top rows in T_t, bottom rows in B_t: absorb T_b.
        run(tt, bt, derive(m, keep_for(tt, bt), {&tree.nodes[tb].cols}));
        // (4) top rows in T_b, bottom rows in B_t: nothing absorbed.
        run(tb, bt, derive(m, keep_for(tb, bt), {}));
    }
};

}  // namespace

bool candidate_better(const RectCandidate& a, const RectCandidate& b) {
    if (!b.valid) return a.valid;
    if (!a.valid) return false;
    if (a.value != b.value) return a.value > b.value;
    return rect_before(a.rect, b.rect);
}

StripState initial_strip(const SlabTree& tree, int t_node, int b_node) {
    const std::vector<int> open = [&] {
        std::vector<int> out;
        std::set_union(tree.nodes[t_node].subtree_cols.begin(),
                       tree.nodes[t_node].subtree_cols.end(),
                       tree.nodes[b_node].subtree_cols.begin(),
                       tree.nodes[b_node].subtree_cols.end(), std::back_inserter(out));
        return out;
    }();
    StripState m;
    int next = 0;
    for (int col : open) {
        if (col > next) {
            StripSeg s;
            s.is_block = true;
            s.block = MaxIntervalState::zero_run(next, col - 1);
            m.segs.push_back(std::move(s));
        }
        StripSeg s;
        s.col = col;
        m.segs.push_back(std::move(s));
        next = col + 1;
    }
    if (next < tree.cols) {
        StripSeg s;
        s.is_block = true;
        s.block = MaxIntervalState::zero_run(next, tree.cols - 1);
        m.segs.push_back(std::move(s));
    }
    return m;
}

RectCandidate strip_search(const SlabTree& tree, int t_node, int b_node, StripState m,
                           const LinearContext& ctx) {
    if (tree.nodes[t_node].level != tree.nodes[b_node].level) {
        throw std::invalid_argument("strip_search: slabs must sit at the same level");
    }
    if (tree.nodes[b_node].row_hi >= tree.nodes[t_node].row_lo) {
        throw std::invalid_argument("strip_search: bottom slab must lie below the top slab");
    }
    StripSearcher searcher(tree, ctx);
    searcher.run(t_node, b_node, m);
    return searcher.best;
}

namespace {

void max_rect_recurse(const SlabTree& tree, int node, const LinearContext& ctx,
                      RectCandidate& best) {
    if (tree.is_leaf(node)) {
        SliceFold fold(ctx);
        int next = 0;
        for (const auto& c : tree.nodes[node].cols) {
            if (c.col > next) fold.add_block(MaxIntervalState::zero_run(next, c.col - 1));
            fold.add_column(c.col, c.red, c.blue);
            next = c.col + 1;
        }
        if (next < tree.cols) fold.add_block(MaxIntervalState::zero_run(next, tree.cols - 1));
        const int row = tree.nodes[node].row_lo;
        if (fold.acc.best.valid) {
            RectCandidate rc;
            rc.valid = true;
            rc.rect = GridRect{fold.acc.best.lo, fold.acc.best.hi, row, row};
            rc.red = fold.acc.best.red;
            rc.blue = fold.acc.best.blue;
            rc.value = fold.acc.best.value;
            if (candidate_better(rc, best)) best = rc;
        }
        return;
    }
    const int lo = tree.lower_child(node);
    const int up = tree.upper_child(node);
    max_rect_recurse(tree, lo, ctx, best);
    max_rect_recurse(tree, up, ctx, best);
    const RectCandidate spanning =
        strip_search(tree, up, lo, initial_strip(tree, up, lo), ctx);
    if (candidate_better(spanning, best)) best = spanning;
}

}  // namespace

RectCandidate max_linear_rect_tree(const SlabTree& tree, const LinearContext& ctx) {
    RectCandidate best;
    max_rect_recurse(tree, 0, ctx, best);
    return best;
}

double basic_eta(double eps, int rows) {
    if (eps <= 0.0 || rows <= 1) return 0.0;
    return eps / (2.0 * std::log2(static_cast<double>(rows)));
}

std::pair<GridRect, double> max_linear_rect(const Grid& g, const DiscrepancyFn& f, double eps,
                                            CompressionMode mode) {
    const auto lin = as_linear(f);
    if (!lin) throw std::invalid_argument("max_linear_rect: phi must be linear");
    SlabTree tree = compress(build_slab_tree(g), {basic_eta(eps, g.r), mode});
    const LinearContext ctx{lin->alpha, lin->beta, g.red_n, g.blue_n};
    const RectCandidate best = max_linear_rect_tree(tree, ctx);
    return {best.rect, best.value};
}

std::pair<GridRect, double> max_abs_rect(const Grid& g, double eps) {
    SlabTree tree = compress(build_slab_tree(g), {basic_eta(eps, g.r), CompressionMode::Basic});
    const LinearContext plus{1.0, -1.0, g.red_n, g.blue_n};
    const LinearContext minus{-1.0, 1.0, g.red_n, g.blue_n};
    const RectCandidate a = max_linear_rect_tree(tree, plus);
    const RectCandidate b = max_linear_rect_tree(tree, minus);
    if (candidate_better(b, a)) return {b.rect, b.value};
    return {a.rect, a.value};
}

}  // namespace maxdisc
