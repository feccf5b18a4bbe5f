#pragma once

#include <utility>
#include <vector>

#include "maxdisc/core.hpp"
#include "maxdisc/grid.hpp"

namespace maxdisc {

// One retained column of a compressed slab, masses in grid count units.
struct ActiveCol {
    int col = 0;
    double red = 0.0;
    double blue = 0.0;
};

enum class CompressionMode {
    Basic,          // independent left-to-right accumulation per slab
    ExactResidual,  // each slab compressed against its chain's residual;
                    // grid-spanning queries see error bounded by the threshold
                    // per half instead of per slab
};

// eta is a fraction of combined normalized mass (red fraction + blue
// fraction); eta = 0 keeps every nonzero column.
struct CompressionParams {
    double eta = 0.0;
    CompressionMode mode = CompressionMode::Basic;
};

struct SlabNode {
    int level = 0;
    int row_lo = 0, row_hi = 0;            // inclusive grid rows
    std::vector<ActiveCol> cols;           // ascending column index
    std::vector<int> subtree_cols;         // ascending union of column indices
                                           // active anywhere in this subtree
};

// Perfect binary tree over grid rows (heap layout: children of k are 2k+1
// lower, 2k+2 upper; leaves occupy [rows-1, 2*rows-1) in row order).
struct SlabTree {
    int rows = 0;
    int cols = 0;
    double red_n = 1.0, blue_n = 1.0;
    std::vector<SlabNode> nodes;

    bool is_leaf(int k) const { return k >= rows - 1; }
    int lower_child(int k) const { return 2 * k + 1; }
    int upper_child(int k) const { return 2 * k + 2; }
};

struct CellMass {
    int row = 0, col = 0;
    double red = 0.0, blue = 0.0;
};

// Raw tree: leaf column lists are the nonzero cells of each row; inner nodes
// merge their children. Requires a power-of-two row count.
SlabTree build_slab_tree(const Grid& g);

// Sparse construction used when a dense grid would be wasteful; rows_pow2
// must be a power of two covering all cell rows.
SlabTree slab_tree_from_cells(int rows_pow2, int cols, std::vector<CellMass> cells,
                              double red_n, double blue_n);

SlabTree compress(const SlabTree& raw, const CompressionParams& params);

// Mass of a grid-spanning rectangle (j_lo in the lower half, j_hi in the
// upper half) read off the tree's canonical slab decomposition; pairs with
// the ExactResidual guarantee.
std::pair<double, double> spanning_rect_mass(const SlabTree& tree, const GridRect& rect);

// ---------------------------------------------------------------------------
// Mergeable 1-d maximum-interval summaries.

// A candidate subinterval: column span plus its mass, scored lazily through a
// LinearContext so equal masses compare identically everywhere.
struct IvalCand {
    bool valid = false;
    double red = 0.0, blue = 0.0;
    double value = 0.0;
    int lo = 0, hi = -1;
};

struct MaxIntervalState {
    int span_lo = 0, span_hi = -1;  // covered columns; empty when span_hi < span_lo
    double total_red = 0.0, total_blue = 0.0;
    IvalCand best;        // max-value nonempty subinterval
    IvalCand best_left;   // max-value prefix
    IvalCand best_right;  // max-value suffix

    bool empty() const { return span_hi < span_lo; }

    static MaxIntervalState column(int col, double red, double blue, const LinearContext& ctx);
    static MaxIntervalState zero_run(int lo, int hi);
};

// a must end immediately left of b. Associative; candidates tie-break to the
// lexicographically smaller span.
MaxIntervalState interval_merge(const MaxIntervalState& a, const MaxIntervalState& b,
                                const LinearContext& ctx);

// ---------------------------------------------------------------------------
// Strip-constrained search.

// Ordered cover of the column range: open columns carry accumulated strip
// mass; maximal runs of folded columns are pre-merged interval states.
struct StripSeg {
    bool is_block = false;
    int col = 0;
    double red = 0.0, blue = 0.0;
    MaxIntervalState block;
};

struct StripState {
    std::vector<StripSeg> segs;
};

// Strip whose open columns are exactly the subtree-active columns of the two
// slabs, zero blocks elsewhere; used at the top of each spanning problem.
StripState initial_strip(const SlabTree& tree, int t_node, int b_node);

struct RectCandidate {
    bool valid = false;
    GridRect rect;
    double red = 0.0, blue = 0.0;  // mass units
    double value = 0.0;
};

// Better-candidate ordering: value first, then rect_before.
bool candidate_better(const RectCandidate& a, const RectCandidate& b);

// Maximum-value rectangle with top row in slab t_node and bottom row in slab
// b_node, crossing the strip M between them.
RectCandidate strip_search(const SlabTree& tree, int t_node, int b_node, StripState m,
                           const LinearContext& ctx);

// Divide-and-conquer maximizer over all rectangles of the (compressed) tree.
RectCandidate max_linear_rect_tree(const SlabTree& tree, const LinearContext& ctx);

// Convenience: build + compress (eta = eps / (2 log2 r), or 0 when eps = 0)
// and run the tree maximizer. With eps = 0 the result value matches the exact
// grid maximum.
std::pair<GridRect, double> max_linear_rect(const Grid& g, const DiscrepancyFn& f, double eps,
                                            CompressionMode mode = CompressionMode::Basic);

// Runs linear-plus and linear-minus and keeps the better result.
std::pair<GridRect, double> max_abs_rect(const Grid& g, double eps);

double basic_eta(double eps, int rows);

}  // namespace maxdisc
