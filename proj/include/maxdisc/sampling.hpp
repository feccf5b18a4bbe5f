#pragma once

#include <cstdint>
#include <vector>

#include "maxdisc/core.hpp"

namespace maxdisc {

// Parameters for the iid samplers. `C` scales the sample-size formulas; the
// theory fixes only the asymptotics, so the constant is kept configurable.
struct SampleParams {
    double eps = 0.1;
    double delta = 0.05;
    int vc_dim = 2;
    std::uint64_t seed = 0;
    double C = 0.5;
};

std::size_t eps_sample_size(const SampleParams& params);
std::size_t eps_net_size(const SampleParams& params);
std::size_t weak_cover_sample_size(double eps, double delta, int dim);

// Uniform iid sample (with replacement) of size ceil(C*(nu + ln(1/delta))/eps^2).
// When the computed size reaches |pts| the input is returned verbatim.
std::vector<Point2> eps_sample(const std::vector<Point2>& pts, const SampleParams& params);

// Uniform iid sample of size ceil(C*(nu/eps)*ln(1/(eps*delta))); same cap rule.
std::vector<Point2> eps_net(const std::vector<Point2>& pts, const SampleParams& params);

// Uniform iid sample of size ceil((dim^2/eps)*ln(dim/delta)); same cap rule.
// Induces a weak covering of halfspace ranges in `dim` dimensions.
std::vector<Point2> halfplane_weak_cover_sample(const std::vector<Point2>& pts, double eps,
                                                double delta, std::uint64_t seed, int dim = 2);

// Balanced median partition used by the two-level sampler. Splits alternate
// between x and y; each split divides a cell's points as evenly as possible
// (ties broken by index order after a stable coordinate sort).
struct KdPartition {
    std::vector<std::vector<Point2>> leaves;
    int depth = 0;
};

KdPartition kd_partition(const std::vector<Point2>& pts, int leaves_pow2);

struct KdSampleParams {
    double eps = 0.1;
    double delta = 0.05;
    std::uint64_t seed = 0;
    double C = 0.5;       // first-level sample constant
    double Cprime = 4.0;  // second-level target-size constant
    double c = 1.0;       // leaf-count exponent constant
    int vc_dim = 4;
};

// Number of kd leaves: 2^ceil(c*2*log2(log2(1/eps))), or 0 when eps is too
// large for a two-level pass (callers then fall back to a plain sample).
int kd_leaf_count(double eps, double c);

// Two-level sample: an eps/2-sample is partitioned into kd cells and an equal
// number of points is drawn from each cell. Output size is roughly
// Cprime / (eps^2 * log2^2(1/eps)), smaller than the plain eps-sample.
std::vector<Point2> kd_two_level_sample(const std::vector<Point2>& pts,
                                        const KdSampleParams& params);

std::vector<Point2> kd_two_level_sample(const std::vector<Point2>& pts, double eps, double delta,
                                        std::uint64_t seed);

}  // namespace maxdisc
