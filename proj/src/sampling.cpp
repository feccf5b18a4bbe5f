#include "maxdisc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace maxdisc {

namespace {

void check_unit_interval(double eps, double delta) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("sampling: eps must lie in (0, 1)");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("sampling: delta must lie in (0, 1)");
    }
}

std::vector<Point2> draw_iid(const std::vector<Point2>& pts, std::size_t count,
                             std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    std::vector<Point2> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(pts[pick(rng)]);
    }
    return out;
}

std::vector<Point2> sample_or_verbatim(const std::vector<Point2>& pts, std::size_t count,
                                       std::uint64_t seed) {
    if (pts.empty()) {
        throw std::invalid_argument("sampling: empty input");
    }
    if (count >= pts.size()) {
        return pts;
    }
    std::mt19937_64 rng(seed);
    return draw_iid(pts, count, rng);
}

}  // namespace

std::size_t eps_sample_size(const SampleParams& p) {
    check_unit_interval(p.eps, p.delta);
    const double s = p.C * (p.vc_dim + std::log(1.0 / p.delta)) / (p.eps * p.eps);
    return static_cast<std::size_t>(std::ceil(s));
}

std::size_t eps_net_size(const SampleParams& p) {
    check_unit_interval(p.eps, p.delta);
    const double s = p.C * (p.vc_dim / p.eps) * std::log(1.0 / (p.eps * p.delta));
    return static_cast<std::size_t>(std::ceil(s));
}

std::size_t weak_cover_sample_size(double eps, double delta, int dim) {
    check_unit_interval(eps, delta);
    if (dim < 1) throw std::invalid_argument("sampling: dim must be positive");
    const double d = dim;
    return static_cast<std::size_t>(std::ceil((d * d / eps) * std::log(d / delta)));
}

std::vector<Point2> eps_sample(const std::vector<Point2>& pts, const SampleParams& params) {
    return sample_or_verbatim(pts, eps_sample_size(params), params.seed);
}

std::vector<Point2> eps_net(const std::vector<Point2>& pts, const SampleParams& params) {
    return sample_or_verbatim(pts, eps_net_size(params), params.seed);
}

std::vector<Point2> halfplane_weak_cover_sample(const std::vector<Point2>& pts, double eps,
                                                double delta, std::uint64_t seed, int dim) {
    return sample_or_verbatim(pts, weak_cover_sample_size(eps, delta, dim), seed);
}

KdPartition kd_partition(const std::vector<Point2>& pts, int leaves_pow2) {
    if (pts.empty()) {
        throw std::invalid_argument("kd_partition: empty input");
    }
    if (leaves_pow2 < 1 || (leaves_pow2 & (leaves_pow2 - 1)) != 0) {
        throw std::invalid_argument("kd_partition: leaf count must be a positive power of two");
    }
    KdPartition part;
    part.leaves.assign(1, pts);
    while (static_cast<int>(part.leaves.size()) < leaves_pow2) {
        const bool split_x = (part.depth % 2) == 0;
        std::vector<std::vector<Point2>> next;
        next.reserve(part.leaves.size() * 2);
        for (auto& cell : part.leaves) {
            std::stable_sort(cell.begin(), cell.end(), [&](const Point2& a, const Point2& b) {
                return split_x ? a.x < b.x : a.y < b.y;
            });
            const std::size_t mid = (cell.size() + 1) / 2;
            next.emplace_back(cell.begin(), cell.begin() + mid);
            next.emplace_back(cell.begin() + mid, cell.end());
        }
        part.leaves = std::move(next);
        ++part.depth;
    }
    return part;
}

int kd_leaf_count(double eps, double c) {
    const double inv = 1.0 / eps;
    if (inv <= 2.0) return 0;
    const double exponent = std::ceil(c * 2.0 * std::log2(std::log2(inv)));
    if (exponent < 1.0) return 0;
    if (exponent > 20.0) return 1 << 20;
    return 1 << static_cast<int>(exponent);
}

std::vector<Point2> kd_two_level_sample(const std::vector<Point2>& pts,
                                        const KdSampleParams& params) {
    check_unit_interval(params.eps, params.delta);
    if (pts.empty()) {
        throw std::invalid_argument("kd_two_level_sample: empty input");
    }

    SampleParams first;
    first.eps = params.eps / 2.0;
    first.delta = params.delta;
    first.vc_dim = params.vc_dim;
    first.seed = params.seed;
    first.C = params.C;

    int z = kd_leaf_count(params.eps, params.c);
    if (z < 2) {
        SampleParams plain = first;
        plain.eps = params.eps;
        return eps_sample(pts, plain);
    }

    std::vector<Point2> level1 = eps_sample(pts, first);
    while (z > 1 && static_cast<std::size_t>(z) > level1.size()) z /= 2;
    if (z < 2) {
        SampleParams plain = first;
        plain.eps = params.eps;
        return eps_sample(pts, plain);
    }

    const double lg = std::log2(1.0 / params.eps);
    const double target = params.Cprime / (params.eps * params.eps * lg * lg);
    const std::size_t s_target = static_cast<std::size_t>(std::ceil(target));
    const std::size_t per_leaf = (s_target + z - 1) / z;

    KdPartition part = kd_partition(level1, z);
    std::mt19937_64 rng(params.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Point2> out;
    out.reserve(per_leaf * part.leaves.size());
    for (const auto& leaf : part.leaves) {
        if (leaf.empty()) continue;
        auto drawn = draw_iid(leaf, per_leaf, rng);
        out.insert(out.end(), drawn.begin(), drawn.end());
    }
    return out;
}

std::vector<Point2> kd_two_level_sample(const std::vector<Point2>& pts, double eps, double delta,
                                        std::uint64_t seed) {
    KdSampleParams params;
    params.eps = eps;
    params.delta = delta;
    params.seed = seed;
    return kd_two_level_sample(pts, params);
}

}  // namespace maxdisc
