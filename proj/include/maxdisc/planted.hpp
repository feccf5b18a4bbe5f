#pragma once

#include <cstdint>
#include <string>

#include "maxdisc/core.hpp"

namespace maxdisc {

enum class Shape { Rectangle, Halfplane, Disk };

Shape shape_from_string(const std::string& s);
std::string shape_to_string(Shape s);

// Synthetic instance: uniform points in the unit square, a planted region
// holding ~data_fraction of them, labels drawn red at rate_in inside and
// rate_out outside.
struct PlantedSpec {
    std::size_t m = 10000;
    Shape shape = Shape::Rectangle;
    double data_fraction = 0.01;
    double rate_in = 0.08;
    double rate_out = 0.01;
    std::uint64_t seed = 0;
};

struct PlantedInstance {
    LabeledPoints points;
    Region region;
};

PlantedInstance generate_planted(const PlantedSpec& spec);

}  // namespace maxdisc
