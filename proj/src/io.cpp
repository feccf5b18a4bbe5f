#include "maxdisc/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace maxdisc {

namespace {

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        return pos == s.size() && std::isfinite(out);
    } catch (...) {
        return false;
    }
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

void apply_jitter(LabeledPoints& pts) {
    double scale = 1.0;
    const auto grow = [&](const Point2& p) {
        scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    };
    for (const auto& p : pts.reds) grow(p);
    for (const auto& p : pts.blues) grow(p);
    const double unit = 1e-9 * scale;
    std::map<std::pair<double, double>, int> seen;
    const auto displace = [&](Point2& p) {
        int& k = seen[{p.x, p.y}];
        if (k > 0) {
            p.x += k * unit;
            p.y += k * unit;
        }
        ++k;
    };
    for (auto& p : pts.reds) displace(p);
    for (auto& p : pts.blues) displace(p);
}

}  // namespace

LabeledPoints ingest_csv_stream(std::istream& in, bool jitter) {
    LabeledPoints pts;
    std::string line;
    std::size_t lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string row = trim(line);
        if (row.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(row);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(trim(field));
        double x = 0.0, y = 0.0;
        if (first_content && (fields.size() < 3 || !parse_double(fields[0], x))) {
            // header line
            first_content = false;
            continue;
        }
        first_content = false;
        if (fields.size() != 3 || !parse_double(fields[0], x) || !parse_double(fields[1], y)) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": malformed row '" +
                                     row + "' (expected x,y,label)");
        }
        const std::string& label = fields[2];
        if (label == "r" || label == "R") {
            pts.reds.push_back({x, y});
        } else if (label == "b" || label == "B") {
            pts.blues.push_back({x, y});
        } else {
            throw std::runtime_error("line " + std::to_string(lineno) + ": unknown label '" +
                                     label + "' (expected r or b)");
        }
    }
    if (pts.reds.empty() || pts.blues.empty()) {
        throw std::runtime_error("input needs at least one point of each color");
    }
    if (jitter) apply_jitter(pts);
    return pts;
}

LabeledPoints ingest_csv(const std::string& path, bool jitter) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    try {
        return ingest_csv_stream(in, jitter);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_points_csv(const LabeledPoints& pts, std::ostream& out) {
    out << "x,y,label\n";
    out.precision(17);
    for (const auto& p : pts.reds) out << p.x << ',' << p.y << ",r\n";
    for (const auto& p : pts.blues) out << p.x << ',' << p.y << ",b\n";
}

namespace {

nlohmann::json region_json(const Region& region) {
    nlohmann::json j;
    if (const auto* rect = std::get_if<Rectangle>(&region)) {
        j["shape"] = "rectangle";
        j["x_lo"] = rect->x_lo;
        j["x_hi"] = rect->x_hi;
        j["y_lo"] = rect->y_lo;
        j["y_hi"] = rect->y_hi;
    } else if (const auto* hp = std::get_if<Halfplane>(&region)) {
        j["shape"] = "halfplane";
        j["a"] = hp->a;
        j["b"] = hp->b;
        j["c"] = hp->c;
    } else if (const auto* disk = std::get_if<Disk>(&region)) {
        j["shape"] = "disk";
        j["cx"] = disk->center.x;
        j["cy"] = disk->center.y;
        j["radius"] = disk->radius;
    }
    return j;
}

}  // namespace

std::string region_to_json(const Region& region) { return region_json(region).dump(); }

std::string scan_result_to_json(const ScanResult& res) {
    nlohmann::json j;
    j["region"] = region_json(res.region);
    j["complement"] = res.complement;
    j["mu_red"] = res.mu_red;
    j["mu_blue"] = res.mu_blue;
    j["value"] = res.value;
    j["seconds"] = res.seconds;
    j["method"] = res.method;
    return j.dump();
}

}  // namespace maxdisc
