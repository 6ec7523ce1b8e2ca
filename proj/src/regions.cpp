#include "antieig/regions.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "antieig/dissipativity.hpp"

namespace antieig {

namespace {

void check_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw InputError("p must lie in (1, infinity)");
}

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace

SectorSpec sector_spec(double p) {
    check_p(p);
    SectorSpec s;
    s.p = p;
    s.half_angle_rad = std::acos(lp_threshold(p));
    s.slope = (p == 2.0) ? std::numeric_limits<double>::infinity()
                         : 2.0 * std::sqrt(p - 1.0) / std::abs(p - 2.0);
    return s;
}

KappaWindow kappa_window(double p) {
    check_p(p);
    if (p == 2.0) throw InputError("kappa_window: window is unbounded at p = 2");
    KappaWindow w;
    w.p = p;
    // C_R has no cancellation; C_L = 1/C_R since the two roots multiply to
    // (p-2)^4 / (p-2)^4 = 1. The difference form for C_L loses every digit
    // near p = 2.
    double d = (p - 2.0) * (p - 2.0);
    double root = 4.0 * p * std::sqrt(p - 1.0);
    w.C_R = (p * p + 4.0 * p - 4.0 + root) / d;
    w.C_L = 1.0 / w.C_R;
    return w;
}

bool cone_test_scalar(Complex alpha, double p) {
    check_p(p);
    return (std::abs(p - 2.0) / (2.0 * std::sqrt(p - 1.0))) * std::abs(alpha.imag()) <
           alpha.real();
}

bool sector_membership(Complex lambda, double p) {
    check_p(p);
    if (lambda == Complex(0.0)) return false;
    return std::abs(std::arg(lambda)) < std::acos(lp_threshold(p));
}

RegionTable emit_region_table(RegionKind kind, const PGrid& grid) {
    if (!(grid.p_min > 1.0) || !(grid.p_max >= grid.p_min) || grid.count < 1 ||
        !std::isfinite(grid.p_max))
        throw InputError("emit_region_table: grid must lie within (1, infinity)");

    RegionTable table;
    table.kind = kind;
    table.header = (kind == RegionKind::sector) ? std::vector<std::string>{"p", "half_angle_rad"}
                                                : std::vector<std::string>{"p", "C_L", "C_R"};
    for (int k = 0; k < grid.count; ++k) {
        double p = (grid.count == 1)
                       ? grid.p_min
                       : grid.p_min + (grid.p_max - grid.p_min) * k / (grid.count - 1);
        RegionRow row;
        row.p = p;
        if (kind == RegionKind::sector) {
            row.values = {sector_spec(p).half_angle_rad};
        } else if (p == 2.0) {
            row.unbounded = true;
        } else {
            KappaWindow w = kappa_window(p);
            row.values = {w.C_L, w.C_R};
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string region_table_csv(const RegionTable& table) {
    std::string out;
    for (size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const RegionRow& row : table.rows) {
        out += fmt12(row.p);
        if (row.unbounded) {
            for (size_t i = 1; i < table.header.size(); ++i) out += ",unbounded";
        } else {
            for (double v : row.values) {
                out += ',';
                out += fmt12(v);
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace antieig
