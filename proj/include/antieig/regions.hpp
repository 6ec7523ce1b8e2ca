#pragma once

#include <string>
#include <vector>

#include "antieig/types.hpp"

namespace antieig {

struct SectorSpec {
    double p = 0.0;
    double half_angle_rad = 0.0;  // arccos(|p-2|/p), in (0, pi/2]
    double slope = 0.0;           // 2 sqrt(p-1)/|p-2|, +inf at p = 2
};

SectorSpec sector_spec(double p);

struct KappaWindow {
    double p = 0.0;
    double C_L = 0.0;  // in (0, 1)
    double C_R = 0.0;  // in (1, inf), C_L * C_R = 1
};

// Admissible spectral-condition-number window for Hermitian PD matrices:
// C_{L,R}(p) = (p^2 + 4p - 4 -/+ 4p sqrt(p-1)) / (p-2)^2. p = 2 is an input
// error (the window is all of (1, inf) there).
KappaWindow kappa_window(double p);

// (|p-2| / (2 sqrt(p-1))) |Im alpha| < Re alpha
bool cone_test_scalar(Complex alpha, double p);

// |arg lambda| < arccos(|p-2|/p); 0 is never in the open sector.
bool sector_membership(Complex lambda, double p);

enum class RegionKind { sector, kappa };

struct RegionRow {
    double p = 0.0;
    std::vector<double> values;    // half_angle, or C_L, C_R
    bool unbounded = false;        // kappa at p = 2
};

struct RegionTable {
    RegionKind kind = RegionKind::sector;
    std::vector<std::string> header;
    std::vector<RegionRow> rows;
};

struct PGrid {
    double p_min = 0.0;
    double p_max = 0.0;
    int count = 0;
};

RegionTable emit_region_table(RegionKind kind, const PGrid& grid);

// CSV: header line then numeric rows, decimal points, 12 significant digits.
std::string region_table_csv(const RegionTable& table);

}  // namespace antieig
