#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vode/verify.hpp"

namespace vode {

/// Overrides for one case run; unset fields take the case's defaults.
struct CaseConfig {
    std::string name;
    std::optional<int> order;
    std::optional<double> tolerance;
    std::optional<int> subdivisions;
};

/// A 2-D rectangle for plotting (chart coordinates of a section, or phase
/// coordinates for the pendulum).
struct EnclosureRow {
    int piece_id;
    Interval x;
    Interval y;
};

struct CaseResult {
    Certificate certificate;
    std::vector<EnclosureRow> rows;
};

const std::vector<std::string>& case_names();

/// Runs one case. Failed inequalities and aborted pieces are recorded in the
/// certificate; DomainError signals an unknown case or invalid overrides.
CaseResult run_case(const CaseConfig& cfg);

/// CSV with header case,piece_id,x_lo,x_hi,y_lo,y_hi and one row per rectangle.
std::string enclosures_csv(const std::string& case_name, const std::vector<EnclosureRow>& rows);

// Nonrigorous helpers exposed for testing.

/// First return of (0, y, 0) to {x = 0} for the Michelson field at parameter c,
/// by an adaptive Runge-Kutta integration; returns (y, z) on the section.
std::pair<double, double> michelson_return(double y, double c);

/// Zeros of y ↦ π_z P_c(0, y, 0) on (lo, hi], located by scanning with step
/// `scan` and bisection.
std::vector<double> michelson_symmetric_zeros(double c, double lo, double hi, double scan);

}  // namespace vode
