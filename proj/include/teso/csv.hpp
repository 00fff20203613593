#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "teso/bench.hpp"
#include "teso/optimizer.hpp"

namespace teso {

// Shortest decimal string that parses back to the identical double;
// locale-independent, always a '.' decimal point.
std::string format_full(double v);

// Six significant digits, for human-facing summaries.
std::string format_sig6(double v);

// Header: t,mode,status,x,mean,std,best_so_far,eta. Numbers at full
// precision; mean/std cells empty for skipped trials; multi-dimensional
// candidates join coordinates with ';' so the column count stays fixed.
void write_trace_csv(std::ostream& out, const std::vector<TrialRecord>& trace);

// Header: t,mean_best,se. Full precision.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve);

// Fixed-width table, one record per algorithm: final best mean and std,
// average objective over the trailing evaluated window, mean wall time.
void write_summary_text(std::ostream& out, const SuiteSummary& summary);

std::string mode_name(TrialMode mode);
std::string status_name(TrialStatus status);

}  // namespace teso
