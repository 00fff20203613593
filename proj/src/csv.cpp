#include "teso/csv.hpp"

#include <charconv>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace teso {
namespace {

std::string join_coordinates(const Candidate& c) {
  std::string out;
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    if (i > 0) out += ';';
    out += format_full(c.x[i]);
  }
  return out;
}

}  // namespace

std::string format_full(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_sig6(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

std::string mode_name(TrialMode mode) {
  return mode == TrialMode::Intensify ? "Intensify" : "Diversify";
}

std::string status_name(TrialStatus status) {
  switch (status) {
    case TrialStatus::Evaluated: return "Evaluated";
    case TrialStatus::SkippedTabu: return "SkippedTabu";
    case TrialStatus::AspirationAccepted: return "AspirationAccepted";
  }
  return "Evaluated";
}

void write_trace_csv(std::ostream& out, const std::vector<TrialRecord>& trace) {
  out << "t,mode,status,x,mean,std,best_so_far,eta\n";
  for (const TrialRecord& rec : trace) {
    out << rec.t << ',' << mode_name(rec.mode) << ',' << status_name(rec.status)
        << ',' << join_coordinates(rec.candidate) << ',';
    if (rec.mean) out << format_full(*rec.mean);
    out << ',';
    if (rec.std_dev) out << format_full(*rec.std_dev);
    out << ',' << format_full(rec.best_so_far) << ',' << format_full(rec.eta)
        << '\n';
  }
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
  out << "t,mean_best,se\n";
  for (const CurvePoint& p : curve) {
    out << p.t << ',' << format_full(p.mean_best) << ',' << format_full(p.se)
        << '\n';
  }
}

void write_summary_text(std::ostream& out, const SuiteSummary& summary) {
  out << "benchmark summary\n"
      << "base_seed = " << summary.base_seed << "\n"
      << "n_macro = " << summary.n_macro << "\n\n";
  out << std::left << std::setw(14) << "algorithm" << std::right
      << std::setw(16) << "final_best_mean" << std::setw(16) << "final_best_std"
      << std::setw(24) << "avg_last_50 (mean+-std)" << std::setw(14)
      << "mean_time_s" << "\n";
  for (const AlgorithmSummary& alg : summary.algorithms) {
    const std::string avg =
        format_sig6(alg.avg_last_50_mean) + " +- " + format_sig6(alg.avg_last_50_std);
    out << std::left << std::setw(14) << alg.name << std::right << std::setw(16)
        << format_sig6(alg.final_best_mean) << std::setw(16)
        << format_sig6(alg.final_best_std) << std::setw(24) << avg
        << std::setw(14) << format_sig6(alg.mean_wall_seconds) << "\n";
    if (alg.n_completed != alg.n_macro) {
      out << "  warning: " << (alg.n_macro - alg.n_completed) << " of "
          << alg.n_macro << " macro-replications failed\n";
      for (const MacroResult& r : alg.macros) {
        if (r.failed) out << "  macro " << r.macro_index << ": " << r.error << "\n";
      }
    }
  }
}

}  // namespace teso
