#pragma once

#include <string>

#include "rsynth/benchmarks.hpp"
#include "rsynth/evolution.hpp"

namespace rsynth {

/// "3/5 = 0.6".
std::string format_fitness(const Fitness& f);
/// Shortest round-trip-ish decimal, at most six significant digits.
std::string format_decimal(double x);

/// Key/value header followed by the trajectory table. Wall time is left out
/// unless asked for, so identical runs give identical bytes.
std::string format_run_report(const RunReport& r, bool include_time = false);

/// Tab-separated: problem, runs, successes, failures, success_percent.
std::string format_batch_table(const BatchReport& b);
/// Human-readable success bars plus the quartile row.
std::string format_batch_summary(const BatchReport& b, bool include_time = false);
std::string format_quartiles(const Quartiles& q);

std::string run_report_name(const RunReport& r);
/// Common stem of the batch files; the table adds .tsv, the summary .txt.
std::string batch_report_stem(const BatchReport& b);

}  // namespace rsynth
