#pragma once

#include <string>

#include "ardlkit/pipeline.hpp"

namespace ardlkit::report {

/** Machine-readable form. Numbers serialize shortest-round-trip, so
 *  from_json(to_json(r)) reproduces every numeric field exactly. */
std::string to_json(const pipeline::run_report& rep);
pipeline::run_report from_json(const std::string& text);
pipeline::run_report load_json(const std::string& path);

/** Human-readable form: Table 2/3/4 analogues with significance stars. */
std::string to_text(const pipeline::run_report& rep);

/** Write report.json and report.txt under out_dir; when plots_dir is
 *  non-empty, also write per-model CUSUM/CUSUMSQ paths as
 *  model<N>_cusum.csv / model<N>_cusumsq.csv (columns year,path,lower,upper). */
void write_files(const pipeline::run_report& rep, const std::string& out_dir,
                 const std::string& plots_dir = "");

}  // namespace ardlkit::report
