#pragma once

#include <string>

#include "boss/simulation.hpp"

namespace boss {

// Serialized reports deliberately omit wall-clock runtimes so that reruns
// with the same seed produce byte-identical files regardless of thread
// count; timings are echoed to the console instead.

std::string sim_report_to_json(const SimReport& report);
std::string sim_report_to_csv(const SimReport& report);
std::string sim_report_table(const SimReport& report);  // console echo with timings

std::string loo_report_to_json(const LooReport& report);
std::string loo_report_table(const LooReport& report);

std::string lbs_report_to_json(const LbsCompareReport& report);
std::string lbs_report_table(const LbsCompareReport& report);

std::string selection_to_json(const SelectionResult& sel, const Dataset& data);

void write_file(const std::string& path, const std::string& content);

}  // namespace boss
