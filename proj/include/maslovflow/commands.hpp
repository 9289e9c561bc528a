#pragma once

// Command implementations behind the maslovflow executable. Each returns a
// JSON report; `pass` holds exactly when every asserted integer equality holds.

#include <string>

#include "maslovflow/config.hpp"
#include "maslovflow/specflow.hpp"

namespace mf {

struct CommandOutput {
  Json report;
  std::string csv;  // branch data from spectra and sflow
  bool pass = false;
};

CommandOutput cmd_maslov(const ProblemConfig& c);
CommandOutput cmd_sflow(const ProblemConfig& c);
CommandOutput cmd_spectra(const ProblemConfig& c);
CommandOutput cmd_verify(const ProblemConfig& c, const std::string& which);

// Dispatch by name; `which` is only used by "verify". Adds the timing field.
CommandOutput run_command(const std::string& command, const ProblemConfig& c, const std::string& which = "");

// Report without the timing field, for determinism comparisons.
Json strip_timing(Json report);

std::string format_csv_number(double v);
// Header `lambda,mu,multiplicity`, one row per eigenvalue, windows in the given order.
std::string branch_csv(const std::vector<SpectrumWindow>& windows);

}  // namespace mf
