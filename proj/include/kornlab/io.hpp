#pragma once

#include "kornlab/constants.hpp"
#include "kornlab/verify.hpp"

#include <string>
#include <vector>

namespace kornlab {

/// Identity-suite record for JSON/CSV emission.
struct ResidualRecord {
  std::string identity;  // "hodge-sym", "hodge-skw", "korn-identity", "adjointness"
  std::string family;
  Real h = 0.0;
  Real residual = 0.0;
  std::uint64_t seed = 0;
};

std::string reports_to_json(const std::vector<VerificationReport>& reports);
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

struct EstimateRecord {
  std::string shape;
  KornEstimate estimate;
};

std::string estimates_to_json(const std::vector<EstimateRecord>& records);
std::string estimates_to_csv(const std::vector<EstimateRecord>& records);

std::string residuals_to_json(const std::vector<ResidualRecord>& records);
std::string residuals_to_csv(const std::vector<ResidualRecord>& records);

/// Tidy sweep table: fixed column set, one row per cell.
struct SweepRow {
  std::string vary;    // the swept parameter name
  Real vary_value = 0.0;
  std::string shape;
  Real p = 2.0;
  Real h = 0.0;
  std::string mode;
  Real value = 0.0;
  std::string bound;
  Real residual = 0.0;
  std::uint64_t seed = 0;
};

std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_json(const std::vector<SweepRow>& rows);

void write_file(const std::string& path, const std::string& content);

}  // namespace kornlab
