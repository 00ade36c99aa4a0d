#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "dvr/field.hpp"

namespace dvr {

inline constexpr const char* kReportVersion = "dvr-report/1";

struct JobSpec {
  std::string name;
  std::string ambient = "P3";
  std::string field = "q";
  std::string mode = "cubic";  // cubic | dp2 | classify | rigidity
  std::string equation;
  int cap = 25;
  uint64_t seed = 1;
  int truncation = 12;  // t-adic precision for the axial multiplicity
  bool verify = false;
  std::string point;  // classify: projective coordinates "0,0,0,1"; empty means every singular point
  int count = 100;    // rigidity: members per sweep
  int box = 10;       // rigidity: coefficient box
};

// "q" or "fp:<p>" with p a prime >= 5.
Field parse_field_spec(const std::string& s);

struct JobResult {
  nlohmann::json report;
  int exit_code = 0;  // 0 done, 1 error, 2 unresolved or cap exceeded
};

JobResult run_job(const JobSpec& spec);

// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string report_text(const nlohmann::json& report);

}  // namespace dvr
