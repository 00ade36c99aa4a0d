#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dvr/duval.hpp"

namespace dvr {

enum class Outcome { Standard, Exceptional, NeedsP6, CapExceeded, CycleDetected };

std::string outcome_name(Outcome o);  // "standard", "exceptional", ...

struct Trace {
  std::string program;  // "cubic" or "dp2"
  AmbientSpace ambient;
  Poly input, final;
  std::vector<TransformStep> steps;
  std::vector<std::string> states;  // hex hash of the normalized equation, one per visited state
  Outcome outcome = Outcome::Standard;
  std::string diagnosis;
  std::optional<StandardCheck> standard;
  std::optional<ExceptionalEvidence> exceptional;
  std::optional<DeterminantalModel> determinantal;
  uint64_t seed = 0;
};

struct FlowchartOptions {
  int cap = 25;
  uint64_t seed = 1;
  SurfaceGermOptions germ;
};

// Canonical form of a state: t-content removed and leading coefficient 1.
Poly normalize_state(const Poly& F);
std::string state_hash(const Poly& F);

// Cubic surfaces over O in P3.
Trace run_cubic(const Poly& F, const FlowchartOptions& opt = {});
// Quartics in P(2,1,1,1): degree-two Del Pezzo fibrations.
Trace run_dp2(const Poly& F, const FlowchartOptions& opt = {});

// Candidate centers of the cubic program, canonically ordered.
std::vector<Center> cubic_plane_candidates(const Poly& F);
std::vector<Center> cubic_line_candidates(const Poly& F, uint64_t seed);
std::vector<Center> cubic_point_candidates(const Poly& F);

struct TraceVerification {
  bool ok = true;
  std::vector<std::string> failures;  // "step i: ..."
};

TraceVerification verify_trace(const Trace& trace, const Poly& original);

}  // namespace dvr
