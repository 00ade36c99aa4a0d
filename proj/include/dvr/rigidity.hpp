#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dvr/duval.hpp"

namespace dvr {

// Normal form of a non-Gorenstein Del Pezzo fibration of degree d in P(2,1,1,1) or P(3,2,1,1).
struct RigidityProfile {
  int d = 0;      // 2 for P(2,1,1,1), 1 for P(3,2,1,1)
  int index = 0;  // 2, 3 or 6
  int k = 0;
  int s = -1;  // second exponent, index 6 only
  std::string shape;
  AmbientSpace ambient;
  Poly F;
  CoordinateChange change;  // normalizing change; apply to F to get `normalized`
  Poly normalized;
  std::map<std::string, Poly> pieces;  // special-fiber pieces "Q0", "G0", "H0", "L0", "C0"
  std::string note;
};

struct ProfileMatch {
  bool matched = false;
  RigidityProfile profile;
  std::string reason;  // why there is no match
};

ProfileMatch match_profile(const Poly& F, const AmbientSpace& A);

struct GenericityFlag {
  std::string name;
  bool value = false;
  std::string detail;
};

std::vector<GenericityFlag> genericity_check(const RigidityProfile& p);
bool all_generic(const std::vector<GenericityFlag>& flags);

struct MemberPoint {
  FiberPoint point;
  SurfaceGermVerdict verdict;
  bool quotient = false;  // fixed point of a cyclic group acting on the ambient
  std::string note;
};

struct MemberReport {
  Poly hyperplane;
  Poly surface;  // equation of B in the weighted plane left after eliminating one coordinate
  std::vector<MemberPoint> points;
  bool all_du_val = true;
  std::string summary() const;  // "A1, A2" or "smooth"
};

// B = (hyperplane = 0), with the hyperplane a linear form in the weight-one variables.
// Throws DomainError when the generic fiber of B is singular.
MemberReport classify_member(const RigidityProfile& p, const Poly& hyperplane, uint64_t seed = 7,
                             const SurfaceGermOptions& opt = {});

struct SweepOptions {
  int count = 100;
  uint64_t seed = 1;
  int box = 10;  // coefficients drawn from [-box, box]
  SurfaceGermOptions germ;
};

struct SweepReport {
  bool ran = false;
  std::string reason;  // why the sweep did not run
  int members = 0;
  int du_val = 0;
  int rejected = 0;  // members with singular generic fiber, re-sampled
  std::vector<std::string> violations;  // members with a singularity that is not Du Val
  std::vector<std::string> unresolved;  // members the classifier could not finish
  bool all_du_val() const { return ran && du_val == members; }
  std::vector<std::pair<std::string, std::string>> samples;  // hyperplane, singularities or reason
};

SweepReport rigidity_sweep(const RigidityProfile& p, const SweepOptions& opt = {});

}  // namespace dvr
