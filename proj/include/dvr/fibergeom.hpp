#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dvr/ambient.hpp"
#include "dvr/groebner.hpp"

namespace dvr {

// Three planes over an extension E of k whose product is the special fiber.
struct PlaneTriple {
  Embedding emb;  // k -> E
  std::vector<Poly> planes;
};

struct FiberReport {
  int n_components = 0;
  bool reduced = true;
  std::vector<PolyFactor> components;
  std::vector<Poly> planes_over_k;
  std::optional<PlaneTriple> geometric_plane_triple;
};

FiberReport fiber_report(const Poly& F, const AmbientSpace& A);

// Three conjugate planes, when the cubic form F0 splits so over k-bar.
std::optional<PlaneTriple> find_plane_triple(const Poly& F0, uint64_t seed = 0x1ab);

// Largest mu with F in (forms, t)^mu.
int multiplicity_along(const Poly& F, const Center& c, const AmbientSpace& A);
int generic_multiplicity_along_plane(const Poly& F, const Center& plane, const AmbientSpace& A);
int generic_multiplicity_along_line(const Poly& F, const Center& line, const AmbientSpace& A);

// A point of the special fiber, possibly over an extension L of k.
struct FiberPoint {
  Embedding emb;              // k -> L
  std::vector<Scalar> coords;  // projective coordinates over L
  int orbit_size = 1;
  bool vertex = false;  // a coordinate point of a heavy slot (a quotient point of the ambient)
  bool rational() const { return orbit_size == 1; }
  std::string to_string() const;
};

FiberPoint rational_point(const RingPtr& r, const std::vector<Scalar>& coords);

// Local equation at p: affine chart with the chosen weight-one coordinate set to 1 and p moved to
// the origin; for the vertex of a weighted ambient, the chart u = 1 (a quotient chart).
struct LocalGerm {
  Poly f;
  bool quotient_chart = false;
};
LocalGerm local_equation(const Poly& F, const FiberPoint& p);

int multiplicity_at_point(const Poly& F, const FiberPoint& p);

struct SingularLocus {
  bool contains_curve = false;
  std::vector<FiberPoint> points;
  std::vector<Poly> witness;  // Groebner basis of the singular scheme when it contains a curve
};

// Singular points of X: points of the special fiber where F0, its partials and F1 vanish.
SingularLocus singular_locus(const Poly& F, const AmbientSpace& A);

struct ExceptionalEvidence {
  bool result = false;
  bool conjugate_planes = false;  // geometric fiber is three planes, none over k
  bool singular_along_c = false;  // F1 and the Jacobian of F0 vanish on each pairwise intersection
  bool double_triple_point = false;
  std::optional<PlaneTriple> triple;
  std::optional<FiberPoint> triple_point;
  std::string reason;
};

ExceptionalEvidence exceptional_pattern_check(const Poly& F, const AmbientSpace& A);

enum class QuarticCase { UFactor, LinearFactor, TwoSmoothConics, GorensteinDoubleLine, Index2Line, Normal, Unclassified };

std::string quartic_case_name(QuarticCase c);

struct QuarticNormalForm {
  QuarticCase tag = QuarticCase::Unclassified;
  CoordinateChange change;  // apply to F to reach the normal form
  std::string reason;
};

QuarticNormalForm quartic_normal_form(const Poly& F);
// Re-derives the tag from the witness change.
bool verify_quartic_normal_form(const Poly& F, const QuarticNormalForm& nf);

// Helpers shared with the flowcharts.
CoordinateChange change_making_first(const RingPtr& r, const std::vector<int>& slots, const Poly& l);
CoordinateChange change_moving_point_to_last(const RingPtr& r, const std::vector<int>& slots,
                                             const std::vector<Scalar>& p);
UPoly to_upoly(const Poly& p, int slot);
bool is_smooth_conic(const Poly& q);

}  // namespace dvr
