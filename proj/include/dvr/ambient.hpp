#pragma once

#include <climits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dvr/linalg.hpp"
#include "dvr/poly.hpp"

namespace dvr {

enum class AmbientKind { P3, WP2111, WP3211, DeterminantalP6 };

struct AmbientSpace {
  AmbientKind kind = AmbientKind::P3;
  RingPtr ring;
  // DeterminantalP6 only: symmetric 3x3 matrix whose 2x2 minors cut the ambient.
  std::vector<std::vector<Poly>> matrix;

  static AmbientSpace make(AmbientKind kind, Field f);
  int degree() const;  // degree of the anticanonical hypersurface
  std::string tag() const;
  std::vector<int> weight_one_slots() const;
  std::vector<Poly> minors() const;
};

AmbientKind parse_ambient_kind(const std::string& tag);

// x_i := images[i](x'), x'_i := inverse[i](x).
struct CoordinateChange {
  RingPtr ring;
  std::vector<Poly> images;
  std::vector<Poly> inverse;

  static CoordinateChange identity(const RingPtr& r);
  // x = A x' on the listed slots, other slots fixed.
  static CoordinateChange linear(const RingPtr& r, const std::vector<int>& slots, const Matrix& A);
  // Checks the inverse and weight compatibility.
  static CoordinateChange from_images(const RingPtr& r, std::vector<Poly> images, std::vector<Poly> inverse);

  Poly apply(const Poly& F) const;
  Poly apply_inverse(const Poly& F) const;
  CoordinateChange then(const CoordinateChange& next) const;
  bool is_identity() const;
  bool is_consistent() const;
  std::string to_string() const;
};

enum class CenterKind { Plane, Line, Point };

struct Center {
  CenterKind kind = CenterKind::Plane;
  std::vector<Poly> forms;

  static Center plane(const Poly& l);
  static Center line(const Poly& l1, const Poly& l2);
  static Center point(const RingPtr& r, const std::vector<Scalar>& coords);
  static Center from_forms(std::vector<Poly> forms);
  int dim() const;
  std::string kind_name() const;
  std::string to_string() const;
};

struct StandardCenter {
  CoordinateChange change;
  std::vector<int> slots;  // the center is {x'_s = 0 : s in slots}
};

// Linear change making the center a coordinate subspace; identity when it already is.
StandardCenter move_center_to_standard(const Center& c, const AmbientSpace& A);

constexpr int kAxialInfinite = INT_MAX;

// k with t^k u^2 in F (u = slot 0); kAxialInfinite when absent up to `truncation`.
int axial_multiplicity(const Poly& F, int truncation = 12);

struct TransformStep {
  std::string rule;                 // filled by the flowchart
  std::string center;               // printable center or weight recipe
  std::vector<int> weights;         // per geometric slot
  int t_removed = 0;                // c
  int mu_before = 0;                // multiplicity along the center, in (forms, t)
  int n_before = -1, n_after = -1;  // k-irreducible fiber components
  int k_before = -1, k_after = -1;  // axial multiplicity (WP2111)
  bool trivial = false;
  bool criterion_ok = true;  // c >= sum of weights (weighted transforms)
  std::vector<std::pair<std::string, int>> discrepancy;
  CoordinateChange change;         // standardizing change applied first
  std::vector<Poly> substitution;  // composite x_i -> images in the output coordinates
  Poly before, after;
};

std::pair<Poly, TransformStep> elementary_transform(const Poly& F, const Center& c, const AmbientSpace& A);
std::pair<Poly, TransformStep> weighted_transform(const Poly& F, const std::vector<int>& weights);

// F(substitution) == t^c * F+.
bool check_generic_fiber_identity(const Poly& F, const TransformStep& s);

struct DeterminantalModel {
  AmbientSpace ambient;      // DeterminantalP6 with the t-deformed matrix
  CoordinateChange change;   // on P(2,1,1,1), bringing S1 to x1^2 - x2*x3
  Poly S1, S2, G;            // in the new coordinates
  Poly FA;                   // F written on the embedded P(2,1,1,1), before the transformation
  Poly Fplus;                // z1*L + a*u^2 + Q + t*R
  Poly L, Q, R;
  Scalar u2_coeff;
  bool special_fiber_ok = false;  // minors at t = 0 give the cone over the rational normal quartic
};

DeterminantalModel construct_determinantal_model(const Poly& F);

// Images of u, z1..z6 as polynomials on P(2,1,1,1).
std::vector<Poly> veronese_images(const RingPtr& wp, const RingPtr& p6);

}  // namespace dvr
