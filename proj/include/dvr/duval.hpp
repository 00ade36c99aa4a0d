#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dvr/fibergeom.hpp"

namespace dvr {

enum class AdeFamily { Smooth, A, D, E, NotDuVal };

struct DualCurve {
  std::string kind;  // "line" or "conic" in the blowup chart where it was born
  int self_intersection = -2;
  std::vector<int> neighbors;
};

struct SurfaceGermVerdict {
  AdeFamily family = AdeFamily::Smooth;
  int index = 0;  // n for A_n, D_n, E_n
  std::string reason;  // NotDuVal only
  int resolution_depth = 0;
  int blowups = 0;
  std::vector<DualCurve> dual_graph;
  std::string fast_path;  // rule that fired on the original germ, if any
  std::string name() const;  // "A3", "E6", "smooth", "not Du Val"
  // Degeneration order: smooth < A_n < A_{n+1} < D_n < E_n < not Du Val.
  int rank() const;
};

struct SurfaceGermOptions {
  int max_blowups = 12;
  int field_degree_cap = 12;
};

// f is a germ at the origin in two geometric variables and t.
SurfaceGermVerdict classify_surface_germ(const Poly& f, const SurfaceGermOptions& opt = {});

struct FastPathVerdict {
  AdeFamily family = AdeFamily::NotDuVal;
  int index = 0;  // 6 for the E6 rule, otherwise 0 (index not determined)
  std::string rule;
};

// Recognition shortcuts on a double point: reduced tangent cone gives A; a double plane with a
// cubic that is not a cube gives D; a cube with a quartic term along its kernel gives E6.
std::optional<FastPathVerdict> surface_fast_path(const Poly& f);

// Dimension of the local Jacobian algebra, computed on jets of increasing order.
int milnor_number(const Poly& f, int jet_order = 10);

// Whether the singular locus of f = 0 near the origin is at most the origin.
bool is_isolated_singularity(const Poly& f);

// Dual graph type, when it is an ADE Dynkin diagram.
std::optional<std::pair<AdeFamily, int>> ade_type_of_graph(const std::vector<DualCurve>& g);

struct CdvVerdict {
  std::string type;  // "cA", "cD", "cE", "NotCdv", "Smooth", "QuotientHalf111"
  int index = 0;
  int sections_tried = 0;
  bool agreement = true;
  std::vector<SurfaceGermVerdict> sections;
  std::string name() const;  // "cA2", "cD4", "cE6", ...
  bool is_cdv() const { return type == "cA" || type == "cD" || type == "cE" || type == "Smooth"; }
};

// f is a 3-fold germ at the origin in three geometric variables and t.
CdvVerdict classify_threefold_germ(const Poly& f, uint64_t seed, int samples = 5, const SurfaceGermOptions& opt = {});
CdvVerdict classify_threefold_point(const Poly& F, const FiberPoint& p, uint64_t seed, int samples = 5,
                                    const SurfaceGermOptions& opt = {});

enum class ToricChart { Half1110, Half0111, Half1011 };
ToricChart parse_toric_chart(const std::string& s);  // "1/2(1,1,1,0)" etc.
std::string toric_chart_name(ToricChart c);

struct Index2Match {
  bool matches = false;
  int shape = 0;  // 1..4 in the order xy+g(z^2,t), x^2+y^2+g, x^2+y^3+yzt+g, x^2+y^3+yg+h
  std::string shape_name;
  std::string reason;
};

// Syntactic index-two terminal shapes; germ variables are the chart coordinates (x, y, z, t).
Index2Match terminal_index2_match(const Poly& germ, ToricChart chart);

struct SingularityReport {
  FiberPoint point;
  CdvVerdict verdict;
  std::string note;
};

struct StandardCheck {
  bool standard = false;
  std::string reason;
  std::vector<SingularityReport> report;
};

// The vertex (1,0,0,0) of a quartic in P(2,1,1,1): quotient point, terminal index-two point, or a
// nonterminal point together with the weights that improve it.
struct VertexAnalysis {
  int k = 0;  // axial multiplicity; the vertex lies on U iff k >= 1
  bool terminal = true;
  std::string shape;
  std::string reason;
  std::vector<int> weights;  // when not terminal
  std::optional<CoordinateChange> change;
};

VertexAnalysis analyze_vertex(const Poly& F);

// Seeded probe: the Jacobian ideal of F at a few nonzero values of t cuts only the origin of the cone.
bool generic_fiber_smooth(const Poly& F, uint64_t seed = 7);

StandardCheck standard_model_check(const Poly& F, const AmbientSpace& A, uint64_t seed = 17,
                                   const SurfaceGermOptions& opt = {});

}  // namespace dvr
