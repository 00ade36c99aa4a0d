#pragma once

#include <vector>

#include "dvr/poly.hpp"

namespace dvr {

enum class MonoOrder { GrevLex, Lex };

struct GroebnerBasis {
  RingPtr ring;
  std::vector<int> vars;  // slots treated as variables (in order, for Lex: first is largest)
  MonoOrder order = MonoOrder::GrevLex;
  std::vector<Poly> basis;  // reduced, monic

  bool is_unit() const;
  Poly normal_form(const Poly& f) const;
  bool contains(const Poly& f) const { return normal_form(f).is_zero(); }
  // Krull dimension of the affine variety (-1 for the empty set).
  int dimension() const;
  std::vector<Exps> leading_monomials() const;
  // Standard monomials; only meaningful when dimension() == 0.
  std::vector<Exps> standard_monomials() const;
  // Number of standard monomials of total degree n (for homogeneous ideals).
  long hilbert_function(int n) const;
};

GroebnerBasis groebner(const std::vector<Poly>& gens, const std::vector<int>& vars,
                       MonoOrder order = MonoOrder::GrevLex);

// A Galois orbit of solutions, realized over a simple extension L of the base field.
struct SolutionOrbit {
  Embedding emb;              // base field -> L
  std::vector<Scalar> coords;  // one representative, indexed like `vars`
  int orbit_size = 1;          // [L : K] restricted to the orbit
  bool rational() const { return orbit_size == 1; }
};

// Solve a zero-dimensional system; returns one representative per orbit.
// Throws Unresolved when the system is not zero-dimensional.
std::vector<SolutionOrbit> solve_zero_dim(const std::vector<Poly>& gens, const std::vector<int>& vars);

}  // namespace dvr
