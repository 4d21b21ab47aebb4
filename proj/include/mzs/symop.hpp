#pragma once

#include "mzs/grid.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace mzs {

// Sampled coefficient function together with its spatial derivatives.
//
// The commutator rules below need products and derivatives of their inputs
// (up to third order per rule, deeper when brackets are nested), so each
// function carries a "jet": jet[a] = samples of d^a f / dx^a. Rule outputs
// are combined via the Leibniz rule on jets, which keeps nested brackets
// closed and exact whenever the leaves were created from analytic
// derivatives. Leaves without analytic derivatives get their jet filled by
// spectral differentiation at construction.
struct SymFunc {
  GridPtr grid;
  std::vector<ArrayXd> jet; // jet[a] = d^a f; jet.size() >= 1
  std::string label;

  int depth() const { return static_cast<int>(jet.size()) - 1; }
  const ArrayXd& values() const { return jet[0]; }
  const ArrayXd& dx(int a) const {
    require(a >= 0 && a <= depth(), "SymFunc: derivative order " + std::to_string(a) +
                                        " exceeds stored jet depth " + std::to_string(depth()));
    return jet[static_cast<std::size_t>(a)];
  }
};

// Jet built from explicit derivative samples (analytic path).
SymFunc sym_func_jet(GridPtr grid, std::vector<ArrayXd> jet, std::string label);

// Jet filled by spectral differentiation of the samples up to `depth`.
SymFunc sym_func_spectral(GridPtr grid, const ArrayXd& samples, int depth, std::string label);

// The constant function 1 (so <1>_2 is the plain second derivative).
SymFunc sym_func_one(GridPtr grid, int depth = 0);

// One symmetrised term  coeff * <f>_k  where  <f>_k = (f o d^k + d^k o f)/2.
struct SymTerm {
  cplx coeff;
  int k = 0;
  SymFunc f;
};

struct SymOpSum {
  GridPtr grid;
  std::vector<SymTerm> terms;

  SymOpSum() = default;
  explicit SymOpSum(GridPtr g) : grid(std::move(g)) {}

  SymOpSum& add(cplx coeff, int k, SymFunc f);
};

SymOpSum operator+(const SymOpSum& a, const SymOpSum& b);
SymOpSum scaled(const SymOpSum& a, cplx s);

// Commutator [A, B] simplified through the closed-form rule table
//   (k_A,k_B) in {(1,0),(1,1),(2,0),(2,1),(2,2),(3,0),(4,0)}
// plus antisymmetric transposes and the trivial diagonal pair (0,0).
// Any other pair throws; there is deliberately no generic fallback.
SymOpSum bracket(const SymTerm& a, const SymTerm& b);
SymOpSum bracket(const SymOpSum& a, const SymOpSum& b);

// Left-nested fold: [[...[s_0, s_1], s_2]...], collecting after each level.
SymOpSum nested_bracket(const std::vector<SymOpSum>& seq);

// Merge terms with equal k and identical f (exact sample equality; jets are
// truncated to the shallower depth), dropping zero coefficients.
SymOpSum collect(const SymOpSum& s);

// Exact rational used for the O(h^a eps^b) size bookkeeping.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1) : num(n), den(d) {
    require(d != 0, "rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }
  Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
  Rational operator-(const Rational& o) const { return {num * o.den - o.num * den, den * o.den}; }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  std::string str() const;
};

// A term's magnitude O(h^{h_power} eps^{eps_power}).
struct SizeTag {
  Rational eps_power;
  Rational h_power;
};

// Declared orders of the pieces the caller assembled the term from: the
// scalar coefficient contributes h^{coeff_h} eps^{coeff_eps}, the function f
// contributes h^{f_h} (line integrals are O(h), O(h^3), ... per their (j,k)).
struct SizeMeta {
  Rational coeff_h;
  Rational coeff_eps;
  Rational f_h;
};

// eps_power = coeff_eps - k (each <.>_k costs eps^{-k} in the semiclassical
// scaling), h_power = coeff_h + f_h.
SizeTag size_of(const SymTerm& term, const SizeMeta& meta);

// Debug form: one "coeff * <label>_k" line per term.
std::string to_string(const SymOpSum& s);

} // namespace mzs
