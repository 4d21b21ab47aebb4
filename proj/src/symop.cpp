#include "mzs/symop.hpp"

#include "mzs/spectral.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace mzs {

SymFunc sym_func_jet(GridPtr grid, std::vector<ArrayXd> jet, std::string label) {
  require(grid != nullptr && !jet.empty(), "sym_func_jet: need at least the samples");
  for (const ArrayXd& a : jet)
    require(a.size() == grid->n, "sym_func_jet: derivative sample count != grid size");
  return {std::move(grid), std::move(jet), std::move(label)};
}

SymFunc sym_func_spectral(GridPtr grid, const ArrayXd& samples, int depth, std::string label) {
  require(grid != nullptr && samples.size() == grid->n, "sym_func_spectral: bad samples");
  require(depth >= 0, "sym_func_spectral: negative depth");
  std::vector<ArrayXd> jet;
  jet.reserve(static_cast<std::size_t>(depth) + 1);
  jet.push_back(samples);
  GridFunction g{grid, samples};
  for (int a = 1; a <= depth; ++a) {
    g = deriv(g, 1);
    jet.push_back(g.v);
  }
  return {std::move(grid), std::move(jet), std::move(label)};
}

SymFunc sym_func_one(GridPtr grid, int depth) {
  std::vector<ArrayXd> jet;
  jet.push_back(ArrayXd::Ones(grid->n));
  for (int a = 1; a <= depth; ++a) jet.push_back(ArrayXd::Zero(grid->n));
  return {std::move(grid), std::move(jet), "1"};
}

SymOpSum& SymOpSum::add(cplx coeff, int k, SymFunc f) {
  require(k >= 0 && k <= 6, "SymOpSum: derivative order out of range");
  require(f.grid != nullptr, "SymOpSum: term without grid");
  if (!grid) grid = f.grid;
  require_same_grid(grid, f.grid);
  terms.push_back({coeff, k, std::move(f)});
  return *this;
}

SymOpSum operator+(const SymOpSum& a, const SymOpSum& b) {
  SymOpSum out = a;
  for (const SymTerm& t : b.terms) out.add(t.coeff, t.k, t.f);
  return out;
}

SymOpSum scaled(const SymOpSum& a, cplx s) {
  SymOpSum out = a;
  for (SymTerm& t : out.terms) t.coeff *= s;
  return out;
}

namespace {

// One product (d^da f)(d^db g) entering a rule output function.
struct JetPiece {
  double c;
  int da;
  int db;
};

// One <.>_kout output of a rule.
struct RuleOut {
  int kout;
  std::vector<JetPiece> pieces;
};

// Closed-form commutators [<f>_kA, <g>_kB], one entry per supported pair:
//   [<f>1,<g>0] = <f g'>0
//   [<f>1,<g>1] = <f g' - f' g>1
//   [<f>2,<g>0] = 2<f g'>1
//   [<f>2,<g>1] = <2 f g' - f' g>2 - 1/2<2 f' g'' + f g'''>0
//   [<f>2,<g>2] = 2<f g' - f' g>3 + <2 f'' g' - 2 f' g'' + f''' g - f g'''>1
//   [<f>3,<g>0] = 3<f g'>2 - 1/2<3 f' g'' + f g'''>0
//   [<f>4,<g>0] = 4<f g'>3 - 2<3 f' g'' + f g'''>1
const std::vector<RuleOut>* rule_for(int ka, int kb) {
  static const std::vector<RuleOut> r10 = {{0, {{1.0, 0, 1}}}};
  static const std::vector<RuleOut> r11 = {{1, {{1.0, 0, 1}, {-1.0, 1, 0}}}};
  static const std::vector<RuleOut> r20 = {{1, {{2.0, 0, 1}}}};
  static const std::vector<RuleOut> r21 = {{2, {{2.0, 0, 1}, {-1.0, 1, 0}}},
                                           {0, {{-1.0, 1, 2}, {-0.5, 0, 3}}}};
  static const std::vector<RuleOut> r22 = {{3, {{2.0, 0, 1}, {-2.0, 1, 0}}},
                                           {1, {{2.0, 2, 1}, {-2.0, 1, 2}, {1.0, 3, 0}, {-1.0, 0, 3}}}};
  static const std::vector<RuleOut> r30 = {{2, {{3.0, 0, 1}}},
                                           {0, {{-1.5, 1, 2}, {-0.5, 0, 3}}}};
  static const std::vector<RuleOut> r40 = {{3, {{4.0, 0, 1}}},
                                           {1, {{-6.0, 1, 2}, {-2.0, 0, 3}}}};
  if (ka == 1 && kb == 0) return &r10;
  if (ka == 1 && kb == 1) return &r11;
  if (ka == 2 && kb == 0) return &r20;
  if (ka == 2 && kb == 1) return &r21;
  if (ka == 2 && kb == 2) return &r22;
  if (ka == 3 && kb == 0) return &r30;
  if (ka == 4 && kb == 0) return &r40;
  return nullptr;
}

// Leibniz: derivatives of sum_i c_i (d^{da_i} f)(d^{db_i} g) up to the depth
// both jets support.
SymFunc combine(const SymFunc& f, const SymFunc& g, const std::vector<JetPiece>& pieces,
                const std::string& label) {
  require_same_grid(f.grid, g.grid);
  int depth = std::numeric_limits<int>::max();
  for (const JetPiece& p : pieces)
    depth = std::min(depth, std::min(f.depth() - p.da, g.depth() - p.db));
  require(depth >= 0, "bracket: stored derivative depth too shallow for rule (have f:" +
                          std::to_string(f.depth()) + ", g:" + std::to_string(g.depth()) + ")");

  std::vector<ArrayXd> jet;
  jet.reserve(static_cast<std::size_t>(depth) + 1);
  for (int m = 0; m <= depth; ++m) {
    ArrayXd v = ArrayXd::Zero(f.grid->n);
    for (const JetPiece& p : pieces) {
      // d^m [ (d^da f)(d^db g) ] = sum_r binom(m,r) (d^{da+r} f)(d^{db+m-r} g)
      double binom = 1.0;
      for (int r = 0; r <= m; ++r) {
        v += (p.c * binom) * (f.dx(p.da + r) * g.dx(p.db + m - r));
        binom = binom * (m - r) / (r + 1.0);
      }
    }
    jet.push_back(std::move(v));
  }
  return sym_func_jet(f.grid, std::move(jet), label);
}

std::string piece_label(const SymFunc& f, const SymFunc& g, const std::vector<JetPiece>& pieces) {
  std::ostringstream os;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const JetPiece& p = pieces[i];
    if (i > 0) os << (p.c >= 0 ? "+" : "");
    if (p.c != 1.0) os << p.c << "*";
    os << (p.da ? "d" + std::to_string(p.da) + "(" + f.label + ")" : f.label);
    os << "*";
    os << (p.db ? "d" + std::to_string(p.db) + "(" + g.label + ")" : g.label);
  }
  return os.str();
}

} // namespace

SymOpSum bracket(const SymTerm& a, const SymTerm& b) {
  require_same_grid(a.f.grid, b.f.grid);
  SymOpSum out(a.f.grid);
  if (a.k == 0 && b.k == 0) return out; // diagonal operators commute

  const std::vector<RuleOut>* rule = rule_for(a.k, b.k);
  double sign = 1.0;
  const SymFunc* f = &a.f;
  const SymFunc* g = &b.f;
  if (!rule) {
    rule = rule_for(b.k, a.k);
    sign = -1.0;
    std::swap(f, g);
  }
  require(rule != nullptr, "bracket: order pair (" + std::to_string(a.k) + "," +
                               std::to_string(b.k) + ") not in rule table");

  const cplx c = sign * a.coeff * b.coeff;
  for (const RuleOut& ro : *rule)
    out.add(c, ro.kout, combine(*f, *g, ro.pieces, piece_label(*f, *g, ro.pieces)));
  return out;
}

SymOpSum bracket(const SymOpSum& a, const SymOpSum& b) {
  require(a.grid != nullptr && b.grid != nullptr, "bracket: empty operand");
  require_same_grid(a.grid, b.grid);
  SymOpSum out(a.grid);
  for (const SymTerm& ta : a.terms)
    for (const SymTerm& tb : b.terms) {
      SymOpSum piece = bracket(ta, tb);
      for (SymTerm& t : piece.terms) out.terms.push_back(std::move(t));
    }
  return collect(out);
}

SymOpSum nested_bracket(const std::vector<SymOpSum>& seq) {
  require(!seq.empty(), "nested_bracket: empty sequence");
  SymOpSum acc = seq.front();
  for (std::size_t i = 1; i < seq.size(); ++i) acc = bracket(acc, seq[i]);
  return acc;
}

SymOpSum collect(const SymOpSum& s) {
  SymOpSum out(s.grid);
  for (const SymTerm& t : s.terms) {
    bool merged = false;
    for (SymTerm& o : out.terms) {
      if (o.k != t.k) continue;
      if (o.f.values().size() != t.f.values().size()) continue;
      if (!(o.f.values() == t.f.values()).all()) continue;
      o.coeff += t.coeff;
      if (t.f.depth() < o.f.depth()) o.f.jet.resize(t.f.jet.size());
      merged = true;
      break;
    }
    if (!merged) out.terms.push_back(t);
  }
  auto is_zero = [](const SymTerm& t) { return t.coeff == cplx(0.0, 0.0); };
  out.terms.erase(std::remove_if(out.terms.begin(), out.terms.end(), is_zero), out.terms.end());
  return out;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

SizeTag size_of(const SymTerm& term, const SizeMeta& meta) {
  return {meta.coeff_eps - Rational(term.k), meta.coeff_h + meta.f_h};
}

std::string to_string(const SymOpSum& s) {
  std::ostringstream os;
  for (const SymTerm& t : s.terms) {
    os << "(" << t.coeff.real();
    if (t.coeff.imag() >= 0) os << "+";
    os << t.coeff.imag() << "i) * <" << t.f.label << ">_" << t.k << "\n";
  }
  return os.str();
}

} // namespace mzs
