#include "corrauct/hardness.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "corrauct/mpc.hpp"
#include "corrauct/solve2.hpp"

namespace corrauct {

int CatFormula::literal_count() const {
  int total = 0;
  for (const CatClause& c : clauses) total += static_cast<int>(c.literals.size());
  return total;
}

int CatFormula::category_size(int category) const {
  switch (category) {
    case 0: return n_x;
    case 1: return n_y;
    case 2: return n_z;
    default: throw std::out_of_range("category");
  }
}

void CatFormula::validate() const {
  if (n_x < 0 || n_y < 0 || n_z < 0) throw std::invalid_argument("negative variable count");
  for (const CatClause& clause : clauses) {
    if (clause.literals.empty() || clause.literals.size() > 3) {
      throw std::invalid_argument("clause must have 1..3 literals");
    }
    bool seen[3] = {false, false, false};
    for (const CatLiteral& lit : clause.literals) {
      if (lit.category < 0 || lit.category > 2) throw std::invalid_argument("bad category");
      if (seen[lit.category]) {
        throw std::invalid_argument("clause repeats a category");
      }
      seen[lit.category] = true;
      if (lit.variable < 1 || lit.variable > category_size(lit.category)) {
        throw std::invalid_argument("variable index out of range");
      }
    }
  }
}

Cnf parse_dimacs(const std::string& text) {
  Cnf cnf;
  std::istringstream in(text);
  std::string line;
  std::vector<int> current;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      int nclauses = 0;
      if (!(ls >> p >> fmt >> cnf.num_vars >> nclauses) || fmt != "cnf") {
        throw std::invalid_argument("malformed DIMACS header");
      }
      have_header = true;
      continue;
    }
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty()) throw std::invalid_argument("empty clause");
        cnf.clauses.push_back(current);
        current.clear();
      } else {
        if (std::abs(lit) > cnf.num_vars) throw std::invalid_argument("literal out of range");
        current.push_back(lit);
      }
    }
  }
  if (!current.empty()) cnf.clauses.push_back(current);
  if (!have_header) throw std::invalid_argument("missing DIMACS header");
  for (const auto& clause : cnf.clauses) {
    if (clause.size() > 3) throw std::invalid_argument("clause with more than 3 literals");
  }
  return cnf;
}

CatFormula max3sat_to_catsat(const Cnf& cnf) {
  CatFormula out;
  out.n_x = out.n_y = out.n_z = cnf.num_vars;
  for (const auto& clause : cnf.clauses) {
    if (clause.size() > 3) throw std::invalid_argument("clause with more than 3 literals");
    CatClause cat;
    for (std::size_t pos = 0; pos < clause.size(); ++pos) {
      int lit = clause[pos];
      cat.literals.push_back({static_cast<int>(pos), std::abs(lit), lit > 0});
    }
    out.clauses.push_back(std::move(cat));
  }
  // One copy per category; the implication cycle keeps them equal.
  for (int v = 1; v <= cnf.num_vars; ++v) {
    out.clauses.push_back({{{0, v, false}, {1, v, true}}});
    out.clauses.push_back({{{1, v, false}, {2, v, true}}});
    out.clauses.push_back({{{2, v, false}, {0, v, true}}});
  }
  out.validate();
  return out;
}

namespace {

int var_slot(const CatFormula& f, int category, int variable) {
  int base = 0;
  if (category > 0) base += f.n_x;
  if (category > 1) base += f.n_y;
  return base + variable - 1;
}

int satisfied_count(const CatFormula& f, unsigned long mask) {
  int count = 0;
  for (const CatClause& clause : f.clauses) {
    for (const CatLiteral& lit : clause.literals) {
      bool value = (mask >> var_slot(f, lit.category, lit.variable)) & 1u;
      if (value == lit.positive) {
        ++count;
        break;
      }
    }
  }
  return count;
}

}  // namespace

int max_satisfiable(const CatFormula& formula) {
  formula.validate();
  const int vars = formula.total_vars();
  if (vars > 20) throw SizeGuardError("max_satisfiable guard: " + std::to_string(vars) + " vars");
  int best = 0;
  for (unsigned long mask = 0; mask < (1ul << vars); ++mask) {
    best = std::max(best, satisfied_count(formula, mask));
    if (best == formula.m()) break;
  }
  return best;
}

bool segments_intersect(const Segment& a, const Segment& b) {
  if (a.axis == b.axis) {
    for (int d = 0; d < 3; ++d) {
      if (d != a.axis && a.apex[d] != b.apex[d]) return false;
    }
    return true;  // suffixes on one line always share the far end
  }
  int third = 3 - a.axis - b.axis;
  return a.apex[third] == b.apex[third] && b.apex[a.axis] >= a.apex[a.axis] &&
         a.apex[b.axis] >= b.apex[b.axis];
}

std::vector<Segment> extract_segments(const JointPrior& prior) {
  prior.validate();
  if (prior.bidders() != 3) throw std::invalid_argument("extract_segments needs three bidders");
  std::vector<Segment> segments;
  const auto shape = prior.shape();
  for (int axis = 0; axis < 3; ++axis) {
    MarginalProfitGrid mpc = mpc_discrete(prior, axis);
    std::vector<int> line_shape = shape;
    line_shape[axis] = 1;
    std::vector<int> point(3, 0);
    do {
      Rat suffix = 0;
      std::vector<std::pair<int, Rat>> apexes;  // (index, suffix weight from it)
      for (int k = shape[axis] - 1; k >= 0; --k) {
        point[axis] = k;
        const Rat& v = mpc.at(point);
        suffix += v;
        if (v > 0) apexes.emplace_back(k, suffix);
      }
      for (auto it = apexes.rbegin(); it != apexes.rend(); ++it) {
        point[axis] = it->first;
        Segment s;
        s.axis = axis;
        s.apex = {point[0] + 1, point[1] + 1, point[2] + 1};
        s.weight = it->second;
        segments.push_back(std::move(s));
      }
      point[axis] = 0;
    } while (next_point(point, line_shape));
  }
  std::sort(segments.begin(), segments.end(), [](const Segment& a, const Segment& b) {
    if (a.axis != b.axis) return a.axis < b.axis;
    return a.apex < b.apex;
  });
  return segments;
}

namespace {

struct SegmentBnB {
  const std::vector<Segment>& segments;
  const std::vector<std::vector<int>>& neighbors;
  std::vector<int> order;        // component vertices, weight descending
  std::vector<char> dead;
  std::vector<char> chosen;
  std::vector<char> best_chosen;
  Rat best = -1;

  void solve(std::size_t pos, const Rat& value, const Rat& alive_rest) {
    // alive_rest = total weight of not-yet-dead vertices from position pos on
    if (value + alive_rest <= best) return;
    std::size_t k = pos;
    while (k < order.size() && dead[order[k]]) ++k;
    if (k == order.size()) {
      if (value > best) {
        best = value;
        best_chosen = chosen;
      }
      return;
    }
    int v = order[k];
    Rat rest = alive_rest;
    // skip past v in the alive tally for both branches
    rest -= segments[v].weight;

    std::vector<int> killed;
    for (int u : neighbors[v]) {
      if (!dead[u]) {
        dead[u] = 1;
        killed.push_back(u);
      }
    }
    Rat rest_in = rest;
    for (int u : killed) {
      // only vertices later in the order still count toward alive_rest
      rest_in -= segments[u].weight;
    }
    dead[v] = 1;
    chosen[v] = 1;
    solve(k + 1, value + segments[v].weight, rest_in >= 0 ? rest_in : Rat(0));
    chosen[v] = 0;
    for (int u : killed) dead[u] = 0;
    if (!killed.empty()) {
      // excluding v only makes sense when it conflicts with something alive
      solve(k + 1, value, rest);
    }
    dead[v] = 0;
  }
};

}  // namespace

SegmentsSolution solve_3segments_exact(const std::vector<Segment>& segments) {
  if (segments.size() > 512) {
    throw SizeGuardError("3segments guard: " + std::to_string(segments.size()) + " segments");
  }
  const int n = static_cast<int>(segments.size());
  std::vector<std::vector<int>> neighbors(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (segments_intersect(segments[a], segments[b])) {
        neighbors[a].push_back(b);
        neighbors[b].push_back(a);
      }
    }
  }

  // connected components
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : neighbors[v]) {
        if (comp[u] < 0) {
          comp[u] = ncomp;
          stack.push_back(u);
        }
      }
    }
    ++ncomp;
  }

  SegmentsSolution sol;
  sol.value = 0;
  std::vector<char> dead(n, 0), chosen(n, 0);
  for (int c = 0; c < ncomp; ++c) {
    SegmentBnB bnb{segments, neighbors, {}, dead, chosen, {}, -1};
    Rat alive = 0;
    for (int v = 0; v < n; ++v) {
      if (comp[v] == c) {
        bnb.order.push_back(v);
        alive += segments[v].weight;
      }
    }
    if (bnb.order.size() > 64) {
      throw SizeGuardError("3segments component guard: " + std::to_string(bnb.order.size()));
    }
    std::stable_sort(bnb.order.begin(), bnb.order.end(),
                     [&](int a, int b) { return segments[a].weight > segments[b].weight; });
    bnb.best_chosen.assign(n, 0);
    bnb.solve(0, Rat(0), alive);
    sol.value += bnb.best;
    for (int v : bnb.order) {
      if (bnb.best_chosen[v]) sol.chosen.push_back(v);
    }
  }
  std::sort(sol.chosen.begin(), sol.chosen.end());
  return sol;
}

Mechanism segments_to_mechanism(const std::vector<Segment>& segments,
                                const std::vector<int>& chosen, const JointPrior& prior) {
  prior.validate();
  if (prior.bidders() != 3) throw std::invalid_argument("needs three bidders");
  AllocationMatrix alloc;
  alloc.shape = prior.shape();
  alloc.winner.assign(prior.cell_count(), 0);

  for (int idx : chosen) {
    const Segment& s = segments.at(idx);
    std::vector<int> point = {s.apex[0] - 1, s.apex[1] - 1, s.apex[2] - 1};
    // shrink to the best posted price on the line (largest argmax)
    int arg = -1;
    Rat best = 0;
    for (int k = point[s.axis]; k < alloc.shape[s.axis]; ++k) {
      std::vector<int> probe = point;
      probe[s.axis] = k;
      Rat rev = suffix_revenue(prior, s.axis, probe);
      if (rev > best || (rev == best && rev > 0)) {
        best = rev;
        arg = k;
      }
    }
    if (arg < 0) throw std::logic_error("chosen segment has no revenue");
    for (int k = arg; k < alloc.shape[s.axis]; ++k) {
      point[s.axis] = k;
      std::size_t flat = alloc.flat_index(point);
      if (alloc.winner[flat] != 0) throw std::logic_error("chosen segments overlap");
      alloc.winner[flat] = s.axis + 1;
    }
  }
  return thresholds_and_payments(alloc, prior.grid);
}

namespace {

struct Builder {
  const CatFormula& f;
  int nhat, m, side;
  std::vector<Rat> h;
  Rat c1, c2, c3, c4, c5;
  std::map<std::array<int, 3>, std::pair<Rat, int>> placed;  // point -> (mass, family)
  std::vector<IntendedSegment> intended;

  Builder(const CatFormula& formula)
      : f(formula), nhat(formula.n_hat()), m(formula.m()), side(nhat + 2 * m + 4) {
    h.assign(side + 1, Rat(0));
    for (int i = 1; i <= nhat + 2 * m + 2; ++i) {
      h[i] = 1 + Rat(i - 1) / Rat(nhat + 2 * m + 1);
    }
    h[side - 1] = 4;
    h[side] = 5;
    c1 = 1;
    c2 = 1;
    c3 = 1;
    c4 = 3 * std::max(m, 1);
    c5 = Rat(2 * std::max(nhat, 1)) / 5;
  }

  void place(std::array<int, 3> point, const Rat& mass, int family) {
    for (int d = 0; d < 3; ++d) {
      if (point[d] < 1 || point[d] > side) throw std::logic_error("placement off grid");
    }
    auto [it, fresh] = placed.emplace(point, std::make_pair(mass, family));
    if (!fresh) throw std::logic_error("mass placed twice at one point");
  }

  void add_intended(int axis, std::array<int, 3> apex, const Rat& weight, SegmentTag tag) {
    intended.push_back({Segment{axis, apex, weight}, tag});
  }

  void literal_points(int l /*1-based clause*/, const CatLiteral& lit) {
    const int base = nhat + 2;
    const int lo = base + l;          // clause slot
    const int hi = base + m + l;      // dummy slot
    const int v = lit.variable;       // 1-based
    Rat w = h[base] * c1;
    // (point, axis) pairs per the construction table; the non-dummy segment
    // sits in the clause slot, the dummy in the shifted slot.
    struct P {
      std::array<int, 3> pt;
      int axis;
      SegmentRole role;
    };
    std::vector<P> ps;
    if (lit.category == 0) {
      if (lit.positive) {
        ps = {{{v + 1, base, lo}, 1, SegmentRole::PositiveLiteral},
              {{v + 1, hi, base}, 2, SegmentRole::DummyNegative}};
      } else {
        ps = {{{v + 1, lo, base}, 2, SegmentRole::NegativeLiteral},
              {{v + 1, base, hi}, 1, SegmentRole::DummyPositive}};
      }
    } else if (lit.category == 1) {
      if (lit.positive) {
        ps = {{{lo, v + 1, base}, 2, SegmentRole::PositiveLiteral},
              {{base, v + 1, hi}, 0, SegmentRole::DummyNegative}};
      } else {
        ps = {{{base, v + 1, lo}, 0, SegmentRole::NegativeLiteral},
              {{hi, v + 1, base}, 2, SegmentRole::DummyPositive}};
      }
    } else {
      if (lit.positive) {
        ps = {{{base, lo, v + 1}, 0, SegmentRole::PositiveLiteral},
              {{hi, base, v + 1}, 1, SegmentRole::DummyNegative}};
      } else {
        ps = {{{lo, base, v + 1}, 1, SegmentRole::NegativeLiteral},
              {{base, hi, v + 1}, 0, SegmentRole::DummyPositive}};
      }
    }
    for (const P& p : ps) {
      place(p.pt, c1, 1);
      add_intended(p.axis, p.pt, w, {p.role, l - 1, lit.category, v, 1});
    }
  }

  void clause_points(int l, const CatClause& clause) {
    const int slot = nhat + 2 + l;
    for (const CatLiteral& lit : clause.literals) {
      std::array<int, 3> pt;
      // the d-direction clause segment crosses the category-d literal segment
      if (lit.category == 0) {
        pt = {1, slot, slot};
      } else if (lit.category == 1) {
        pt = {slot, 1, slot};
      } else {
        pt = {slot, slot, 1};
      }
      place(pt, c2, 2);
      add_intended(lit.category, pt, h[1] * c2,
                   {SegmentRole::Clause, l - 1, lit.category, -1, 2});
    }
  }

  void scaffolding() {
    const int tall = side - 1;  // level with h = 4
    const int top = side;       // level with h = 5
    for (int l = 1; l <= m; ++l) {
      const int s = nhat + l + 2;
      struct P {
        std::array<int, 3> pt;
        int axis;
      };
      for (const auto& p : std::vector<P>{{{1, s, tall}, 2},
                                          {{1, tall, s}, 1},
                                          {{s, 1, tall}, 2},
                                          {{tall, 1, s}, 0},
                                          {{s, tall, 1}, 1},
                                          {{tall, s, 1}, 0}}) {
        place(p.pt, c3, 3);
        add_intended(p.axis, p.pt, h[tall] * c3, {SegmentRole::Scaffold, -1, -1, -1, 3});
      }
    }
    const int base = nhat + 2;
    auto c4_points = [&](int category, int count) {
      for (int v = 1; v <= count; ++v) {
        std::array<int, 3> a, b;
        int axis_a, axis_b;
        if (category == 0) {
          a = {v + 1, base, tall};
          axis_a = 2;
          b = {v + 1, tall, base};
          axis_b = 1;
        } else if (category == 1) {
          a = {base, v + 1, tall};
          axis_a = 2;
          b = {tall, v + 1, base};
          axis_b = 0;
        } else {
          a = {base, tall, v + 1};
          axis_a = 1;
          b = {tall, base, v + 1};
          axis_b = 0;
        }
        place(a, c4, 4);
        add_intended(axis_a, a, h[tall] * c4, {SegmentRole::Scaffold, -1, -1, -1, 4});
        place(b, c4, 4);
        add_intended(axis_b, b, h[tall] * c4, {SegmentRole::Scaffold, -1, -1, -1, 4});
      }
    };
    c4_points(0, f.n_x);
    c4_points(1, f.n_y);
    c4_points(2, f.n_z);

    for (int i = nhat + 3; i <= nhat + 2 * m + 2; ++i) {
      struct P {
        std::array<int, 3> pt;
        int axis;
      };
      for (const auto& p : std::vector<P>{{{top, i, base}, 0},
                                          {{top, base, i}, 0},
                                          {{base, top, i}, 1},
                                          {{i, top, base}, 1},
                                          {{i, base, top}, 2},
                                          {{base, i, top}, 2}}) {
        place(p.pt, c5, 5);
        add_intended(p.axis, p.pt, h[top] * c5, {SegmentRole::Scaffold, -1, -1, -1, 5});
      }
    }
  }
};

bool same_literal_class(SegmentRole role) {
  // true for the "positive" class {PositiveLiteral, DummyPositive}
  return role == SegmentRole::PositiveLiteral || role == SegmentRole::DummyPositive;
}

bool is_literal_role(SegmentRole role) {
  return role == SegmentRole::PositiveLiteral || role == SegmentRole::NegativeLiteral ||
         role == SegmentRole::DummyPositive || role == SegmentRole::DummyNegative;
}

void census_check(const std::vector<IntendedSegment>& intended) {
  for (std::size_t a = 0; a < intended.size(); ++a) {
    for (std::size_t b = a + 1; b < intended.size(); ++b) {
      const auto& sa = intended[a];
      const auto& sb = intended[b];
      if (!segments_intersect(sa.segment, sb.segment)) continue;
      const SegmentTag& ta = sa.tag;
      const SegmentTag& tb = sb.tag;
      bool ok = false;
      if (is_literal_role(ta.role) && is_literal_role(tb.role)) {
        ok = ta.category == tb.category && ta.variable == tb.variable &&
             same_literal_class(ta.role) != same_literal_class(tb.role);
      } else if (ta.role == SegmentRole::Clause && tb.role == SegmentRole::Clause) {
        ok = ta.clause == tb.clause;
      } else if (ta.role == SegmentRole::Clause || tb.role == SegmentRole::Clause) {
        const SegmentTag& cl = ta.role == SegmentRole::Clause ? ta : tb;
        const SegmentTag& li = ta.role == SegmentRole::Clause ? tb : ta;
        ok = is_literal_role(li.role) &&
             (li.role == SegmentRole::PositiveLiteral ||
              li.role == SegmentRole::NegativeLiteral) &&
             cl.clause == li.clause && cl.category == li.category;
      }
      if (!ok) {
        throw std::logic_error("unsanctioned intersection between intended segments");
      }
    }
  }
}

}  // namespace

Rat ReductionInstance::predicted_profit(int satisfied_clauses) const {
  const int base = formula.n_hat() + 2;
  return Rat(satisfied_clauses) * h[1] * c2 +
         Rat(formula.literal_count()) * h[base] * c1 + scaffold_profit;
}

ReductionInstance catsat_to_instance(const CatFormula& formula) {
  formula.validate();
  if (formula.m() == 0 && formula.total_vars() == 0) {
    throw std::invalid_argument("empty formula has no instance");
  }

  Builder b(formula);
  const int m = b.m;
  const int nhat = b.nhat;

  // The three displayed scaffolding requirements, checked in exact arithmetic.
  for (int l = 1; l <= m; ++l) {
    if (!(b.h[nhat + l + 2] * (b.c2 + b.c3) < b.h[b.side - 1] * b.c3)) {
      throw std::logic_error("scaffolding inequality (clause kill) fails");
    }
  }
  for (int l = 1; l <= 2 * m; ++l) {
    if (!(b.h[nhat + l + 2] * (2 * m * b.c1 + b.c4) < b.h[b.side - 1] * b.c4)) {
      throw std::logic_error("scaffolding inequality (base-plane kill) fails");
    }
  }
  if (m >= 1 && !(nhat * b.h[nhat + 1] * b.c1 < b.h[b.side] * b.c5)) {
    throw std::logic_error("scaffolding inequality (perpendicular kill) fails");
  }

  for (int l = 1; l <= m; ++l) {
    for (const CatLiteral& lit : formula.clauses[l - 1].literals) b.literal_points(l, lit);
    b.clause_points(l, formula.clauses[l - 1]);
  }
  b.scaffolding();

  ReductionInstance inst;
  inst.formula = formula;
  inst.side = b.side;
  inst.h = b.h;
  inst.c1 = b.c1;
  inst.c2 = b.c2;
  inst.c3 = b.c3;
  inst.c4 = b.c4;
  inst.c5 = b.c5;
  inst.intended = b.intended;

  inst.prior.grid.levels.assign(3, std::vector<Rat>(b.h.begin() + 1, b.h.end()));
  inst.prior.mass.assign(static_cast<std::size_t>(b.side) * b.side * b.side, Rat(0));
  for (const auto& [point, entry] : b.placed) {
    std::vector<int> idx = {point[0] - 1, point[1] - 1, point[2] - 1};
    inst.prior.at(idx) = entry.first;
    inst.masses.push_back({point, entry.second});
  }
  inst.prior.validate();
  inst.normalization = inst.prior.total_mass();

  const int n = formula.total_vars();
  inst.scaffold_profit = Rat(6 * m) * b.h[b.side - 1] * b.c3 +
                         Rat(2 * n) * b.h[b.side - 1] * b.c4 +
                         Rat(12 * m) * b.h[b.side] * b.c5;

  // Extraction fidelity: intended segments come back with their predicted
  // weights, literal and clause apexes support no other direction, and the
  // intended direction dominates at scaffolding apexes.
  std::vector<Segment> segs = extract_segments(inst.prior);
  std::map<std::pair<int, std::array<int, 3>>, Rat> seg_weight;
  std::map<std::array<int, 3>, std::vector<std::pair<int, Rat>>> by_apex;
  for (const Segment& s : segs) {
    seg_weight[{s.axis, s.apex}] = s.weight;
    by_apex[s.apex].emplace_back(s.axis, s.weight);
  }
  for (const IntendedSegment& is : inst.intended) {
    auto it = seg_weight.find({is.segment.axis, is.segment.apex});
    if (it == seg_weight.end() || it->second != is.segment.weight) {
      throw std::logic_error("intended segment missing or with unexpected weight");
    }
    const auto& at_apex = by_apex[is.segment.apex];
    if (is.tag.family <= 2) {
      if (at_apex.size() != 1) {
        throw std::logic_error("extra segment direction at a literal/clause point");
      }
    } else {
      for (const auto& [axis, weight] : at_apex) {
        if (weight > is.segment.weight) {
          throw std::logic_error("scaffolding point dominated by a side direction");
        }
      }
    }
  }
  census_check(inst.intended);
  return inst;
}

ReductionReport verify_reduction(const CatFormula& formula) {
  formula.validate();
  ReductionReport report;
  if (formula.m() == 0 && formula.total_vars() == 0) {
    report.predicted = 0;
    report.optimum = 0;
    report.matches = true;
    report.decode_ok = true;
    report.pass = true;
    return report;
  }

  report.max_satisfied = max_satisfiable(formula);
  report.formula_satisfiable = report.max_satisfied == formula.m();

  ReductionInstance inst = catsat_to_instance(formula);
  std::vector<Segment> segs = extract_segments(inst.prior);
  SegmentsSolution sol = solve_3segments_exact(segs);

  report.predicted = inst.predicted_profit(report.max_satisfied);
  report.optimum = sol.value;
  report.matches = report.optimum == report.predicted;

  std::map<std::pair<int, std::array<int, 3>>, SegmentTag> tags;
  for (const IntendedSegment& is : inst.intended) {
    tags[{is.segment.axis, is.segment.apex}] = is.tag;
  }

  // Decode: per variable, the selected literal class names the truth value.
  std::map<std::pair<int, int>, int> var_class;  // (category, variable) -> +1 pos / -1 neg
  bool mixing = false;
  for (int idx : sol.chosen) {
    auto it = tags.find({segs[idx].axis, segs[idx].apex});
    if (it == tags.end()) continue;  // a weak side segment; irrelevant to decode
    const SegmentTag& tag = it->second;
    if (tag.role == SegmentRole::Clause) {
      ++report.chosen_clause_segments;
    } else if (is_literal_role(tag.role)) {
      ++report.chosen_literal_segments;
      int cls = same_literal_class(tag.role) ? 1 : -1;
      auto [vit, fresh] = var_class.emplace(std::make_pair(tag.category, tag.variable), cls);
      if (!fresh && vit->second != cls) mixing = true;
    }
  }

  // positive class selected -> variable false; negative class -> true
  int satisfied = 0;
  for (const CatClause& clause : formula.clauses) {
    for (const CatLiteral& lit : clause.literals) {
      auto it = var_class.find({lit.category, lit.variable});
      bool value = it != var_class.end() && it->second < 0;
      if (value == lit.positive) {
        ++satisfied;
        break;
      }
    }
  }
  report.decoded_satisfied = satisfied;
  report.decode_ok = !mixing && report.chosen_literal_segments == formula.literal_count() &&
                     report.decoded_satisfied >= report.chosen_clause_segments;
  report.pass = report.matches && report.decode_ok;
  return report;
}

}  // namespace corrauct
