#pragma once

#include <array>
#include <string>
#include <vector>

#include "corrauct/mechanism.hpp"
#include "corrauct/prior.hpp"

namespace corrauct {

/// Literal in a categorized 3-SAT formula: category 0/1/2 (x/y/z), variable
/// index 1-based within its category.
struct CatLiteral {
  int category = 0;
  int variable = 1;
  bool positive = true;
};

struct CatClause {
  std::vector<CatLiteral> literals;  // at most 3, at most one per category
};

/// 3-SAT with variables split into three categories and at most one literal
/// per category in each clause.
struct CatFormula {
  int n_x = 0, n_y = 0, n_z = 0;
  std::vector<CatClause> clauses;

  int m() const { return static_cast<int>(clauses.size()); }
  int total_vars() const { return n_x + n_y + n_z; }
  int n_hat() const { return std::max(n_x, std::max(n_y, n_z)); }
  int literal_count() const;  // total literal occurrences
  int category_size(int category) const;
  void validate() const;
};

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // DIMACS literals, +-var
};

Cnf parse_dimacs(const std::string& text);

/// Three category copies per variable plus the three implication clauses
/// binding them; original clauses use the copy matching the literal position.
/// Equisatisfiable with the input.
CatFormula max3sat_to_catsat(const Cnf& cnf);

/// Exhaustive maximum number of simultaneously satisfiable clauses.
/// Guarded to 20 variables.
int max_satisfiable(const CatFormula& formula);

/// Axis-aligned suffix segment of a 3-bidder grid: starts at a positive
/// marginal-profit apex and runs to the boundary. Weight is the suffix sum of
/// that bidder's marginal profit, i.e. the line's best posted-price revenue
/// from the apex on (unnormalized).
struct Segment {
  int axis = 0;
  std::array<int, 3> apex{};  // 1-based grid coordinates
  Rat weight;
};

/// Segments meet iff they share a grid point.
bool segments_intersect(const Segment& a, const Segment& b);

enum class SegmentRole {
  PositiveLiteral,
  NegativeLiteral,
  DummyPositive,
  DummyNegative,
  Clause,
  Scaffold,
};

struct SegmentTag {
  SegmentRole role = SegmentRole::Scaffold;
  int clause = -1;    // 0-based, for literal/clause roles
  int category = -1;  // literal's category, or the clause segment's direction
  int variable = -1;  // 1-based within category, literal roles only
  int family = 0;     // mass family 1..5 (c1..c5) of the apex
};

struct IntendedSegment {
  Segment segment;
  SegmentTag tag;
};

struct PlacedMass {
  std::array<int, 3> point{};
  int family = 0;  // 1..5
};

/// Output of the formula-to-prior construction, with full bookkeeping.
/// Masses stay unnormalized (the cost identities are stated in raw units);
/// `normalization` records the factor a probability export divides by.
struct ReductionInstance {
  CatFormula formula;
  int side = 0;
  std::vector<Rat> h;  // 1-based, h[0] unused
  Rat c1, c2, c3, c4, c5;
  JointPrior prior;  // 3-bidder grid over the h-levels
  Rat normalization;
  std::vector<PlacedMass> masses;
  std::vector<IntendedSegment> intended;
  Rat scaffold_profit;  // F

  /// k * h(1) c2 + nbar * h(nhat+2) c1 + F; the segment optimum when the best
  /// assignment satisfies k clauses (k = m gives the satisfiable value).
  Rat predicted_profit(int satisfied_clauses) const;
};

/// Builds the 3-bidder prior realizing the formula as a segment-selection
/// problem. Asserts the three scaffolding inequalities, that extraction
/// recovers exactly the intended segments at literal and clause points with
/// their predicted weights, that scaffolding points' intended directions
/// dominate their same-apex alternatives, and that intersections among
/// literal and clause segments are limited to the three sanctioned kinds.
ReductionInstance catsat_to_instance(const CatFormula& formula);

/// All positive-apex segments of a 3-bidder prior with exact suffix weights.
std::vector<Segment> extract_segments(const JointPrior& prior);

struct SegmentsSolution {
  std::vector<int> chosen;  // indices into the input list, ascending
  Rat value;
};

/// Exact maximum-weight pairwise-disjoint subset, branch and bound over the
/// intersection graph with connected-component decomposition. Guarded to 512
/// segments / 64 per component.
SegmentsSolution solve_3segments_exact(const std::vector<Segment>& segments);

/// Winner map realized by the chosen segments after shrinking each to its
/// best posted-price apex; expected revenue then matches the segment value
/// exactly (after normalization).
Mechanism segments_to_mechanism(const std::vector<Segment>& segments,
                                const std::vector<int>& chosen, const JointPrior& prior);

struct ReductionReport {
  int max_satisfied = 0;
  bool formula_satisfiable = false;
  Rat predicted;
  Rat optimum;
  bool matches = false;
  int chosen_clause_segments = 0;
  int chosen_literal_segments = 0;
  int decoded_satisfied = 0;
  bool decode_ok = false;
  bool pass = false;
};

/// Ties everything together: exhaustive SAT, instance generation, exact
/// segment optimum, the predicted-cost identity, and the decodability of the
/// chosen packing into an assignment.
ReductionReport verify_reduction(const CatFormula& formula);

}  // namespace corrauct
