#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nvk {

/// One maximal hole-free run of a variable's domain. Endpoints are indices
/// into Instance::universe, so an interval covers every universe value in
/// [lo, hi] by construction.
struct Interval {
  int lo = 0;
  int hi = 0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct VarDomain {
  int id = 0;            // stable across transformations, assigned at parse
  std::string name;
  std::vector<Interval> intervals;  // ascending, pairwise disjoint, non-adjacent

  int holes() const { return static_cast<int>(intervals.size()) - 1; }
  bool required() const { return intervals.size() == 1; }

  /// Number of universe values in the domain.
  int value_count() const {
    int c = 0;
    for (const Interval& iv : intervals) c += iv.hi - iv.lo + 1;
    return c;
  }

  /// Index of the interval containing universe index j, or -1.
  int interval_containing(int j) const;
};

/// An AtMost-NValue instance: interval-union domains over a totally ordered
/// value universe, plus the budget N of distinct values allowed.
struct Instance {
  std::vector<int> universe;  // strictly increasing external labels
  int budget = 0;             // may go negative under select; negative means inconsistent
  std::vector<VarDomain> domains;  // ascending by id

  int label(int idx) const { return universe[static_cast<size_t>(idx)]; }
  std::optional<int> index_of(int lab) const;

  int var_count() const { return static_cast<int>(domains.size()); }
  int interval_count() const;

  /// Position in `domains` of the variable with the given id, or -1.
  int domain_pos(int varId) const;
};

bool operator==(const Instance& a, const Instance& b);

/// Parse/validation failure, anchored to a 1-based input line.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int ln, const std::string& msg)
      : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

/// Violated internal invariant (e.g. the scan phase orphaning an interval).
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Reads the instance file format. Variables keep file order; ids are
/// assigned 0..n-1 in that order.
Instance parse_instance(std::string_view text);

/// Inverse of parse_instance up to structural equality. Emits "values range"
/// when the universe is contiguous, "values list" otherwise.
std::string serialize_instance(const Instance& inst);

/// Throws InternalError if any Instance invariant is violated.
void validate_instance(const Instance& inst);

/// Restricts the universe to values covered by at least one interval,
/// re-indexing and coalescing runs that become adjacent. Never changes
/// consistency; never increases the hole count.
Instance canonicalize(const Instance& inst);

/// The problem parameter k = total number of holes over all domains.
int count_holes(const Instance& inst);

struct ScanItem {
  int var = 0;  // variable id
  int lo = 0;   // universe indices, snapshot at sort time
  int hi = 0;
};

/// All intervals ordered by (hi asc, lo asc, var id asc), produced by two
/// stable counting-sort passes so the whole sort is O(n + |D| + k).
using SortedScan = std::vector<ScanItem>;

SortedScan sort_intervals(const Instance& inst);

}  // namespace nvk
