#pragma once

#include <string>
#include <vector>

#include "nvk/instance.hpp"

namespace nvk {

enum class RemovalRule { Subset, UnitCollateral, MergeDrop };

/// Interval snapshot in label space, immune to universe re-indexing.
struct IntervalSnapshot {
  int var = -1;
  std::string name;
  int lo = 0;
  int hi = 0;
};

/// One leader's merge: `kept` (the second-last follower) absorbs `dropped`
/// (the last follower), extending its right endpoint to newHi = r(dropped).
/// Snapshots are pre-merge, so solution lifting needs no recomputation.
struct MergePair {
  IntervalSnapshot leader;
  IntervalSnapshot kept;
  IntervalSnapshot dropped;
  int newHi = 0;  // label
};

struct TraceOp {
  enum class Kind { Selected, Discarded, VarRemoved, Merge };
  Kind kind = Kind::Selected;
  int value = 0;  // Selected/Discarded label
  int var = -1;
  std::string varName;
  RemovalRule rule = RemovalRule::Subset;
  int budgetBefore = 0;  // Merge
  int budgetAfter = 0;
  std::vector<MergePair> pairs;
};

using Trace = std::vector<TraceOp>;

struct ScanStats {
  int leaders = 0;
  int maxFollowersPerLeader = 0;
  int merges = 0;
};

struct KernelResult {
  Instance kernel;
  Trace trace;        // chronological; forward replay reproduces the kernel
  int holesIn = 0;    // k of the input instance
  int selectedCount = 0;
  ScanStats scan;
};

/// Selects v: drops every variable whose domain contains it, removes it from
/// the universe and decrements the budget (which may go negative; solver
/// layers read that as inconsistency).
void select_value(Instance& inst, int valueIdx, Trace& trace);

/// Discards v from every domain and from the universe. Runs that become
/// adjacent are coalesced; throws InternalError if a domain would empty
/// (cannot happen when invoked via Red-Dom).
void discard_value(Instance& inst, int valueIdx, Trace& trace);

void remove_variable(Instance& inst, int varId, RemovalRule rule, Trace& trace);

/// Exhausts Red-subset, Red-Dom and Red-Unit. Each pass fires Red-subset over
/// the sorted scan, then Red-Dom over the universe ascending, then Red-Unit
/// over variables in id order, until a full pass fires nothing. Returns true
/// if anything fired. withSubset=false gives the rule set used on branch
/// children (Red-Dom + Red-Unit only).
bool apply_reduction_rules(Instance& inst, Trace& trace, bool withSubset = true);

/// Variable-level generalization of Red-Dom: discards v' whenever the set of
/// variables containing v' is a subset of those containing some v (equal sets
/// keep the largest value). Quadratic; not part of the kernelize pipeline.
bool red_dom_generalized(Instance& inst, Trace& trace);

/// The single left-to-right scan assigning leader/follower roles and merging
/// the last two followers of every popular leader whenever all popular
/// leaders hold at least two. Requires the reduction-rule fixpoint.
ScanStats scan_and_merge(Instance& inst, Trace& trace);

/// Full pipeline: reduction rules, scan-and-merge, reduction rules again.
KernelResult kernelize(const Instance& inst);

/// Lifts a kernel solution to a solution of the original instance by
/// replaying the trace backwards (Lemma-2 style: each merge re-adds the
/// pre-merge right endpoint t2, each select re-adds its value). Values are
/// shifted to nice form first.
std::vector<int> lift_solution(const KernelResult& kr, std::vector<int> kernelValues);

/// Forward replay of a trace from the original instance; reproduces the
/// kernel exactly (used to check trace determinism).
Instance replay_trace(const Instance& original, const Trace& trace);

/// Text form, one op per line:
///   select <v> | discard <v> | remove <var> <rule> |
///   merge N<old>-><new> <leader>:<kept>+<dropped>-><newHi> ...
std::vector<std::string> trace_lines(const Trace& trace);

}  // namespace nvk
