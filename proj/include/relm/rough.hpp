#pragma once

#include <utility>
#include <vector>

#include "relm/decision_table.hpp"
#include "relm/rational.hpp"

namespace relm {

/// Equivalence classes of the universe under an attribute subset.
/// `classes` is ordered by smallest member row; within a class rows are
/// ascending. `class_of[row]` is the index into `classes`.
struct Partition {
    std::vector<std::vector<int>> classes;
    std::vector<int> class_of;

    int n_rows() const { return static_cast<int>(class_of.size()); }
};

/// Positive / boundary / negative decomposition of the universe with respect
/// to the decision classes, plus the two exact quality measures.
struct RegionReport {
    std::vector<int> positive;
    std::vector<int> boundary;
    std::vector<int> negative;  // always empty when the targets cover the universe
    Rational gamma;             // |positive| / n_rows
    Rational alpha;             // |positive| / sum of upper-approximation sizes
};

/// Result of attribute reduction. `fallback` is set when no informative
/// subset exists (quality zero under all attributes, or a single decision
/// class); the full attribute set is returned in that case so downstream
/// training still has inputs.
struct ReduceResult {
    AttrSet reduct;
    bool fallback = false;
};

/// Partition of the rows by exact code equality on `attrs`.
/// Throws EmptyAttrSet when attrs is empty and IndexOutOfRange for an
/// attribute index outside the table.
Partition partition(const DecisionTable& table, const AttrSet& attrs);

/// Partition under the empty attribute set: one class holding every row.
Partition partition_trivial(const DecisionTable& table);

/// Lower and upper approximations of a target row set under a partition.
/// lower = union of classes contained in the target, upper = union of
/// classes intersecting it.
std::pair<std::vector<int>, std::vector<int>> lower_upper(const Partition& part,
                                                          const std::vector<int>& target);

/// Regions of the decision classes under `attrs` (empty attrs uses the
/// trivial partition).
RegionReport regions(const DecisionTable& table, const AttrSet& attrs);

/// gamma of `attrs` for the decision attribute; shorthand for
/// regions(table, attrs).gamma.
Rational approximation_quality(const DecisionTable& table, const AttrSet& attrs);

/// Marginal gamma gain of adding `attr` to `base`. Throws AttrAlreadyInBase.
Rational significance(const DecisionTable& table, int attr, const AttrSet& base);

/// Greedy forward selection to full-set quality followed by a single
/// backward prune in addition order. Deterministic: ties on significance go
/// to the lowest attribute index.
ReduceResult reduce(const DecisionTable& table);

}  // namespace relm
