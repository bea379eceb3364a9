#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "relm/errors.hpp"

namespace relm {

/// Ordered set of condition-attribute indices. Members are kept sorted and
/// unique; validity against a concrete table is checked by the operations
/// that take both.
class AttrSet {
public:
    AttrSet() = default;
    explicit AttrSet(std::vector<int> members);

    /// {0, 1, ..., n_cond-1}
    static AttrSet full(int n_cond);

    bool empty() const { return members_.empty(); }
    int size() const { return static_cast<int>(members_.size()); }
    bool contains(int attr) const;
    AttrSet with(int attr) const;
    AttrSet without(int attr) const;
    const std::vector<int>& members() const { return members_; }

    friend bool operator==(const AttrSet& a, const AttrSet& b) {
        return a.members_ == b.members_;
    }

private:
    std::vector<int> members_;
};

/// Categorically coded sample matrix: one row per object, one column of
/// integer codes per condition attribute, plus a decision (class) column.
/// Immutable after construction.
class DecisionTable {
public:
    DecisionTable(Eigen::MatrixXi condition_values,
                  std::vector<int> cardinalities,
                  Eigen::VectorXi decision_values,
                  int n_classes,
                  std::vector<std::string> attribute_names,
                  std::vector<std::string> class_labels);

    int n_rows() const { return static_cast<int>(condition_values_.rows()); }
    int n_cond() const { return static_cast<int>(condition_values_.cols()); }
    int n_classes() const { return n_classes_; }

    int code(int row, int attr) const { return condition_values_(row, attr); }
    int decision(int row) const { return decision_values_(row); }
    int cardinality(int attr) const { return cardinalities_[attr]; }

    const Eigen::MatrixXi& condition_values() const { return condition_values_; }
    const Eigen::VectorXi& decision_values() const { return decision_values_; }
    const std::vector<std::string>& attribute_names() const { return attribute_names_; }
    const std::vector<std::string>& class_labels() const { return class_labels_; }

    /// Table restricted to the given attributes (column j of the result is
    /// attrs.members()[j] of this table).
    DecisionTable project(const AttrSet& attrs) const;

private:
    Eigen::MatrixXi condition_values_;
    std::vector<int> cardinalities_;
    Eigen::VectorXi decision_values_;
    int n_classes_ = 0;
    std::vector<std::string> attribute_names_;
    std::vector<std::string> class_labels_;
};

}  // namespace relm
