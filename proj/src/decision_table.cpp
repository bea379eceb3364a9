#include "relm/decision_table.hpp"

#include <algorithm>
#include <set>

namespace relm {

AttrSet::AttrSet(std::vector<int> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.front() < 0)
        throw IndexOutOfRange("attribute index must be non-negative");
}

AttrSet AttrSet::full(int n_cond) {
    std::vector<int> all(static_cast<std::size_t>(n_cond));
    for (int a = 0; a < n_cond; ++a) all[static_cast<std::size_t>(a)] = a;
    return AttrSet(std::move(all));
}

bool AttrSet::contains(int attr) const {
    return std::binary_search(members_.begin(), members_.end(), attr);
}

AttrSet AttrSet::with(int attr) const {
    std::vector<int> m = members_;
    m.push_back(attr);
    return AttrSet(std::move(m));
}

AttrSet AttrSet::without(int attr) const {
    std::vector<int> m;
    m.reserve(members_.size());
    for (int a : members_)
        if (a != attr) m.push_back(a);
    return AttrSet(std::move(m));
}

DecisionTable::DecisionTable(Eigen::MatrixXi condition_values,
                             std::vector<int> cardinalities,
                             Eigen::VectorXi decision_values,
                             int n_classes,
                             std::vector<std::string> attribute_names,
                             std::vector<std::string> class_labels)
    : condition_values_(std::move(condition_values)),
      cardinalities_(std::move(cardinalities)),
      decision_values_(std::move(decision_values)),
      n_classes_(n_classes),
      attribute_names_(std::move(attribute_names)),
      class_labels_(std::move(class_labels)) {
    const int n = static_cast<int>(condition_values_.rows());
    const int m = static_cast<int>(condition_values_.cols());
    if (n < 1) throw Error("decision table needs at least one row");
    if (m < 1) throw Error("decision table needs at least one condition attribute");
    if (static_cast<int>(cardinalities_.size()) != m)
        throw Error("cardinality list does not match attribute count");
    if (static_cast<int>(attribute_names_.size()) != m)
        throw Error("attribute name list does not match attribute count");
    if (decision_values_.size() != n)
        throw Error("decision column length does not match row count");
    if (n_classes_ < 1) throw Error("decision table needs at least one class");
    for (int a = 0; a < m; ++a) {
        if (cardinalities_[static_cast<std::size_t>(a)] < 1)
            throw Error("attribute cardinality must be positive: " + attribute_names_[static_cast<std::size_t>(a)]);
        for (int r = 0; r < n; ++r) {
            const int c = condition_values_(r, a);
            if (c < 0 || c >= cardinalities_[static_cast<std::size_t>(a)])
                throw Error("condition code outside declared cardinality at row " +
                            std::to_string(r) + ", attribute " + std::to_string(a));
        }
    }
    for (int r = 0; r < n; ++r) {
        const int d = decision_values_(r);
        if (d < 0 || d >= n_classes_)
            throw Error("decision code outside class count at row " + std::to_string(r));
    }
}

DecisionTable DecisionTable::project(const AttrSet& attrs) const {
    if (attrs.empty()) throw EmptyAttrSet("cannot project onto an empty attribute set");
    const int n = n_rows();
    const int k = attrs.size();
    Eigen::MatrixXi codes(n, k);
    std::vector<int> cards(static_cast<std::size_t>(k));
    std::vector<std::string> names(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const int a = attrs.members()[static_cast<std::size_t>(j)];
        if (a < 0 || a >= n_cond())
            throw IndexOutOfRange("attribute index " + std::to_string(a) + " outside table");
        codes.col(j) = condition_values_.col(a);
        cards[static_cast<std::size_t>(j)] = cardinalities_[static_cast<std::size_t>(a)];
        names[static_cast<std::size_t>(j)] = attribute_names_[static_cast<std::size_t>(a)];
    }
    return DecisionTable(std::move(codes), std::move(cards), decision_values_, n_classes_,
                         std::move(names), class_labels_);
}

}  // namespace relm
