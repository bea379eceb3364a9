#include "relm/rough.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace relm {
namespace {

struct CodeKeyHash {
    std::size_t operator()(const std::vector<int>& key) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the code tuple
        for (int v : key) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }
};

void check_attrs(const DecisionTable& table, const AttrSet& attrs) {
    for (int a : attrs.members())
        if (a < 0 || a >= table.n_cond())
            throw IndexOutOfRange("attribute index " + std::to_string(a) + " outside table with " +
                                  std::to_string(table.n_cond()) + " attributes");
}

/// Rows with a pure decision inside their equivalence class, as a count.
/// Lean path for the reduction loop, which only needs gamma.
std::int64_t positive_count(const DecisionTable& table, const Partition& part) {
    std::int64_t count = 0;
    for (const auto& cls : part.classes) {
        const int d0 = table.decision(cls.front());
        bool pure = true;
        for (std::size_t i = 1; i < cls.size(); ++i) {
            if (table.decision(cls[i]) != d0) { pure = false; break; }
        }
        if (pure) count += static_cast<std::int64_t>(cls.size());
    }
    return count;
}

Partition partition_for(const DecisionTable& table, const AttrSet& attrs) {
    return attrs.empty() ? partition_trivial(table) : partition(table, attrs);
}

}  // namespace

Partition partition(const DecisionTable& table, const AttrSet& attrs) {
    if (attrs.empty())
        throw EmptyAttrSet("partition requires a non-empty attribute set; use partition_trivial");
    check_attrs(table, attrs);

    const int n = table.n_rows();
    Partition part;
    part.class_of.resize(static_cast<std::size_t>(n));

    std::unordered_map<std::vector<int>, int, CodeKeyHash> ids;
    ids.reserve(static_cast<std::size_t>(n));
    std::vector<int> key(static_cast<std::size_t>(attrs.size()));
    for (int r = 0; r < n; ++r) {
        for (int j = 0; j < attrs.size(); ++j)
            key[static_cast<std::size_t>(j)] = table.code(r, attrs.members()[static_cast<std::size_t>(j)]);
        auto [it, inserted] = ids.emplace(key, static_cast<int>(part.classes.size()));
        if (inserted) part.classes.emplace_back();
        part.classes[static_cast<std::size_t>(it->second)].push_back(r);
        part.class_of[static_cast<std::size_t>(r)] = it->second;
    }
    // first-appearance ids == ordering by smallest member row
    return part;
}

Partition partition_trivial(const DecisionTable& table) {
    const int n = table.n_rows();
    Partition part;
    part.classes.emplace_back();
    part.classes.front().resize(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) part.classes.front()[static_cast<std::size_t>(r)] = r;
    part.class_of.assign(static_cast<std::size_t>(n), 0);
    return part;
}

std::pair<std::vector<int>, std::vector<int>> lower_upper(const Partition& part,
                                                          const std::vector<int>& target) {
    const int n = part.n_rows();
    std::vector<char> in_target(static_cast<std::size_t>(n), 0);
    for (int r : target) {
        if (r < 0 || r >= n)
            throw IndexOutOfRange("target row " + std::to_string(r) + " outside universe of size " +
                                  std::to_string(n));
        in_target[static_cast<std::size_t>(r)] = 1;
    }

    std::vector<int> lower, upper;
    for (const auto& cls : part.classes) {
        std::size_t hits = 0;
        for (int r : cls) hits += in_target[static_cast<std::size_t>(r)];
        if (hits == cls.size()) lower.insert(lower.end(), cls.begin(), cls.end());
        if (hits > 0) upper.insert(upper.end(), cls.begin(), cls.end());
    }
    std::sort(lower.begin(), lower.end());
    std::sort(upper.begin(), upper.end());
    return {std::move(lower), std::move(upper)};
}

RegionReport regions(const DecisionTable& table, const AttrSet& attrs) {
    check_attrs(table, attrs);
    const Partition part = partition_for(table, attrs);
    const int n = table.n_rows();

    RegionReport report;
    std::int64_t upper_total = 0;  // sum over decision classes of |upper approximation|
    for (const auto& cls : part.classes) {
        std::vector<char> seen(static_cast<std::size_t>(table.n_classes()), 0);
        int distinct = 0;
        for (int r : cls) {
            char& s = seen[static_cast<std::size_t>(table.decision(r))];
            if (!s) { s = 1; ++distinct; }
        }
        // a class lies in the upper approximation of every decision class it touches
        upper_total += static_cast<std::int64_t>(cls.size()) * distinct;
        auto& dest = (distinct == 1) ? report.positive : report.boundary;
        dest.insert(dest.end(), cls.begin(), cls.end());
    }
    std::sort(report.positive.begin(), report.positive.end());
    std::sort(report.boundary.begin(), report.boundary.end());

    const auto pos = static_cast<std::int64_t>(report.positive.size());
    report.gamma = Rational(pos, n);
    report.alpha = (pos == 0) ? Rational(0, 1) : Rational(pos, upper_total);
    return report;
}

Rational approximation_quality(const DecisionTable& table, const AttrSet& attrs) {
    check_attrs(table, attrs);
    const Partition part = partition_for(table, attrs);
    return Rational(positive_count(table, part), table.n_rows());
}

Rational significance(const DecisionTable& table, int attr, const AttrSet& base) {
    if (attr < 0 || attr >= table.n_cond())
        throw IndexOutOfRange("attribute index " + std::to_string(attr) + " outside table");
    if (base.contains(attr))
        throw AttrAlreadyInBase("attribute " + std::to_string(attr) + " is already in the base set");
    return approximation_quality(table, base.with(attr)) - approximation_quality(table, base);
}

ReduceResult reduce(const DecisionTable& table) {
    const AttrSet all = AttrSet::full(table.n_cond());
    const Rational gamma_full = approximation_quality(table, all);

    // forward: add the best attribute until the full-set quality is reached
    std::vector<int> added;         // selection order, for the prune below
    AttrSet current;
    Rational gamma_current = approximation_quality(table, current);
    while (gamma_current < gamma_full) {
        int best = -1;
        Rational best_gamma;
        for (int a = 0; a < table.n_cond(); ++a) {
            if (current.contains(a)) continue;
            const Rational g = approximation_quality(table, current.with(a));
            if (best < 0 || g > best_gamma) { best = a; best_gamma = g; }
            // ties keep the lowest index: strict > above
        }
        added.push_back(best);
        current = current.with(best);
        gamma_current = best_gamma;
    }

    if (added.empty()) {
        // quality zero under all attributes, or a single decision class:
        // an empty reduct would be untrainable, return everything instead
        return {all, true};
    }

    // backward prune in addition order; gamma stays at gamma_full throughout
    AttrSet kept = current;
    for (int a : added) {
        if (approximation_quality(table, kept.without(a)) >= gamma_full)
            kept = kept.without(a);
    }
    return {kept, false};
}

}  // namespace relm
