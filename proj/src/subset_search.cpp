#include "subset_search.hpp"

#include <dtc/error.hpp>

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace dtc::detail {

namespace {
    auto index_order(std::span<const Attribute> columns) -> std::vector<std::size_t>
    {
        std::vector<std::size_t> order(columns.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return columns[a] < columns[b]; });
        return order;
    }

    class CostOf
    {
    public:
        CostOf(const ComplexityMeasure & psi, std::span<const Attribute> columns) :
            _psi(psi),
            _columns(columns)
        {
        }

        auto operator()(Mask mask) const -> Cost
        {
            return _psi.cost(mask_attributes(_columns, mask));
        }

    private:
        const ComplexityMeasure & _psi;
        std::span<const Attribute> _columns;
    };
}

auto check_width(const DecisionTable & table) -> void
{
    if (table.num_columns() > 62)
        throw Error(ErrorCode::too_large, "subset search supports at most 62 columns");
}

auto mask_attributes(std::span<const Attribute> columns, Mask mask) -> std::vector<Attribute>
{
    std::vector<Attribute> result;
    for (std::size_t c = 0; c < columns.size(); ++c)
        if ((mask >> c) & 1U)
            result.push_back(columns[c]);
    std::sort(result.begin(), result.end());
    return result;
}

auto difference_mask(const DecisionTable & table, std::size_t a, std::size_t b) -> Mask
{
    Mask mask = 0;
    for (std::size_t c = 0; c < table.num_columns(); ++c)
        if (table.value(a, c) != table.value(b, c))
            mask |= Mask{1} << c;
    return mask;
}

auto hitting_predicate(std::vector<Mask> masks) -> MaskPredicate
{
    std::sort(masks.begin(), masks.end(), [](Mask a, Mask b) {
        auto pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::vector<Mask> minimal;
    for (auto m : masks)
        if (std::none_of(minimal.begin(), minimal.end(), [&](Mask s) { return (s & m) == s; }))
            minimal.push_back(m);
    return [minimal = std::move(minimal)](Mask subset) {
        return std::all_of(minimal.begin(), minimal.end(), [&](Mask m) { return (m & subset) != 0; });
    };
}

auto min_cost_subset(const ComplexityMeasure & psi, std::span<const Attribute> columns, const MaskPredicate & holds)
        -> std::optional<SubsetResult>
{
    auto order = index_order(columns);
    CostOf cost_of(psi, columns);
    std::optional<SubsetResult> best;

    // Pre-order over sets listed by increasing attribute index visits them
    // in lexicographic order, so only strict improvements are taken.
    auto visit = [&](auto & self, Mask mask, std::size_t next) -> void {
        auto cost = cost_of(mask);
        if (best && cost >= best->cost)
            return;
        if (holds(mask)) {
            best = SubsetResult{cost, mask};
            return;
        }
        for (auto i = next; i < order.size(); ++i)
            self(self, mask | (Mask{1} << order[i]), i + 1);
    };
    visit(visit, 0, 0);
    return best;
}

auto min_cost_min_card_subset(const ComplexityMeasure & psi, std::span<const Attribute> columns, const MaskPredicate & holds)
        -> std::optional<SubsetResult>
{
    auto optimum = min_cost_subset(psi, columns, holds);
    if (! optimum)
        return std::nullopt;

    auto order = index_order(columns);
    CostOf cost_of(psi, columns);
    auto n = order.size();
    for (std::size_t size = 0; size <= n; ++size) {
        std::optional<SubsetResult> found;
        auto choose = [&](auto & self, std::size_t depth, std::size_t from, Mask mask) -> void {
            if (found)
                return;
            if (depth == size) {
                if (holds(mask) && cost_of(mask) == optimum->cost)
                    found = SubsetResult{optimum->cost, mask};
                return;
            }
            for (auto i = from; i + (size - depth) <= n; ++i)
                self(self, depth + 1, i + 1, mask | (Mask{1} << order[i]));
        };
        choose(choose, 0, 0, 0);
        if (found)
            return found;
    }
    return optimum;
}

} // namespace dtc::detail
