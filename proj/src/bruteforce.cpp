#include <dtc/error.hpp>
#include <dtc/solvers.hpp>

#include <algorithm>
#include <limits>
#include <memory>

namespace dtc {

namespace {
    constexpr std::size_t tree_cap = 2'000'000;

    struct Subtree
    {
        bool leaf = false;
        Decision decision = 0;
        std::size_t column = 0;
        std::vector<std::pair<Value, std::shared_ptr<const Subtree>>> children;
    };

    using SubtreePtr = std::shared_ptr<const Subtree>;
    using Rows = std::vector<std::size_t>;

    class TreeEnumerator
    {
    public:
        explicit TreeEnumerator(const DecisionTable & table) :
            _table(table)
        {
        }

        auto count(const Rows & rows, std::uint64_t used) const -> std::size_t
        {
            if (constant(rows))
                return 1;
            std::size_t total = 0;
            for (std::size_t c = 0; c < _table.num_columns(); ++c) {
                if ((used >> c) & 1U)
                    continue;
                std::size_t product = 1;
                for (const auto & [v, part] : partition(rows, c)) {
                    product = std::min(tree_cap + 1, product * count(part, used | (std::uint64_t{1} << c)));
                    if (product == 0)
                        break;
                }
                total = std::min(tree_cap + 1, total + product);
            }
            return total;
        }

        auto all(const Rows & rows, std::uint64_t used) const -> std::vector<SubtreePtr>
        {
            if (constant(rows)) {
                auto leaf = std::make_shared<Subtree>();
                leaf->leaf = true;
                leaf->decision = _table.decision(rows.front());
                return {leaf};
            }
            std::vector<SubtreePtr> result;
            for (std::size_t c = 0; c < _table.num_columns(); ++c) {
                if ((used >> c) & 1U)
                    continue;
                auto parts = partition(rows, c);
                std::vector<std::vector<SubtreePtr>> options;
                for (const auto & [v, part] : parts)
                    options.push_back(all(part, used | (std::uint64_t{1} << c)));
                if (std::any_of(options.begin(), options.end(), [](const auto & o) { return o.empty(); }))
                    continue;
                std::vector<std::size_t> pick(options.size(), 0);
                while (true) {
                    auto node = std::make_shared<Subtree>();
                    node->column = c;
                    for (std::size_t i = 0; i < parts.size(); ++i)
                        node->children.emplace_back(parts[i].first, options[i][pick[i]]);
                    result.push_back(std::move(node));
                    std::size_t i = pick.size();
                    while (i > 0 && pick[i - 1] + 1 == options[i - 1].size())
                        pick[--i] = 0;
                    if (i == 0)
                        break;
                    ++pick[i - 1];
                }
            }
            return result;
        }

    private:
        auto constant(const Rows & rows) const -> bool
        {
            return std::all_of(rows.begin(), rows.end(), [&](auto r) { return _table.decision(r) == _table.decision(rows.front()); });
        }

        auto partition(const Rows & rows, std::size_t column) const -> std::vector<std::pair<Value, Rows>>
        {
            std::vector<std::pair<Value, Rows>> parts;
            for (Value v = 0; v < _table.k(); ++v) {
                Rows part;
                for (auto r : rows)
                    if (_table.value(r, column) == v)
                        part.push_back(r);
                if (! part.empty())
                    parts.emplace_back(v, std::move(part));
            }
            return parts;
        }

        const DecisionTable & _table;
    };

    auto materialize(const DecisionTable & table, const Subtree & sub, DecisionTree & tree, std::size_t parent,
            std::optional<Value> label) -> void
    {
        if (sub.leaf) {
            tree.add_terminal(parent, label, sub.decision);
            return;
        }
        auto node = tree.add_internal(parent, label, table.columns()[sub.column]);
        for (const auto & [v, child] : sub.children)
            materialize(table, *child, tree, node, v);
    }
}

auto psi_d_bruteforce(const ComplexityMeasure & psi, const DecisionTable & table) -> Cost
{
    if (table.num_columns() > 4 || table.k() > 3)
        throw Error(ErrorCode::too_large, "the brute-force solver handles W <= 4 and k <= 3 only");
    if (table.is_empty())
        return 0;

    TreeEnumerator enumerator(table);
    Rows rows(table.num_rows());
    for (std::size_t r = 0; r < rows.size(); ++r)
        rows[r] = r;
    if (enumerator.count(rows, 0) > tree_cap)
        throw Error(ErrorCode::too_large, "more than " + std::to_string(tree_cap) + " candidate trees");

    auto best = std::numeric_limits<Cost>::max();
    for (const auto & sub : enumerator.all(rows, 0)) {
        DecisionTree tree;
        materialize(table, *sub, tree, 0, std::nullopt);
        if (! validate_deterministic(tree, table).valid)
            continue;
        best = std::min(best, tree_cost(psi, tree));
    }
    if (best == std::numeric_limits<Cost>::max())
        throw Error(ErrorCode::bad_argument, "no deterministic tree found");
    return best;
}

} // namespace dtc
