#include <dtc/error.hpp>
#include <dtc/tree.hpp>

#include "text_util.hpp"

#include <algorithm>
#include <set>

namespace dtc {

DecisionTree::DecisionTree()
{
    _nodes.push_back(TreeNode{});
}

auto DecisionTree::add(std::size_t parent, std::optional<Value> label, TreeNode node) -> std::size_t
{
    if (parent >= _nodes.size())
        throw Error(ErrorCode::bad_argument, "no such parent node");
    const auto & p = _nodes[parent];
    if (p.kind == NodeKind::terminal)
        throw Error(ErrorCode::bad_argument, "terminal nodes have no outgoing edges");
    if (p.kind == NodeKind::root && label)
        throw Error(ErrorCode::bad_argument, "edges leaving the root are unlabeled");
    if (p.kind == NodeKind::internal && ! label)
        throw Error(ErrorCode::bad_argument, "edges leaving an internal node need a value label");
    if (label && *label < 0)
        throw Error(ErrorCode::bad_argument, "negative edge label");
    node.parent = parent;
    node.edge_label = label;
    _nodes.push_back(std::move(node));
    _nodes[parent].children.push_back(_nodes.size() - 1);
    return _nodes.size() - 1;
}

auto DecisionTree::add_internal(std::size_t parent, std::optional<Value> label, Attribute a) -> std::size_t
{
    TreeNode node;
    node.kind = NodeKind::internal;
    node.attribute = a;
    return add(parent, label, std::move(node));
}

auto DecisionTree::add_terminal(std::size_t parent, std::optional<Value> label, Decision d) -> std::size_t
{
    if (d != 0 && d != 1)
        throw Error(ErrorCode::bad_decision, "terminal decision must be 0 or 1");
    TreeNode node;
    node.kind = NodeKind::terminal;
    node.decision = d;
    return add(parent, label, std::move(node));
}

auto DecisionTree::attributes() const -> std::vector<Attribute>
{
    std::set<Attribute> result;
    for (const auto & n : _nodes)
        if (n.kind == NodeKind::internal)
            result.insert(n.attribute);
    return {result.begin(), result.end()};
}

auto DecisionTree::structural_defect() const -> std::optional<std::string>
{
    if (_nodes.size() < 2)
        return "a tree needs at least two nodes";
    for (std::size_t i = 0; i < _nodes.size(); ++i)
        if (_nodes[i].kind == NodeKind::internal && _nodes[i].children.empty())
            return "internal node " + _nodes[i].attribute.name() + " has no outgoing edges";
    return std::nullopt;
}

auto operator==(const DecisionTree & a, const DecisionTree & b) -> bool
{
    return format_tree(a) == format_tree(b);
}

auto complete_paths(const DecisionTree & tree) -> std::vector<CompletePath>
{
    std::vector<CompletePath> result;
    CompletePath current;
    auto walk = [&](auto & self, std::size_t i) -> void {
        const auto & n = tree.node(i);
        current.nodes.push_back(i);
        if (n.kind == NodeKind::terminal) {
            current.decision = n.decision;
            result.push_back(current);
        }
        for (auto c : n.children) {
            if (n.kind == NodeKind::internal) {
                current.word.push_back(n.attribute);
                current.fixings.push_back(Fixing{n.attribute, *tree.node(c).edge_label});
            }
            self(self, c);
            if (n.kind == NodeKind::internal) {
                current.word.pop_back();
                current.fixings.pop_back();
            }
        }
        current.nodes.pop_back();
    };
    walk(walk, 0);
    return result;
}

auto tree_cost(const ComplexityMeasure & psi, const DecisionTree & tree) -> Cost
{
    Cost result = 0;
    for (const auto & path : complete_paths(tree))
        result = std::max(result, psi.cost(path.word));
    return result;
}

namespace {
    auto path_rows(const CompletePath & path, const DecisionTable & table) -> std::vector<std::size_t>
    {
        std::vector<std::pair<std::size_t, Value>> checks;
        for (const auto & f : path.fixings)
            checks.emplace_back(*table.column_of(f.attribute), f.value);
        std::vector<std::size_t> rows;
        for (std::size_t r = 0; r < table.num_rows(); ++r)
            if (std::all_of(checks.begin(), checks.end(), [&](auto c) { return table.value(r, c.first) == c.second; }))
                rows.push_back(r);
        return rows;
    }

    auto describe_path(const CompletePath & path) -> std::string
    {
        std::string result = "path [";
        for (std::size_t i = 0; i < path.fixings.size(); ++i)
            result += (i ? " " : "") + path.fixings[i].attribute.name() + "=" + std::to_string(path.fixings[i].value);
        return result + "] -> " + std::to_string(path.decision);
    }

    auto fail(TreeValidation & v, std::string message) -> void
    {
        v.valid = false;
        v.diagnostics.push_back(std::move(message));
    }

    auto check_attributes(const DecisionTree & tree, const DecisionTable & table, TreeValidation & v) -> bool
    {
        for (auto a : tree.attributes())
            if (! table.column_of(a)) {
                fail(v, "attributes: " + a.name() + " is not a column of the table");
                return false;
            }
        return true;
    }
}

auto validate_deterministic(const DecisionTree & tree, const DecisionTable & table) -> TreeValidation
{
    if (table.is_empty())
        throw Error(ErrorCode::not_applicable, "no decision tree is defined for the empty table");

    TreeValidation v;
    if (auto defect = tree.structural_defect()) {
        fail(v, "structure: " + *defect);
        return v;
    }
    if (tree.node(0).children.size() != 1)
        fail(v, "root: " + std::to_string(tree.node(0).children.size()) + " edges leave the root");
    for (const auto & n : tree.nodes()) {
        if (n.kind != NodeKind::internal)
            continue;
        std::set<Value> labels;
        for (auto c : n.children)
            if (! labels.insert(*tree.node(c).edge_label).second)
                fail(v, "siblings: two edges leaving " + n.attribute.name() + " carry the label "
                        + std::to_string(*tree.node(c).edge_label));
    }
    if (! check_attributes(tree, table, v))
        return v;

    std::vector<bool> covered(table.num_rows(), false);
    for (const auto & path : complete_paths(tree)) {
        auto rows = path_rows(path, table);
        for (auto r : rows) {
            covered[r] = true;
            if (table.decision(r) != path.decision) {
                fail(v, "paths: " + describe_path(path) + " admits row " + format_tuple(table.row(r).values) + " with decision "
                        + std::to_string(table.decision(r)));
                break;
            }
        }
    }
    for (std::size_t r = 0; r < table.num_rows(); ++r)
        if (! covered[r])
            fail(v, "coverage: row " + format_tuple(table.row(r).values) + " reaches no terminal");
    return v;
}

auto validate_strongly_nondeterministic(const DecisionTree & tree, const DecisionTable & table) -> TreeValidation
{
    if (is_constant(table))
        throw Error(ErrorCode::not_applicable, "strongly nondeterministic trees are defined for non-constant tables only");

    TreeValidation v;
    if (auto defect = tree.structural_defect()) {
        fail(v, "structure: " + *defect);
        return v;
    }
    for (const auto & n : tree.nodes())
        if (n.kind == NodeKind::terminal && n.decision != 1) {
            fail(v, "terminals: a terminal is labeled 0");
            break;
        }
    if (! check_attributes(tree, table, v))
        return v;

    std::vector<bool> covered(table.num_rows(), false);
    for (const auto & path : complete_paths(tree)) {
        auto rows = path_rows(path, table);
        bool all_one = std::all_of(rows.begin(), rows.end(), [&](auto r) { return table.decision(r) == 1; });
        if (! all_one) {
            for (auto r : rows)
                if (table.decision(r) == 0) {
                    fail(v, "paths: " + describe_path(path) + " admits row " + format_tuple(table.row(r).values)
                            + " with decision 0");
                    break;
                }
            continue;
        }
        for (auto r : rows)
            covered[r] = true;
    }
    for (std::size_t r = 0; r < table.num_rows(); ++r)
        if (table.decision(r) == 1 && ! covered[r])
            fail(v, "coverage: row " + format_tuple(table.row(r).values) + " lies on no all-1 path");
    return v;
}

namespace {
    auto format_node(const DecisionTree & tree, std::size_t i, std::string & out) -> void
    {
        const auto & n = tree.node(i);
        switch (n.kind) {
            case NodeKind::terminal:
                out += "(leaf " + std::to_string(n.decision) + ")";
                return;
            case NodeKind::root:
                out += "(root";
                for (auto c : n.children) {
                    out += " ";
                    format_node(tree, c, out);
                }
                out += ")";
                return;
            case NodeKind::internal:
                out += "(" + n.attribute.name();
                for (auto c : n.children) {
                    out += " (" + std::to_string(*tree.node(c).edge_label) + " ";
                    format_node(tree, c, out);
                    out += ")";
                }
                out += ")";
                return;
        }
    }

    class TreeParser
    {
    public:
        explicit TreeParser(std::string_view text) :
            _text(text)
        {
        }

        auto parse() -> DecisionTree
        {
            expect("(");
            if (next() != "root")
                throw error("expected 'root'");
            while (peek() == "(")
                child(0, std::nullopt);
            expect(")");
            if (! peek().empty())
                throw error("trailing input");
            return std::move(_tree);
        }

    private:
        auto child(std::size_t parent, std::optional<Value> label) -> void
        {
            expect("(");
            auto head = next();
            if (head == "leaf") {
                auto d = detail::parse_int<Decision>(next(), 1);
                _tree.add_terminal(parent, label, d);
            }
            else {
                auto a = detail::parse_attribute(head, 1);
                auto node = _tree.add_internal(parent, label, a);
                while (peek() == "(") {
                    expect("(");
                    auto v = detail::parse_int<Value>(next(), 1);
                    child(node, v);
                    expect(")");
                }
            }
            expect(")");
        }

        auto skip_space() -> void
        {
            while (_pos < _text.size() && (_text[_pos] == ' ' || _text[_pos] == '\t' || _text[_pos] == '\n' || _text[_pos] == '\r'))
                ++_pos;
        }

        auto peek() -> std::string_view
        {
            auto saved = _pos;
            auto token = next();
            _pos = saved;
            return token;
        }

        auto next() -> std::string_view
        {
            skip_space();
            if (_pos >= _text.size())
                return {};
            if (_text[_pos] == '(' || _text[_pos] == ')')
                return _text.substr(_pos++, 1);
            auto start = _pos;
            while (_pos < _text.size() && _text[_pos] != '(' && _text[_pos] != ')' && _text[_pos] != ' ' && _text[_pos] != '\t'
                    && _text[_pos] != '\n' && _text[_pos] != '\r')
                ++_pos;
            return _text.substr(start, _pos - start);
        }

        auto expect(std::string_view token) -> void
        {
            auto got = next();
            if (got != token)
                throw error("expected '" + std::string(token) + "', got '" + std::string(got) + "'");
        }

        auto error(const std::string & what) const -> Error
        {
            return Error(ErrorCode::parse_error, "tree offset " + std::to_string(_pos) + ": " + what);
        }

        std::string_view _text;
        std::size_t _pos = 0;
        DecisionTree _tree;
    };
}

auto format_tree(const DecisionTree & tree) -> std::string
{
    std::string out;
    format_node(tree, 0, out);
    return out;
}

auto parse_tree(std::string_view text) -> DecisionTree
{
    return TreeParser(text).parse();
}

auto read_tree_file(const std::filesystem::path & path) -> DecisionTree
{
    return parse_tree(detail::read_text_file(path));
}

auto write_tree_file(const std::filesystem::path & path, const DecisionTree & tree) -> void
{
    detail::write_text_file(path, format_tree(tree) + "\n");
}

} // namespace dtc
