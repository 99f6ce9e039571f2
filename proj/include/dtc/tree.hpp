#pragma once

#include <dtc/measure.hpp>
#include <dtc/table.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dtc {

enum class NodeKind { root, internal, terminal };

struct TreeNode
{
    NodeKind kind = NodeKind::root;
    Attribute attribute;                ///< internal nodes only
    Decision decision = 0;              ///< terminal nodes only
    std::optional<Value> edge_label;    ///< label of the edge from the parent; empty below the root
    std::size_t parent = 0;
    std::vector<std::size_t> children;
};

/// A k-decision tree. Node 0 is the root; nodes are appended under an
/// existing parent, so the structure is a tree by construction.
class DecisionTree
{
public:
    DecisionTree();

    /// Edges leaving the root take no label; edges leaving an internal node
    /// need one.
    auto add_internal(std::size_t parent, std::optional<Value> label, Attribute a) -> std::size_t;
    auto add_terminal(std::size_t parent, std::optional<Value> label, Decision d) -> std::size_t;

    auto nodes() const -> const std::vector<TreeNode> & { return _nodes; }
    auto node(std::size_t i) const -> const TreeNode & { return _nodes[i]; }
    auto size() const -> std::size_t { return _nodes.size(); }

    /// P(Gamma), sorted by index.
    auto attributes() const -> std::vector<Attribute>;

    /// Reports the first structural defect: fewer than two nodes, or an
    /// internal node without outgoing edges.
    auto structural_defect() const -> std::optional<std::string>;

    friend auto operator==(const DecisionTree & a, const DecisionTree & b) -> bool;

private:
    auto add(std::size_t parent, std::optional<Value> label, TreeNode node) -> std::size_t;

    std::vector<TreeNode> _nodes;
};

struct CompletePath
{
    std::vector<std::size_t> nodes;   ///< root first, terminal last
    std::vector<Attribute> word;      ///< F(tau)
    std::vector<Fixing> fixings;      ///< (attribute, edge value) per internal node
    Decision decision = 0;
};

auto complete_paths(const DecisionTree & tree) -> std::vector<CompletePath>;

/// max over complete paths of psi(F(tau)); 0 for a root-terminal tree.
auto tree_cost(const ComplexityMeasure & psi, const DecisionTree & tree) -> Cost;

struct TreeValidation
{
    bool valid = true;
    std::vector<std::string> diagnostics;

    explicit operator bool() const { return valid; }
};

/// Throws not_applicable for the empty table.
auto validate_deterministic(const DecisionTree & tree, const DecisionTable & table) -> TreeValidation;

/// Throws not_applicable for a constant table.
auto validate_strongly_nondeterministic(const DecisionTree & tree, const DecisionTable & table) -> TreeValidation;

/// Single-line s-expression: `(root <child>...)`, `(f<i> (<v> <child>)...)`, `(leaf <d>)`.
auto format_tree(const DecisionTree & tree) -> std::string;
auto parse_tree(std::string_view text) -> DecisionTree;
auto read_tree_file(const std::filesystem::path & path) -> DecisionTree;
auto write_tree_file(const std::filesystem::path & path, const DecisionTree & tree) -> void;

} // namespace dtc
