#include <dtc/error.hpp>
#include <dtc/measure.hpp>

#include "text_util.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dtc {

struct ComplexityMeasure::Node
{
    Kind kind = Kind::depth;
    WeightMap weights;
    std::vector<ComplexityMeasure> children;
    std::string name;
    OpaqueFunction fn;
    std::size_t slots = 1;
};

namespace {
    auto check_weights(const WeightMap & weights) -> void
    {
        if (weights.default_weight < 1)
            throw Error(ErrorCode::bad_argument, "default weight must be positive");
        for (auto [index, w] : weights.weights)
            if (w < 1)
                throw Error(ErrorCode::bad_argument, "weight of f" + std::to_string(index) + " must be positive");
    }

    auto combinator(std::vector<ComplexityMeasure> children)
    {
        if (children.empty())
            throw Error(ErrorCode::bad_argument, "a combined measure needs at least one component");
        return children;
    }
}

ComplexityMeasure::ComplexityMeasure(std::shared_ptr<const Node> node) :
    _node(std::move(node))
{
}

auto ComplexityMeasure::depth() -> ComplexityMeasure
{
    auto node = std::make_shared<Node>();
    node->kind = Kind::depth;
    return ComplexityMeasure(std::move(node));
}

auto ComplexityMeasure::additive(WeightMap weights) -> ComplexityMeasure
{
    check_weights(weights);
    auto node = std::make_shared<Node>();
    node->kind = Kind::additive;
    node->weights = std::move(weights);
    return ComplexityMeasure(std::move(node));
}

auto ComplexityMeasure::max_weight(WeightMap weights) -> ComplexityMeasure
{
    check_weights(weights);
    auto node = std::make_shared<Node>();
    node->kind = Kind::max_weight;
    node->weights = std::move(weights);
    return ComplexityMeasure(std::move(node));
}

auto ComplexityMeasure::sum_of(std::vector<ComplexityMeasure> children) -> ComplexityMeasure
{
    auto node = std::make_shared<Node>();
    node->kind = Kind::sum_of;
    node->children = combinator(std::move(children));
    node->slots = 0;
    for (const auto & c : node->children)
        node->slots += c.decomposable() ? c.slot_count() : 0;
    return ComplexityMeasure(std::move(node));
}

auto ComplexityMeasure::max_of(std::vector<ComplexityMeasure> children) -> ComplexityMeasure
{
    auto node = std::make_shared<Node>();
    node->kind = Kind::max_of;
    node->children = combinator(std::move(children));
    node->slots = 0;
    for (const auto & c : node->children)
        node->slots += c.decomposable() ? c.slot_count() : 0;
    return ComplexityMeasure(std::move(node));
}

auto ComplexityMeasure::opaque(std::string name, OpaqueFunction fn) -> ComplexityMeasure
{
    auto node = std::make_shared<Node>();
    node->kind = Kind::opaque;
    node->name = std::move(name);
    node->fn = std::move(fn);
    node->slots = 0;
    return ComplexityMeasure(std::move(node));
}

auto ComplexityMeasure::kind() const -> Kind { return _node->kind; }
auto ComplexityMeasure::weights() const -> const WeightMap & { return _node->weights; }
auto ComplexityMeasure::children() const -> const std::vector<ComplexityMeasure> & { return _node->children; }
auto ComplexityMeasure::slot_count() const -> std::size_t { return _node->slots; }

auto ComplexityMeasure::cost(std::span<const Attribute> word) const -> Cost
{
    switch (_node->kind) {
        case Kind::depth:
            return static_cast<Cost>(word.size());
        case Kind::additive: {
            Cost total = 0;
            for (auto a : word)
                total += _node->weights.at(a);
            return total;
        }
        case Kind::max_weight: {
            Cost best = 0;
            for (auto a : word)
                best = std::max(best, _node->weights.at(a));
            return best;
        }
        case Kind::sum_of: {
            Cost total = 0;
            for (const auto & c : _node->children)
                total += c.cost(word);
            return total;
        }
        case Kind::max_of: {
            Cost best = 0;
            for (const auto & c : _node->children)
                best = std::max(best, c.cost(word));
            return best;
        }
        case Kind::opaque:
            return _node->fn(word);
    }
    return 0;
}

auto ComplexityMeasure::single(Attribute a) const -> Cost
{
    return cost(std::span<const Attribute>(&a, 1));
}

auto ComplexityMeasure::decomposable() const -> bool
{
    switch (_node->kind) {
        case Kind::opaque:
            return false;
        case Kind::sum_of:
        case Kind::max_of:
            return std::all_of(_node->children.begin(), _node->children.end(), [](const auto & c) { return c.decomposable(); });
        default:
            return true;
    }
}

auto ComplexityMeasure::structurally_bounded() const -> std::optional<bool>
{
    switch (_node->kind) {
        case Kind::depth:
        case Kind::additive:
            return true;
        case Kind::max_weight:
            return false;
        case Kind::sum_of:
        case Kind::max_of: {
            bool unknown = false;
            for (const auto & c : _node->children) {
                auto b = c.structurally_bounded();
                if (b && *b)
                    return true;
                if (! b)
                    unknown = true;
            }
            return unknown ? std::nullopt : std::optional<bool>(false);
        }
        case Kind::opaque:
            return std::nullopt;
    }
    return std::nullopt;
}

auto ComplexityMeasure::initial() const -> CostState
{
    if (! decomposable())
        throw Error(ErrorCode::not_decomposable, describe() + " has no incremental cost state");
    return CostState{std::vector<Cost>(slot_count(), 0)};
}

auto ComplexityMeasure::extend(const CostState & state, Attribute a) const -> CostState
{
    if (! decomposable())
        throw Error(ErrorCode::not_decomposable, describe() + " has no incremental cost state");
    CostState result = state;
    extend_into(result.slots, a);
    return result;
}

auto ComplexityMeasure::value(const CostState & state) const -> Cost
{
    if (! decomposable())
        throw Error(ErrorCode::not_decomposable, describe() + " has no incremental cost state");
    return value_of(state.slots);
}

auto ComplexityMeasure::extend_into(std::span<Cost> slots, Attribute a) const -> void
{
    switch (_node->kind) {
        case Kind::depth:      slots[0] += 1; break;
        case Kind::additive:   slots[0] += _node->weights.at(a); break;
        case Kind::max_weight: slots[0] = std::max(slots[0], _node->weights.at(a)); break;
        case Kind::sum_of:
        case Kind::max_of: {
            std::size_t offset = 0;
            for (const auto & c : _node->children) {
                c.extend_into(slots.subspan(offset, c.slot_count()), a);
                offset += c.slot_count();
            }
            break;
        }
        case Kind::opaque: break;
    }
}

auto ComplexityMeasure::value_of(std::span<const Cost> slots) const -> Cost
{
    switch (_node->kind) {
        case Kind::depth:
        case Kind::additive:
        case Kind::max_weight:
            return slots[0];
        case Kind::sum_of:
        case Kind::max_of: {
            Cost result = 0;
            std::size_t offset = 0;
            for (const auto & c : _node->children) {
                auto v = c.value_of(slots.subspan(offset, c.slot_count()));
                result = _node->kind == Kind::sum_of ? result + v : std::max(result, v);
                offset += c.slot_count();
            }
            return result;
        }
        case Kind::opaque:
            return 0;
    }
    return 0;
}

namespace {
    auto describe_weights(const WeightMap & w) -> std::string
    {
        std::string result = "default=" + std::to_string(w.default_weight);
        for (auto [index, weight] : w.weights)
            result += ",f" + std::to_string(index) + "=" + std::to_string(weight);
        return result;
    }
}

auto ComplexityMeasure::describe() const -> std::string
{
    switch (_node->kind) {
        case Kind::depth:      return "h";
        case Kind::additive:   return "additive(" + describe_weights(_node->weights) + ")";
        case Kind::max_weight: return "maxw(" + describe_weights(_node->weights) + ")";
        case Kind::sum_of:
        case Kind::max_of: {
            std::string result = _node->kind == Kind::sum_of ? "sum(" : "max(";
            for (std::size_t i = 0; i < _node->children.size(); ++i)
                result += (i ? "," : "") + _node->children[i].describe();
            return result + ")";
        }
        case Kind::opaque: return "opaque(" + _node->name + ")";
    }
    return "?";
}

auto set_cost(const ComplexityMeasure & psi, std::span<const Attribute> attrs) -> Cost
{
    std::vector<Attribute> word(attrs.begin(), attrs.end());
    std::sort(word.begin(), word.end());
    word.erase(std::unique(word.begin(), word.end()), word.end());
    return psi.cost(word);
}

auto table_weights(const ComplexityMeasure & psi, const DecisionTable & table) -> TableWeights
{
    if (table.is_empty())
        return {};
    TableWeights result;
    result.w = set_cost(psi, table.columns());
    for (auto a : table.columns())
        result.v = std::max(result.v, psi.single(a));
    return result;
}

namespace {
    using Counts = std::vector<int>;

    auto word_of(const Counts & counts, std::span<const Attribute> pool) -> std::vector<Attribute>
    {
        std::vector<Attribute> word;
        for (std::size_t i = 0; i < counts.size(); ++i)
            for (int c = 0; c < counts[i]; ++c)
                word.push_back(pool[i]);
        return word;
    }

    auto multisets_of_size(std::size_t pool_size, int size) -> std::vector<Counts>
    {
        std::vector<Counts> result;
        Counts current(pool_size, 0);
        auto rec = [&](auto & self, std::size_t i, int remaining) -> void {
            if (i + 1 == pool_size) {
                current[i] = remaining;
                result.push_back(current);
                current[i] = 0;
                return;
            }
            for (int c = remaining; c >= 0; --c) {
                current[i] = c;
                self(self, i + 1, remaining - c);
            }
            current[i] = 0;
        };
        if (pool_size == 0) {
            if (size == 0)
                result.emplace_back();
            return result;
        }
        rec(rec, 0, size);
        return result;
    }

    auto binomial(std::size_t n, std::size_t k) -> double
    {
        double r = 1;
        for (std::size_t i = 1; i <= k; ++i)
            r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
        return r;
    }
}

auto check_axioms(const ComplexityMeasure & psi, std::span<const Attribute> pool, int max_len) -> AxiomReport
{
    if (max_len < 1)
        throw Error(ErrorCode::bad_argument, "max_len must be at least 1");
    if (binomial(pool.size() + static_cast<std::size_t>(max_len), pool.size()) > 200000.0)
        throw Error(ErrorCode::too_large, "too many multisets to check exhaustively");

    AxiomReport report;
    auto violate = [&](bool & flag, const std::string & what) {
        flag = false;
        if (! report.first_violation)
            report.first_violation = what;
    };

    std::map<Counts, Cost> costs;
    std::vector<std::vector<Counts>> by_size;
    for (int s = 0; s <= max_len; ++s) {
        by_size.push_back(multisets_of_size(pool.size(), s));

        for (const auto & m : by_size.back()) {
            auto word = word_of(m, pool);
            auto c = psi.cost(word);
            costs[m] = c;
            auto shown = "'" + format_attributes(word) + "'";
            if ((s == 0) != (c == 0))
                violate(report.positivity, "positivity fails on " + shown + " (cost " + std::to_string(c) + ")");
            if (c < s)
                violate(report.bounded, "boundedness from below fails on " + shown + " (cost " + std::to_string(c) + " < length "
                        + std::to_string(s) + ")");
            if (s <= 7) {
                std::vector<std::size_t> letters;
                for (std::size_t i = 0; i < m.size(); ++i)
                    for (int r = 0; r < m[i]; ++r)
                        letters.push_back(i);
                std::vector<Attribute> permuted(word.size());
                while (std::next_permutation(letters.begin(), letters.end())) {
                    for (std::size_t i = 0; i < letters.size(); ++i)
                        permuted[i] = pool[letters[i]];
                    if (psi.cost(permuted) != c) {
                        violate(report.commutativity, "commutativity fails on a permutation of " + shown);
                        break;
                    }
                }
            }
        }

        for (int a = 0; a <= s; ++a)
            for (const auto & m1 : by_size[a])
                for (const auto & m2 : by_size[s - a]) {
                    Counts joined(m1.size());
                    for (std::size_t i = 0; i < joined.size(); ++i)
                        joined[i] = m1[i] + m2[i];
                    auto c1 = costs[m1], c2 = costs[m2], c12 = costs[joined];
                    auto shown = "'" + format_attributes(word_of(m1, pool)) + "' and '" + format_attributes(word_of(m2, pool)) + "'";
                    if (c1 > c12)
                        violate(report.nondecreasing, "nondecreasing fails on " + shown);
                    if (c12 > c1 + c2)
                        violate(report.subadditive, "boundedness from above fails on " + shown);
                }
    }
    return report;
}

auto parse_measure(std::string_view text) -> ComplexityMeasure
{
    auto lines = detail::content_lines(text);
    if (lines.empty())
        throw Error(ErrorCode::parse_error, "expected a 'kind' line");

    std::string kind;
    WeightMap weights;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        auto [line_no, line] = lines[li];
        auto words = detail::split_words(line);
        if (li == 0) {
            if (words.size() != 2 || words[0] != "kind")
                throw detail::parse_error(line_no, "expected 'kind depth|additive|maxw'");
            kind = words[1];
            if (kind != "depth" && kind != "additive" && kind != "maxw")
                throw detail::parse_error(line_no, "unknown measure kind '" + kind + "'");
            continue;
        }
        if (kind == "depth")
            throw detail::parse_error(line_no, "the depth measure takes no weights");
        if (words[0] == "default" && words.size() == 2)
            weights.default_weight = detail::parse_int<Cost>(words[1], line_no);
        else if (words[0] == "weight" && words.size() == 3) {
            auto a = detail::parse_attribute(words[1], line_no);
            if (weights.weights.contains(a.index))
                throw detail::parse_error(line_no, "duplicate weight for " + a.name());
            weights.weights[a.index] = detail::parse_int<Cost>(words[2], line_no);
        }
        else
            throw detail::parse_error(line_no, "expected 'default <w>' or 'weight f<i> <w>'");
    }
    if (kind == "depth")
        return ComplexityMeasure::depth();
    return kind == "additive" ? ComplexityMeasure::additive(weights) : ComplexityMeasure::max_weight(weights);
}

auto format_measure(const ComplexityMeasure & psi) -> std::string
{
    std::ostringstream out;
    switch (psi.kind()) {
        case ComplexityMeasure::Kind::depth:
            out << "kind depth\n";
            break;
        case ComplexityMeasure::Kind::additive:
        case ComplexityMeasure::Kind::max_weight:
            out << "kind " << (psi.kind() == ComplexityMeasure::Kind::additive ? "additive" : "maxw") << "\n";
            out << "default " << psi.weights().default_weight << "\n";
            for (auto [index, w] : psi.weights().weights)
                out << "weight f" << index << " " << w << "\n";
            break;
        default:
            throw Error(ErrorCode::bad_argument, psi.describe() + " has no .cm representation");
    }
    return out.str();
}

auto read_measure_file(const std::filesystem::path & path) -> ComplexityMeasure
{
    return parse_measure(detail::read_text_file(path));
}

auto write_measure_file(const std::filesystem::path & path, const ComplexityMeasure & psi) -> void
{
    detail::write_text_file(path, format_measure(psi));
}

auto measure_from_spec(const std::string & spec) -> ComplexityMeasure
{
    if (spec == "h" || spec == "depth")
        return ComplexityMeasure::depth();
    for (std::string prefix : {"sum:", "max:"}) {
        if (spec.rfind(prefix, 0) == 0) {
            std::vector<ComplexityMeasure> parts;
            std::stringstream list(spec.substr(prefix.size()));
            std::string item;
            while (std::getline(list, item, ','))
                if (! item.empty())
                    parts.push_back(measure_from_spec(item));
            if (parts.size() < 2)
                throw Error(ErrorCode::bad_argument, "'" + spec + "' needs at least two measures");
            return prefix == "sum:" ? ComplexityMeasure::sum_of(std::move(parts)) : ComplexityMeasure::max_of(std::move(parts));
        }
    }
    return read_measure_file(spec);
}

} // namespace dtc
