#pragma once

#include <dtc/closure.hpp>
#include <dtc/measure.hpp>
#include <dtc/table.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dtc {

/// FW: max psi^d with W_psi <= n.  FTheta: max psi^d with Theta_psi <= n.
/// F: max psi^d with psi^s <= n.   G: max psi^s with W_psi <= n.
enum class GrowthFunction { fw, ftheta, f, g };

auto parse_growth_function(const std::string & name) -> GrowthFunction;
auto to_string(GrowthFunction fn) -> std::string;

/// The largest element of the increasing sequence that does not exceed n, or 0.
auto h_step(std::span<const int> steps, int n) -> int;

struct GrowthPoint
{
    int n = 0;
    Cost value = 0;
    bool exhausted = false;
    /// F only: the enumeration stopped early, so the value may still grow
    /// or the function may be undefined on this prefix.
    bool possibly_undefined = false;
};

struct GrowthReport
{
    GrowthFunction fn = GrowthFunction::fw;
    std::string generator;
    std::string measure;
    EnumerationLimits limits;
    std::size_t members = 0;
    std::vector<GrowthPoint> points;
};

/// A named generator list, optionally with the measure and step set that
/// belong to it.
struct GeneratorSet
{
    std::string name;
    std::vector<DecisionTable> tables;
    std::optional<ComplexityMeasure> measure;
    std::vector<int> steps;
};

/// `builtin:id<m>`, `builtin:thm3:<i,...>`, `builtin:fig5:<phi(1),phi(2),...>`,
/// a directory of .dt files (sorted by name) or a single .dt file.
auto load_generators(const std::string & spec) -> GeneratorSet;

/// Throws unbounded_measure unless psi(alpha) >= |alpha| is structural or
/// passes an exhaustive check over the generators' attributes.
auto require_bounded(const ComplexityMeasure & psi, std::span<const DecisionTable> generators) -> void;

/// One closure pass shared by every requested function.
auto growth(std::span<const GrowthFunction> fns, std::span<const DecisionTable> generators, const ComplexityMeasure & psi,
        int max_n, const EnumerationLimits & limits) -> std::vector<GrowthReport>;

auto growth(GrowthFunction fn, std::span<const DecisionTable> generators, const ComplexityMeasure & psi, int max_n,
        const EnumerationLimits & limits) -> GrowthReport;

struct ClassStats
{
    std::size_t members = 0;   ///< members of A_psi(n) seen
    Cost s = 0;                ///< max S over them
    std::size_t n_rows = 0;    ///< max N over them
    bool exhausted = false;
};

auto class_stats(std::span<const DecisionTable> generators, const ComplexityMeasure & psi, Cost n,
        const EnumerationLimits & limits) -> ClassStats;

auto format_growth(const GrowthReport & report) -> std::string;
auto format_growth_csv(const GrowthReport & report) -> std::string;

} // namespace dtc
