#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dtc {

/// Subset of the row indices 0..universe-1 of one table.
class RowSet
{
public:
    RowSet() = default;

    explicit RowSet(std::size_t universe) :
        _universe(universe),
        _words((universe + 63) / 64, 0)
    {
    }

    static auto full(std::size_t universe) -> RowSet
    {
        RowSet result(universe);
        for (std::size_t i = 0; i < universe; ++i)
            result.insert(i);
        return result;
    }

    auto universe() const -> std::size_t { return _universe; }

    auto insert(std::size_t i) -> void { _words[i / 64] |= (std::uint64_t{1} << (i % 64)); }

    auto contains(std::size_t i) const -> bool { return (_words[i / 64] >> (i % 64)) & 1U; }

    auto count() const -> std::size_t
    {
        std::size_t result = 0;
        for (auto w : _words)
            result += static_cast<std::size_t>(std::popcount(w));
        return result;
    }

    auto empty() const -> bool
    {
        for (auto w : _words)
            if (w != 0)
                return false;
        return true;
    }

    template <typename F>
    auto for_each(F && f) const -> void
    {
        for (std::size_t wi = 0; wi < _words.size(); ++wi) {
            auto w = _words[wi];
            while (w != 0) {
                auto bit = static_cast<std::size_t>(std::countr_zero(w));
                f(wi * 64 + bit);
                w &= w - 1;
            }
        }
    }

    auto hash() const -> std::size_t
    {
        std::size_t h = _universe;
        for (auto w : _words)
            h ^= static_cast<std::size_t>(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    friend auto operator==(const RowSet &, const RowSet &) -> bool = default;

private:
    std::size_t _universe = 0;
    std::vector<std::uint64_t> _words;
};

} // namespace dtc
