#pragma once

#include <dtc/error.hpp>
#include <dtc/table.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace dtc::detail {

inline auto split_words(std::string_view line) -> std::vector<std::string_view>
{
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        auto start = i;
        while (i < line.size() && ! (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        if (i > start)
            words.push_back(line.substr(start, i - start));
    }
    return words;
}

/// Non-blank, non-comment lines together with their 1-based line numbers.
inline auto content_lines(std::string_view text) -> std::vector<std::pair<std::size_t, std::string_view>>
{
    std::vector<std::pair<std::size_t, std::string_view>> result;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(pos, end - pos);
        ++line_no;
        auto words = split_words(line);
        if (! words.empty() && words.front().front() != '#')
            result.emplace_back(line_no, line);
        pos = end + 1;
    }
    return result;
}

inline auto parse_error(std::size_t line_no, const std::string & what) -> Error
{
    return Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

template <typename Int>
auto parse_int(std::string_view word, std::size_t line_no) -> Int
{
    Int result{};
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), result);
    if (ec != std::errc{} || ptr != word.data() + word.size())
        throw parse_error(line_no, "expected an integer, got '" + std::string(word) + "'");
    return result;
}

inline auto parse_attribute(std::string_view word, std::size_t line_no) -> Attribute
{
    if (word.size() < 2 || word.front() != 'f')
        throw parse_error(line_no, "expected an attribute f<i>, got '" + std::string(word) + "'");
    auto index = parse_int<int>(word.substr(1), line_no);
    if (index < 0)
        throw parse_error(line_no, "negative attribute index");
    return Attribute{index};
}

inline auto read_text_file(const std::filesystem::path & path) -> std::string
{
    std::ifstream in(path);
    if (! in)
        throw Error(ErrorCode::bad_argument, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline auto write_text_file(const std::filesystem::path & path, const std::string & text) -> void
{
    std::ofstream out(path);
    if (! out)
        throw Error(ErrorCode::bad_argument, "cannot write " + path.string());
    out << text;
}

} // namespace dtc::detail
