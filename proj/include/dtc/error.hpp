#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtc {

enum class ErrorCode {
    duplicate_row,
    duplicate_column,
    value_out_of_range,
    bad_decision,
    bad_arity,
    zero_column_rows,
    unknown_attribute,
    partial_relabeling,
    not_applicable,
    not_decomposable,
    too_large,
    row_not_in_table,
    bad_tuple_length,
    not_critical,
    too_few_rows,
    bad_phi,
    contains_zero,
    too_many_rows,
    unbounded_measure,
    parse_error,
    bad_argument,
};

auto to_string(ErrorCode code) -> std::string_view;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string & message);

    auto code() const noexcept -> ErrorCode { return _code; }

private:
    ErrorCode _code;
};

} // namespace dtc
