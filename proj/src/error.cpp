#include <dtc/error.hpp>

namespace dtc {

auto to_string(ErrorCode code) -> std::string_view
{
    switch (code) {
        case ErrorCode::duplicate_row:      return "DuplicateRow";
        case ErrorCode::duplicate_column:   return "DuplicateColumn";
        case ErrorCode::value_out_of_range: return "ValueOutOfRange";
        case ErrorCode::bad_decision:       return "BadDecision";
        case ErrorCode::bad_arity:          return "BadArity";
        case ErrorCode::zero_column_rows:   return "ZeroColumnRows";
        case ErrorCode::unknown_attribute:  return "UnknownAttribute";
        case ErrorCode::partial_relabeling: return "PartialRelabeling";
        case ErrorCode::not_applicable:     return "NotApplicable";
        case ErrorCode::not_decomposable:   return "NotDecomposable";
        case ErrorCode::too_large:          return "TooLarge";
        case ErrorCode::row_not_in_table:   return "RowNotInTable";
        case ErrorCode::bad_tuple_length:   return "BadTupleLength";
        case ErrorCode::not_critical:       return "NotCritical";
        case ErrorCode::too_few_rows:       return "TooFewRows";
        case ErrorCode::bad_phi:            return "BadPhi";
        case ErrorCode::contains_zero:      return "ContainsZero";
        case ErrorCode::too_many_rows:      return "TooManyRows";
        case ErrorCode::unbounded_measure:  return "UnboundedMeasure";
        case ErrorCode::parse_error:        return "ParseError";
        case ErrorCode::bad_argument:       return "BadArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string & message) :
    std::runtime_error(std::string(to_string(code)) + ": " + message),
    _code(code)
{
}

} // namespace dtc
