#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyprod {

enum class ErrorCode {
    DanglingId,
    NonHasseCover,
    CyclicCovers,
    NotAPolytope,
    NotComparable,
    AlreadyBounded,
    ParameterOutOfRange,
    TopologicalRankTooLow,
    EmptyOperand,
    Disconnected,
    RebuildMismatch,
    TooLargeForOracle,
    DegreeMismatch,
    NotASubgroup,
    SearchBudgetExceeded,
    RankOutOfRange,
    FlagNotOfProduct,
    EmbeddingMismatch,
    SyntaxError,
    RangeError,
    InvalidInput,
};

auto error_code_name(ErrorCode code) -> std::string_view;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code)
    {
    }

    auto code() const -> ErrorCode { return code_; }

private:
    ErrorCode code_;
};

} // namespace polyprod
