#pragma once

#include <stdexcept>
#include <string>

namespace textcat {

/// Failure categories. Each maps onto one CLI exit code.
enum class ErrorKind {
    MalformedRecord,
    DuplicateId,
    IoFailure,
    EmptyResult,
    EmptyVocabulary,
    DomainError,
    InvalidK,
    EmptyCategory,
    EmptyModel,
    NegativeWeight,
    UnsortedInput,
    UnknownDocId,
    ModelVersion,
    InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

/// Process exit code for a failure kind: 2 = input error, 3 = empty result, 4 = I/O.
int exit_code(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

    /// Pipeline stage that raised the error, empty if unknown.
    const std::string& stage() const noexcept { return stage_; }
    Error with_stage(std::string stage) const;

private:
    ErrorKind kind_;
    std::string stage_;
};

}  // namespace textcat
