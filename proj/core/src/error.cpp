#include "textcat/error.hpp"

namespace textcat {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::MalformedRecord: return "MalformedRecord";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::IoFailure: return "IoFailure";
        case ErrorKind::EmptyResult: return "EmptyResult";
        case ErrorKind::EmptyVocabulary: return "EmptyVocabulary";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::InvalidK: return "InvalidK";
        case ErrorKind::EmptyCategory: return "EmptyCategory";
        case ErrorKind::EmptyModel: return "EmptyModel";
        case ErrorKind::NegativeWeight: return "NegativeWeight";
        case ErrorKind::UnsortedInput: return "UnsortedInput";
        case ErrorKind::UnknownDocId: return "UnknownDocId";
        case ErrorKind::ModelVersion: return "ModelVersion";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::IoFailure:
            return 4;
        case ErrorKind::EmptyResult:
        case ErrorKind::EmptyVocabulary:
        case ErrorKind::EmptyCategory:
        case ErrorKind::EmptyModel:
            return 3;
        default:
            return 2;
    }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

Error Error::with_stage(std::string stage) const {
    Error copy = *this;
    copy.stage_ = std::move(stage);
    return copy;
}

}  // namespace textcat
