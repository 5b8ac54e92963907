#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace jl {

// Shared error taxonomy. `kind()` is a stable machine-readable tag (the CLI
// serializes it); `internal()` distinguishes "caller violated a contract"
// from "the library detected an inconsistency in its own computation".
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail, bool internal = false)
        : std::runtime_error(detail), kind_(std::move(kind)), internal_(internal) {}
    const std::string& kind() const noexcept { return kind_; }
    bool internal() const noexcept { return internal_; }

private:
    std::string kind_;
    bool internal_;
};

#define JL_DEFINE_ERROR(Name)                                                  \
    struct Name : Error {                                                      \
        explicit Name(const std::string& d) : Error(#Name, d) {}               \
    }

#define JL_DEFINE_INTERNAL_ERROR(Name)                                         \
    struct Name : Error {                                                      \
        explicit Name(const std::string& d) : Error(#Name, d, true) {}         \
    }

JL_DEFINE_ERROR(PreconditionError);
JL_DEFINE_ERROR(NotAUnit);
JL_DEFINE_ERROR(SimpleRootViolated);
JL_DEFINE_ERROR(ZeroConstantTerm);
JL_DEFINE_ERROR(NotSquarefree);
JL_DEFINE_ERROR(Inconclusive);
JL_DEFINE_ERROR(NotInvertible);
JL_DEFINE_ERROR(NotRegularSemisimple);
JL_DEFINE_ERROR(DegreeMismatch);
JL_DEFINE_ERROR(NotTransferable);
JL_DEFINE_ERROR(RankRange);
JL_DEFINE_ERROR(ShapeMismatch);
JL_DEFINE_ERROR(NotSeparable);
JL_DEFINE_ERROR(IncompatibleCharacter);
JL_DEFINE_ERROR(TermMismatch);
JL_DEFINE_ERROR(NonVanishingUnmatched);
JL_DEFINE_ERROR(RamifiedAtDefault);
JL_DEFINE_ERROR(NotRational);
JL_DEFINE_ERROR(UnknownCommand);
JL_DEFINE_ERROR(SchemaViolation);

JL_DEFINE_INTERNAL_ERROR(SplittingDrift);
JL_DEFINE_INTERNAL_ERROR(SearchFailed);
JL_DEFINE_INTERNAL_ERROR(InternalError);

#undef JL_DEFINE_ERROR
#undef JL_DEFINE_INTERNAL_ERROR

} // namespace jl
