#pragma once

#include <stdexcept>
#include <string>

namespace superkernel {

/// Base class of every error raised by the kernel.
class KernelError : public std::runtime_error {
public:
    KernelError(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define SUPERKERNEL_DEFINE_ERROR(Name)                                       \
    class Name : public KernelError {                                        \
    public:                                                                  \
        explicit Name(const std::string& what) : KernelError(#Name, what) {} \
    };

SUPERKERNEL_DEFINE_ERROR(ContextError)
SUPERKERNEL_DEFINE_ERROR(FieldError)
SUPERKERNEL_DEFINE_ERROR(TruncationError)
SUPERKERNEL_DEFINE_ERROR(NotLocalError)
SUPERKERNEL_DEFINE_ERROR(NotInvertibleError)
SUPERKERNEL_DEFINE_ERROR(NotAMorphismError)
SUPERKERNEL_DEFINE_ERROR(ParityError)
SUPERKERNEL_DEFINE_ERROR(DomainError)
SUPERKERNEL_DEFINE_ERROR(ValueFieldError)
SUPERKERNEL_DEFINE_ERROR(MappingConditionError)
SUPERKERNEL_DEFINE_ERROR(NoFactorizationError)
SUPERKERNEL_DEFINE_ERROR(BoundedVerdict)
SUPERKERNEL_DEFINE_ERROR(CsRepresentabilityError)

#undef SUPERKERNEL_DEFINE_ERROR

}  // namespace superkernel

namespace superkernel {

/// Malformed text input; offset is a byte position in the parsed string.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : std::runtime_error(what), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace superkernel
