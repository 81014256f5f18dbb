#pragma once

#include "superkernel/morphism.hpp"
#include "superkernel/scalar.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace superkernel::dsl {

/// Byte range in a script plus its 1-based line and column.
struct Span {
    std::size_t offset = 0, length = 0;
    std::size_t line = 1, column = 1;
};

/// Syntax and name errors.
class ScriptError : public std::runtime_error {
public:
    ScriptError(const std::string& what, Span span) : std::runtime_error(what), span_(span) {}
    const Span& span() const noexcept { return span_; }

private:
    Span span_;
};

enum class Kind { Algebra, Domain, Morphism, Space, Bundle, Element, Function, Scalar, Integer, Text, Bool, List };
const char* to_string(Kind k) noexcept;

struct CallSpec;
struct Call;

/// A call argument: raw text (a name, an integer or a polynomial
/// expression, read according to the resolved signature) or a nested call.
struct Arg {
    std::string text;
    Span span;
    std::shared_ptr<Call> call;
};

struct Call {
    std::string name;
    std::vector<Arg> args;
    Span span;
    const CallSpec* spec = nullptr;
    std::string canonical() const;
};

struct WeilFields {
    std::vector<std::string> even, odd;
    std::optional<int> truncate;
    std::vector<Arg> relations;
    std::optional<Field> field;
};

struct AffineFields {
    std::size_t p = 0, q = 0;
    std::optional<std::vector<std::string>> even, odd;
    std::optional<Box> box;
    std::optional<std::string> coeff;
    std::optional<Field> field;
};

struct Assignment {
    std::string target;
    Span target_span;
    Arg value;
};

struct Statement {
    enum class Type { Algebra, Domain, Morphism, Space, Show, Check };
    Type type;
    Span span;
    std::string name;
    std::optional<WeilFields> weil;
    std::optional<AffineFields> affine;
    std::string source, target;
    std::vector<Assignment> components;
    std::optional<Call> call;

    std::string suite;
    std::vector<std::string> suite_args, with;
    std::optional<std::uint64_t> count, seed, case_index;

    /// Names of earlier definitions this statement refers to.
    std::vector<std::string> refs;
};

struct Script {
    std::string source;
    std::vector<Statement> statements;
    std::string text(const Statement& s) const { return source.substr(s.span.offset, s.span.length); }
};

/// Names must be declared before use; calls are resolved against the
/// builtin signatures here.
Script parse(std::string_view source);

struct Options {
    bool json = false;
    std::uint64_t seed = 0;
    /// Degree cap for the ideal computations behind subspaces.
    std::optional<int> max_degree;
    /// Used by definitions that do not name a field.
    Field field = Field::Real;
};

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsageError = 2, kKernelError = 3 };

struct Report {
    int exit_code = kOk;
    /// Canonical text, or the JSON document when Options::json is set.
    std::string output;
    /// Diagnostics meant for stderr.
    std::string diagnostics;
};

Report execute(const Script& script, const Options& options);
/// parse + execute; syntax errors become exit code 2.
Report run(std::string_view source, const Options& options);

/// Definitions that parse back to the same object.
std::string render_algebra(const std::string& name, const WeilAlgebra& a);
/// coeff_name names an earlier algebra definition (ignored for a trivial
/// coefficient algebra).
std::string render_domain(const std::string& name, const SuperDomain& x, const std::string& coeff_name = "");
std::string render_morphism(const std::string& name, const std::string& source, const std::string& target,
                            const SuperMorphism& m);

}  // namespace superkernel::dsl
