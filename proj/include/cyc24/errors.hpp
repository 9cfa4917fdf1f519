#pragma once

#include <stdexcept>
#include <string>

namespace cyc24 {

// Base of all library errors. `input_error` marks precondition violations a
// caller can fix (CLI exit code 2); `internal_error` marks broken invariants
// that indicate a bug or a genuinely impossible configuration (exit code 3).
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct input_error : error {
    using error::error;
};

struct internal_error : error {
    using error::error;
};

struct NotPrime : input_error {
    using input_error::input_error;
};

struct NotOneModN : input_error {
    using input_error::input_error;
};

struct NotPrimitive : input_error {
    using input_error::input_error;
};

struct ZeroElement : input_error {
    using input_error::input_error;
};

struct NoAdmissibleGenerator : internal_error {
    using internal_error::internal_error;
};

struct NotInSpan : internal_error {
    using internal_error::internal_error;
};

struct InvariantViolation : internal_error {
    using internal_error::internal_error;
};

struct ClassMismatch : input_error {
    using input_error::input_error;
};

struct RankDeficient : input_error {
    int rank;
    RankDeficient(int r, const std::string& msg) : input_error(msg), rank(r) {}
};

struct NonIntegralCoefficient : internal_error {
    using internal_error::internal_error;
};

struct ValidationFailure : internal_error {
    using internal_error::internal_error;
};

struct NonZeroOmitted : input_error {
    using input_error::input_error;
};

struct DimensionMismatch : input_error {
    using input_error::input_error;
};

struct UnknownVariable : input_error {
    using input_error::input_error;
};

struct StructureViolation : internal_error {
    using internal_error::internal_error;
};

} // namespace cyc24
