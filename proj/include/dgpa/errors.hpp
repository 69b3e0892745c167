#pragma once

#include <stdexcept>
#include <string>

namespace dgpa {

/// Base class for all errors raised by the library.
class dgpa_error : public std::runtime_error {
public:
    explicit dgpa_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input value (bad field spec, division by zero, degree mismatch, ...).
class value_error : public dgpa_error {
public:
    using dgpa_error::dgpa_error;
};

/// Two scalars or elements from different fields were combined.
class field_mismatch_error : public dgpa_error {
public:
    using dgpa_error::dgpa_error;
};

/// A structure-constant table is missing an entry that is required.
class incomplete_table_error : public dgpa_error {
public:
    using dgpa_error::dgpa_error;
};

/// A computation left the finite truncation window.
class truncation_overflow_error : public dgpa_error {
public:
    using dgpa_error::dgpa_error;
};

/// A stated precondition failed; carries a printable witness.
class precondition_error : public dgpa_error {
public:
    precondition_error(const std::string& msg, std::string witness = {})
        : dgpa_error(witness.empty() ? msg : msg + " [witness: " + witness + "]"),
          witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

/// Back-substitution of eliminated generators did not terminate.
class cycle_error : public dgpa_error {
public:
    cycle_error(const std::string& msg, std::string cycle)
        : dgpa_error(msg + " [cycle: " + cycle + "]"), cycle_(std::move(cycle)) {}
    const std::string& cycle() const { return cycle_; }

private:
    std::string cycle_;
};

/// A configurable size cap was exceeded (see DGPA_SIZE_GUARD).
class size_guard_error : public dgpa_error {
public:
    using dgpa_error::dgpa_error;
};

/// Input file could not be parsed; carries a location (line or field path).
class parse_error : public dgpa_error {
public:
    parse_error(const std::string& msg, std::string location)
        : dgpa_error(location.empty() ? msg : msg + " (at " + location + ")"),
          location_(std::move(location)) {}
    const std::string& location() const { return location_; }

private:
    std::string location_;
};

} // namespace dgpa
