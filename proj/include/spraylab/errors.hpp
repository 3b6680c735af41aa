#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spraylab {

// Evaluation outside a field's domain (inadmissible point, sqrt of a
// negative, log of a non-positive, division by zero, |.| at a kink).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Requested derivative order exceeds what the field provides.
class SmoothnessError : public std::runtime_error {
public:
    explicit SmoothnessError(const std::string& what) : std::runtime_error(what) {}
};

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t offset, const std::string& what)
        : std::runtime_error("at offset " + std::to_string(offset) + ": " + what),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class ArityError : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

class UnknownIdentifier : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

class IndexOutOfRange : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

class NonPositiveValue : public std::runtime_error {
public:
    explicit NonPositiveValue(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateMetric : public std::runtime_error {
public:
    explicit DegenerateMetric(const std::string& what) : std::runtime_error(what) {}
};

// A base function handed to the complete lift depends on fiber coordinates.
class NotBasic : public std::runtime_error {
public:
    explicit NotBasic(const std::string& what) : std::runtime_error(what) {}
};

class EmptyGridError : public std::runtime_error {
public:
    explicit EmptyGridError(const std::string& what) : std::runtime_error(what) {}
};

// A scenario hypothesis is violated by the supplied configuration.
class PreconditionFailed : public std::runtime_error {
public:
    explicit PreconditionFailed(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spraylab
