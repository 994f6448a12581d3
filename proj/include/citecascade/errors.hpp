#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace citecascade {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Malformed input row. `row` is 1-based and counts the header as row 1.
class ParseError : public Error {
public:
    ParseError(std::size_t row, const std::string& reason)
        : Error("row " + std::to_string(row) + ": " + reason), row_(row), reason_(reason) {}

    std::size_t row() const noexcept { return row_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t row_;
    std::string reason_;
};

class DuplicateIdError : public Error {
public:
    explicit DuplicateIdError(const std::string& id) : Error("duplicate id: " + id), id_(id) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

// Raised by strict edge loading on the first offending row.
class EdgeValidationError : public Error {
public:
    enum class Kind { dangling, self_loop, duplicate, temporal };

    EdgeValidationError(Kind kind, std::size_t row, const std::string& what)
        : Error("row " + std::to_string(row) + ": " + what), kind_(kind), row_(row) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t row() const noexcept { return row_; }

private:
    Kind kind_;
    std::size_t row_;
};

class UnknownRootError : public Error {
public:
    explicit UnknownRootError(const std::string& id) : Error("unknown root: " + id), id_(id) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class DepthCapExceeded : public Error {
public:
    using Error::Error;
};

class MalformedCode : public Error {
public:
    using Error::Error;
};

class GenerationOutOfRange : public Error {
public:
    using Error::Error;
};

class InsufficientEdges : public Error {
public:
    using Error::Error;
};

class EmptyCohort : public Error {
public:
    using Error::Error;
};

class TooFewSeries : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

}  // namespace citecascade
