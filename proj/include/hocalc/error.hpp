#pragma once

#include <stdexcept>
#include <string>

namespace hocalc {

/// Exit-code categories shared by the library and the CLI.
enum class ErrorKind { schema = 2, semantic = 3, degenerate = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error(ErrorKind::schema, what) {}
};

class NotSubmodule : public Error {
public:
    explicit NotSubmodule(const std::string& what) : Error(ErrorKind::semantic, "not a submodule: " + what) {}
};

class MiddleMismatch : public Error {
public:
    explicit MiddleMismatch(const std::string& what) : Error(ErrorKind::semantic, "middle mismatch: " + what) {}
};

class TruncationError : public Error {
public:
    explicit TruncationError(const std::string& what) : Error(ErrorKind::semantic, "truncation: " + what) {}
};

class UnsupportedEndpoints : public Error {
public:
    explicit UnsupportedEndpoints(const std::string& what)
        : Error(ErrorKind::semantic, "unsupported roof endpoints: " + what) {}
};

class DegenerateFiltration : public Error {
public:
    explicit DegenerateFiltration(const std::string& what)
        : Error(ErrorKind::degenerate, "degenerate filtration: " + what) {}
};

class AmbiguousChase : public Error {
public:
    explicit AmbiguousChase(const std::string& what) : Error(ErrorKind::semantic, "ambiguous chase: " + what) {}
};

} // namespace hocalc
