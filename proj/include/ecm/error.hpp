#pragma once

#include <stdexcept>
#include <string>

namespace ecm {

enum class ErrorKind {
    MalformedInput,
    UnsupportedRule,
    Unsupported,
    UnresolvedManipulator,
    InvalidScenario,
    Budget,
    Parse,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace ecm
