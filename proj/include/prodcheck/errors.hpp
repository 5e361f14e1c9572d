/* errors.hpp -- exception hierarchy shared by all prodcheck modules */

#ifndef PRODCHECK_ERRORS_HPP_
#define PRODCHECK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace prodcheck {

enum class ErrorCode {
    parse = 1,      // malformed input text / JSON
    validation,     // model violates a structural invariant
    domain,         // bad argument (unknown state, alphabet mismatch, parameter range)
    limit,          // configured size cap exceeded
    internal,       // invariant breach inside the library
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(ErrorCode::parse, msg) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(ErrorCode::validation, msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(ErrorCode::domain, msg) {}
};

struct LimitError : Error {
    explicit LimitError(const std::string& msg) : Error(ErrorCode::limit, msg) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error(ErrorCode::internal, msg) {}
};

} // namespace prodcheck

#endif // PRODCHECK_ERRORS_HPP_
