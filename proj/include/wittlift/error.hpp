#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wittlift {

// Structured error carrying a stable machine-readable code plus free-form
// context. The CLI maps these onto {"error":{code,message,context}}.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message, std::string context = {})
        : std::runtime_error(message), code_(std::move(code)), context_(std::move(context)) {}

    const std::string& code() const { return code_; }
    const std::string& context() const { return context_; }

private:
    std::string code_;
    std::string context_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message, std::string context = {}) {
    throw Error(std::move(code), message, std::move(context));
}

} // namespace wittlift
