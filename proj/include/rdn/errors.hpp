#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rdn {

/// Domain error carrying a stable machine-readable code alongside the
/// human-readable message. The CLI maps codes to exit status 1.
class domain_error : public std::runtime_error {
public:
    domain_error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& msg) {
    throw domain_error(code, msg);
}

} // namespace rdn
