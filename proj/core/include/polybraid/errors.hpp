#ifndef POLYBRAID_ERRORS_HPP
#define POLYBRAID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polybraid {

/// All library failures carry a short machine-readable code (e.g. "RepeatedRoot",
/// "WordBlowup") next to the human-readable message. The CLI maps codes to exit
/// status 1; negative mathematical verdicts are ordinary return values, never errors.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace polybraid

#endif
