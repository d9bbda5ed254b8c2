#pragma once

#include <stdexcept>
#include <string>

namespace kmwb {

// Error families map one-to-one onto CLI exit codes.
enum class ErrorFamily {
    Verification = 2,  // precondition / verification failures
    Parse = 3,
    Dimension = 4,
    Unbounded = 5,
    Recovery = 6,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorFamily family, std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), family_(family), code_(std::move(code)) {}

    ErrorFamily family() const { return family_; }
    const std::string& code() const { return code_; }
    int exit_code() const { return static_cast<int>(family_); }

  private:
    ErrorFamily family_;
    std::string code_;
};

inline Error dimension_mismatch(const std::string& what) {
    return Error(ErrorFamily::Dimension, "DimensionMismatch", what);
}

inline Error parse_error(const std::string& what) {
    return Error(ErrorFamily::Parse, "ParseError", what);
}

inline Error verification_error(const std::string& code, const std::string& what) {
    return Error(ErrorFamily::Verification, code, what);
}

inline Error recovery_error(const std::string& code, const std::string& what) {
    return Error(ErrorFamily::Recovery, code, what);
}

inline Error unbounded_error(const std::string& what) {
    return Error(ErrorFamily::Unbounded, "Unbounded", what);
}

}  // namespace kmwb
