#pragma once

#include <stdexcept>
#include <string>

namespace trusskit {

// All validation failures carry a stable machine-readable code next to the
// human-readable message. CLI maps codes to exit statuses.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

inline void check(bool ok, const std::string& code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace trusskit
