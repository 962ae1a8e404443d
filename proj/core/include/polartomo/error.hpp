#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace polartomo {

enum class IoErrc {
  open_failed,
  write_failed,
  length_mismatch,
  schema_violation,
  unknown_kind,
};

const char* to_string(IoErrc code) noexcept;

class ArrayIoError : public std::runtime_error {
 public:
  ArrayIoError(IoErrc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}
  IoErrc code() const noexcept { return code_; }

 private:
  IoErrc code_;
};

/// Error raised by the pipeline, tagged with the stage that failed
/// ("config", "generate", "forward", ...).
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error("[" + stage + "] " + message), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace polartomo
