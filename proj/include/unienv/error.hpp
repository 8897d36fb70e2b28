#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unienv {

enum class ErrorCode {
  ActionOutOfRange,
  EpisodeEnded,
  NotReset,
  OutOfBounds,
  NoFreeCell,
  UnparsableMission,
  OverlappingRoom,
  DegenerateExtent,
  NoSharedEdge,
  SpanTooNarrow,
  NoFreeSpace,
  NotAGridEnv,
  NotAWorld3DEnv,
  InvalidDims,
  LogClosed,
  UnknownEnvId,
  TooFewPoints,
  ZeroBaseline,
  ReplayMismatch,
  MalformedLog,
  TooManyActions,
  CapacityExceeded,
  UnknownSession,
  MalformedInput,
  ForbiddenInStudyMode,
  NotAvailable,
  BindFailure,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the service in particular) can forward it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace unienv
