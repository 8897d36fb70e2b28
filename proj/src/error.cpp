#include "unienv/error.hpp"

namespace unienv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ActionOutOfRange: return "ActionOutOfRange";
    case ErrorCode::EpisodeEnded: return "EpisodeEnded";
    case ErrorCode::NotReset: return "NotReset";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::NoFreeCell: return "NoFreeCell";
    case ErrorCode::UnparsableMission: return "UnparsableMission";
    case ErrorCode::OverlappingRoom: return "OverlappingRoom";
    case ErrorCode::DegenerateExtent: return "DegenerateExtent";
    case ErrorCode::NoSharedEdge: return "NoSharedEdge";
    case ErrorCode::SpanTooNarrow: return "SpanTooNarrow";
    case ErrorCode::NoFreeSpace: return "NoFreeSpace";
    case ErrorCode::NotAGridEnv: return "NotAGridEnv";
    case ErrorCode::NotAWorld3DEnv: return "NotAWorld3DEnv";
    case ErrorCode::InvalidDims: return "InvalidDims";
    case ErrorCode::LogClosed: return "LogClosed";
    case ErrorCode::UnknownEnvId: return "UnknownEnvId";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::ZeroBaseline: return "ZeroBaseline";
    case ErrorCode::ReplayMismatch: return "ReplayMismatch";
    case ErrorCode::MalformedLog: return "MalformedLog";
    case ErrorCode::TooManyActions: return "TooManyActions";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::ForbiddenInStudyMode: return "ForbiddenInStudyMode";
    case ErrorCode::NotAvailable: return "NotAvailable";
    case ErrorCode::BindFailure: return "BindFailure";
  }
  return "Unknown";
}

}  // namespace unienv
