#include "opuc/errors.hpp"

namespace opuc {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::VerblunskyViolation: return "VerblunskyViolation";
    case ErrorCode::RatioUndefined: return "RatioUndefined";
    case ErrorCode::ModelUnavailable: return "ModelUnavailable";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::FitFailed: return "FitFailed";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::TailTooLarge: return "TailTooLarge";
    case ErrorCode::ZeroRatio: return "ZeroRatio";
    case ErrorCode::ZeroFactor: return "ZeroFactor";
    case ErrorCode::BandEmpty: return "BandEmpty";
    case ErrorCode::UnmatchedZero: return "UnmatchedZero";
    case ErrorCode::Config: return "Config";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace opuc
