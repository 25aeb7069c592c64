#include "ssvar/error.hpp"

#include <atomic>
#include <iostream>

namespace ssvar {

namespace {

void stderr_handler(std::string_view message) {
  std::cerr << "ssvar warning: " << message << '\n';
}

std::atomic<WarningHandler> g_handler{&stderr_handler};

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::SameIndex: return "SameIndex";
    case ErrorCode::DegenerateObservable: return "DegenerateObservable";
    case ErrorCode::BadProbabilities: return "BadProbabilities";
    case ErrorCode::BadDecomposition: return "BadDecomposition";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::BadBloch: return "BadBloch";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

WarningHandler set_warning_handler(WarningHandler handler) {
  return g_handler.exchange(handler);
}

void warn(std::string_view message) {
  if (auto handler = g_handler.load()) handler(message);
}

}  // namespace ssvar
