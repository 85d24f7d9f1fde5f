#include "gdyn/parallel.hpp"

#include <omp.h>

#include "gdyn/errors.hpp"

namespace gdyn {

namespace {
int default_threads = omp_get_max_threads();
}

void set_thread_limit(std::optional<int> threads) {
  if (threads && *threads < 1) throw Error(ErrorCode::InvalidInput, "thread count must be >= 1");
  omp_set_num_threads(threads ? *threads : default_threads);
}

int thread_limit() { return omp_get_max_threads(); }

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::InvalidCoupling: return "InvalidCoupling";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::GraphTooLarge: return "GraphTooLarge";
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::NotAnEquilibrium: return "NotAnEquilibrium";
    case ErrorCode::NotOnManifold: return "NotOnManifold";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::BlockMismatch: return "BlockMismatch";
    case ErrorCode::CycleCapExceeded: return "CycleCapExceeded";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
  }
  return "Unknown";
}

}  // namespace gdyn
