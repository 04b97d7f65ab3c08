#pragma once

#include <exception>
#include <mutex>

namespace hsns {

/// Applies HALFSPACE_NS_THREADS when set; returns the worker count in use.
int configure_threads();

/// Keeps the first exception thrown inside a parallel region so it can be
/// rethrown after the region ends.
class ExceptionTrap {
 public:
  /// Returns false when body threw.
  template <class Body>
  bool run(Body&& body) {
    try {
      body();
      return true;
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex_);
      if (!first_) first_ = std::current_exception();
      return false;
    }
  }
  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr first_;
};

}  // namespace hsns
