#include "dra/tolerances.hpp"

#include <atomic>
#include <stdexcept>

namespace dra::tol {

namespace {
std::atomic<double> membership_tol{1e-8};
}

double membership() { return membership_tol.load(std::memory_order_relaxed); }

void set_membership(double value) {
  if (!(value > 0.0)) {
    throw std::invalid_argument("membership tolerance must be positive");
  }
  membership_tol.store(value, std::memory_order_relaxed);
}

}  // namespace dra::tol
