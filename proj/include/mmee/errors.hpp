#pragma once

#include <stdexcept>
#include <string>

namespace mmee {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct zf_violation : std::domain_error {
  using std::domain_error::domain_error;
};

struct headroom_exceeded : std::domain_error {
  using std::domain_error::domain_error;
};

struct infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct no_convergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mmee
