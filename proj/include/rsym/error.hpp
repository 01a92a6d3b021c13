#pragma once

#include <stdexcept>
#include <string>

namespace rsym {

enum class Status {
  ok = 0,
  invalid_argument = 1,
  domain_mismatch = 2,
  cutoff_too_small = 3,
  not_converged = 4,
  non_monotone = 5,
  too_large = 6,
  infeasible = 7,
  not_a_tree = 8,
  parse = 9,
  internal = 10,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
 public:
  Error(Status s, const std::string& what) : std::runtime_error(what), status_(s) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

[[noreturn]] void fail(Status s, const std::string& msg);

inline void require(bool ok, const std::string& msg) {
  if (!ok) fail(Status::invalid_argument, msg);
}

}  // namespace rsym
