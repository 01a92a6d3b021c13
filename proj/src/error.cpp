#include "rsym/error.hpp"

namespace rsym {

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::invalid_argument: return "invalid_argument";
    case Status::domain_mismatch: return "domain_mismatch";
    case Status::cutoff_too_small: return "cutoff_too_small";
    case Status::not_converged: return "not_converged";
    case Status::non_monotone: return "non_monotone";
    case Status::too_large: return "too_large";
    case Status::infeasible: return "infeasible";
    case Status::not_a_tree: return "not_a_tree";
    case Status::parse: return "parse";
    case Status::internal: return "internal";
  }
  return "unknown";
}

void fail(Status s, const std::string& msg) { throw Error(s, msg); }

}  // namespace rsym
