#pragma once

#include "crowdalloc/ct_model.hpp"
#include "crowdalloc/policies.hpp"

namespace crowdalloc {

inline constexpr double kOracleStateLimit = 1e7;

// Upper estimate of the joint (pos, neg, w) x u state count the exact DP
// may visit: C(c + 3, 3)^K * (U + 1) with c = min(cap, U).
double estimate_joint_states(const Instance& instance);

// Bayes-optimal expected terminal reward R_0 by exhaustive recursion over
// the embedded chain. Infinite horizon only; throws CapacityError when the
// estimate exceeds kOracleStateLimit.
double exact_optimal_value(const Instance& instance);

// Exact expected terminal reward of a deterministic policy. Throws
// UnsupportedError for randomized policies.
double exact_policy_value(const Instance& instance, const Policy& policy);
double exact_policy_value(const Instance& instance, PolicyKind policy);

}  // namespace crowdalloc
