#pragma once

#include <cstdint>

#include "satproc/formula.hpp"

namespace satproc {

/// C(n, k) with overflow detection (throws std::overflow_error).
std::uint64_t binomial_coefficient(std::uint64_t n, std::uint64_t k);

/// M = 2^k * C(n, k), the number of width-k clauses over n variables.
/// Throws std::invalid_argument for k < 1 or k > n, std::overflow_error if M
/// does not fit in 64 bits.
std::uint64_t clause_universe_size(std::uint32_t n, std::uint32_t k);

/// Bijection between [0, M) and canonical width-k clauses over n variables.
///
/// Layout: index = colex_rank(variables) * 2^k + polarity, where the variables
/// a_1 < ... < a_k have colex rank sum_i C(a_i, i), and polarity bit (i-1) set
/// means the literal over a_i is negated.
Clause clause_from_index(std::uint32_t n, std::uint32_t k, std::uint64_t index);
std::uint64_t clause_to_index(std::uint32_t n, std::uint32_t k, const Clause& clause);

/// Count of clauses satisfied by any fixed assignment: (2^k - 1) * C(n, k).
std::uint64_t satisfied_universe_size(std::uint32_t n, std::uint32_t k);

/// Bijection between [0, (2^k-1)*C(n,k)) and the clauses satisfied by psi.
Clause satisfied_clause_from_index(std::uint32_t n, std::uint32_t k, const Assignment& psi,
                                   std::uint64_t index);

}  // namespace satproc
