#include "satproc/clause_index.hpp"

#include <stdexcept>

namespace satproc {

namespace {

// Checked multiply; throws on 64-bit overflow.
std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > ~0ULL / a) throw std::overflow_error("clause index arithmetic overflows 64 bits");
    return a * b;
}

}  // namespace

std::uint64_t binomial_coefficient(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    // result * (n - k + i) is i * C(n - k + i, i), so the division is exact
    for (std::uint64_t i = 1; i <= k; ++i)
        result = mul_checked(result, n - k + i) / i;
    return result;
}

std::uint64_t clause_universe_size(std::uint32_t n, std::uint32_t k) {
    if (k < 1 || k > n) throw std::invalid_argument("clause_universe_size: need 1 <= k <= n");
    if (k >= 64) throw std::overflow_error("clause_universe_size: 2^k overflows 64 bits");
    std::uint64_t combos = binomial_coefficient(n, k);
    return mul_checked(combos, std::uint64_t(1) << k);
}

std::uint64_t satisfied_universe_size(std::uint32_t n, std::uint32_t k) {
    if (k < 1 || k > n) throw std::invalid_argument("satisfied_universe_size: need 1 <= k <= n");
    if (k >= 64) throw std::overflow_error("satisfied_universe_size: 2^k overflows 64 bits");
    std::uint64_t combos = binomial_coefficient(n, k);
    return mul_checked(combos, (std::uint64_t(1) << k) - 1);
}

namespace {

// Colex unranking: a_i = max{a : C(a, i) <= r}, descending in i.
std::vector<Var> combination_from_rank(std::uint32_t n, std::uint32_t k, std::uint64_t rank) {
    std::vector<Var> vars(k);
    std::uint64_t r = rank;
    std::uint32_t hi = n;  // exclusive upper bound for the next (largest) element
    for (std::uint32_t i = k; i >= 1; --i) {
        std::uint32_t lo = i - 1;         // smallest possible value of a_i
        std::uint32_t best = lo;
        std::uint32_t a = lo, b = hi - 1;  // binary search over [lo, hi)
        while (a <= b) {
            std::uint32_t mid = a + (b - a) / 2;
            if (binomial_coefficient(mid, i) <= r) {
                best = mid;
                a = mid + 1;
            } else {
                if (mid == 0) break;
                b = mid - 1;
            }
        }
        vars[i - 1] = best;
        r -= binomial_coefficient(best, i);
        hi = best;
    }
    return vars;
}

std::uint64_t combination_to_rank(const std::vector<Lit>& lits) {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < lits.size(); ++i)
        rank += binomial_coefficient(lits[i].var(), static_cast<std::uint64_t>(i + 1));
    return rank;
}

}  // namespace

Clause clause_from_index(std::uint32_t n, std::uint32_t k, std::uint64_t index) {
    std::uint64_t m = clause_universe_size(n, k);
    if (index >= m) throw std::out_of_range("clause_from_index: index out of range");
    std::uint64_t polarity = index & ((std::uint64_t(1) << k) - 1);
    std::uint64_t rank = index >> k;
    auto vars = combination_from_rank(n, k, rank);
    std::vector<Lit> lits;
    lits.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i)
        lits.emplace_back(vars[i], ((polarity >> i) & 1) != 0);
    return Clause(std::move(lits));
}

std::uint64_t clause_to_index(std::uint32_t n, std::uint32_t k, const Clause& clause) {
    if (clause.width() != k) throw std::invalid_argument("clause_to_index: clause width != k");
    if (clause.max_var() >= n) throw std::out_of_range("clause_to_index: variable out of range");
    std::uint64_t polarity = 0;
    const auto& lits = clause.literals();
    for (std::size_t i = 0; i < lits.size(); ++i)
        if (lits[i].negated()) polarity |= std::uint64_t(1) << i;
    return (combination_to_rank(lits) << k) | polarity;
}

Clause satisfied_clause_from_index(std::uint32_t n, std::uint32_t k, const Assignment& psi,
                                   std::uint64_t index) {
    std::uint64_t m = satisfied_universe_size(n, k);
    if (index >= m) throw std::out_of_range("satisfied_clause_from_index: index out of range");
    const std::uint64_t patterns = (std::uint64_t(1) << k) - 1;
    std::uint64_t rank = index / patterns;
    std::uint64_t pol_rank = index % patterns;
    auto vars = combination_from_rank(n, k, rank);
    // skip the single polarity pattern falsified by psi (every literal false)
    std::uint64_t forbidden = 0;
    for (std::uint32_t i = 0; i < k; ++i)
        if (psi.value(vars[i])) forbidden |= std::uint64_t(1) << i;
    std::uint64_t polarity = pol_rank < forbidden ? pol_rank : pol_rank + 1;
    std::vector<Lit> lits;
    lits.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i)
        lits.emplace_back(vars[i], ((polarity >> i) & 1) != 0);
    return Clause(std::move(lits));
}

}  // namespace satproc
