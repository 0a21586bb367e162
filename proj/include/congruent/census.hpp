#pragma once

// Enumeration of squarefree integers with k prime factors, their
// classification by the genus-theory criteria, and density reports.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "congruent/f2.hpp"
#include "congruent/genus.hpp"

namespace congruent {

enum class PrimeFilter { AllPrimes, OneMod4, OneMod8 };

std::string to_string(PrimeFilter f);
PrimeFilter parse_filter(const std::string& s);
std::string to_string(Convention c);
Convention parse_convention(const std::string& s);

struct CensusConfig {
    u64 x = 10000;
    unsigned k = 1;
    PrimeFilter filter = PrimeFilter::OneMod4;
    std::optional<int> n_mod8;
    Convention convention = Convention::D1;
    /// Work units; not part of the report, which is identical for every value.
    unsigned partitions = 1;
    /// Threads used to run the partitions.
    unsigned jobs = 1;
    /// Intermediate bounds; x itself is always reported last.
    std::vector<u64> checkpoints;

    /// Raises BadInput on invalid fields.
    void validate() const;
    /// Sorted checkpoints <= x, ending with x.
    std::vector<u64> effective_checkpoints() const;
};

/// Calls visit for every n <= x with exactly k distinct prime factors, all
/// passing the filter, and n = n_mod8 mod 8 when set. Partition `part` of
/// `parts` covers the n whose largest prime has index = part mod parts.
void enumerate_squarefree_k(const CensusConfig& config, const std::function<void(const FactoredSquarefree&)>& visit,
                            unsigned part = 0, unsigned parts = 1);

/// Number of squarefree n <= x with exactly k prime factors.
u64 count_Ck(std::span<const std::uint32_t> primes, u64 x, unsigned k);

ExactRational theoretical_limit_Pk(unsigned k);
ExactRational theoretical_density_Ck_alpha_B(unsigned k);
ExactRational theoretical_bound_tilde(unsigned k);
/// 2^(-1-k), the density of Q_k in C_k.
ExactRational theoretical_density_Qk(unsigned k);
/// 2^(-2k), the density of Q-tilde_k in C_k.
ExactRational theoretical_density_Qtilde(unsigned k);

struct CheckpointReport {
    u64 x = 0;
    std::map<std::string, u64> counts;
    /// Empty optional when the denominator is zero.
    std::map<std::string, std::optional<double>> ratios;
    std::map<std::string, ExactRational> theory;
    std::map<std::string, u64> buckets;
    std::map<std::string, u64> buckets_prime;

    friend bool operator==(const CheckpointReport&, const CheckpointReport&) = default;
};

struct CensusReport {
    CensusConfig config;
    std::vector<CheckpointReport> checkpoints;

    const CheckpointReport& final() const { return checkpoints.back(); }
};

/// Estimated peak memory of run_census in bytes.
u64 estimate_census_bytes(const CensusConfig& config);

/// Raises ResourceLimit when the estimate exceeds CENSUS_MEM_BUDGET_MB (default 2048).
CensusReport run_census(const CensusConfig& config);

nlohmann::ordered_json to_json(const CensusReport& report);
CensusReport report_from_json(const nlohmann::ordered_json& j);
std::string to_csv(const CensusReport& report);

struct OracleMismatch {
    u64 n = 0;
    unsigned k = 0;
    unsigned h4 = 0;
    int h8 = -1;
    unsigned r2 = 0;
    unsigned r4 = 0;
    unsigned r8 = 0;
};

struct OracleSweep {
    u64 checked = 0;
    std::vector<OracleMismatch> mismatches;
};

/// Compares (k, h4, h8) with (r2, r4, r8) of Cl(-4n) for all n in Q_k(x0), k <= kmax.
OracleSweep oracle_sweep(u64 x0, unsigned kmax, unsigned jobs = 1);

}  // namespace congruent
