#include "congruent/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include "congruent/classgroup.hpp"
#include "congruent/errors.hpp"
#include "congruent/primes.hpp"

namespace congruent {

std::string to_string(PrimeFilter f) {
    switch (f) {
        case PrimeFilter::AllPrimes: return "all";
        case PrimeFilter::OneMod4: return "1mod4";
        case PrimeFilter::OneMod8: return "1mod8";
    }
    return "?";
}

PrimeFilter parse_filter(const std::string& s) {
    if (s == "all") return PrimeFilter::AllPrimes;
    if (s == "1mod4") return PrimeFilter::OneMod4;
    if (s == "1mod8") return PrimeFilter::OneMod8;
    raise(Errc::BadInput, "unknown filter '" + s + "' (expected all, 1mod4 or 1mod8)");
}

std::string to_string(Convention c) { return c == Convention::D1 ? "d1" : "d5"; }

Convention parse_convention(const std::string& s) {
    if (s == "d1" || s == "D1") return Convention::D1;
    if (s == "d5" || s == "D5") return Convention::D5;
    raise(Errc::BadInput, "unknown convention '" + s + "' (expected d1 or d5)");
}

void CensusConfig::validate() const {
    if (x < 2) raise(Errc::BadInput, "x must be at least 2");
    if (x > (1ull << 32)) raise(Errc::TooLarge, "x must be at most 2^32");
    if (k < 1 || k > 8) raise(Errc::BadInput, "k must lie in 1..8");
    if (partitions < 1) raise(Errc::BadInput, "partitions must be positive");
    if (jobs < 1) raise(Errc::BadInput, "jobs must be positive");
    if (n_mod8 && (*n_mod8 < 0 || *n_mod8 > 7)) raise(Errc::BadInput, "n_mod8 must lie in 0..7");
}

std::vector<u64> CensusConfig::effective_checkpoints() const {
    std::vector<u64> out;
    for (u64 c : checkpoints) {
        if (c >= 1 && c < x) out.push_back(c);
    }
    out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

bool passes(PrimeFilter f, std::uint32_t p) {
    switch (f) {
        case PrimeFilter::AllPrimes: return true;
        case PrimeFilter::OneMod4: return p % 4 == 1;
        case PrimeFilter::OneMod8: return p % 8 == 1;
    }
    return false;
}

FactoredSquarefree make_factored(const std::vector<u64>& primes, u64 n) {
    FactoredSquarefree f;
    f.n = n;
    f.primes = primes;
    for (u64 p : primes) {
        f.all_1mod4 = f.all_1mod4 && p % 4 == 1;
        f.all_1mod8 = f.all_1mod8 && p % 8 == 1;
    }
    f.n_1mod8 = n % 8 == 1;
    return f;
}

void enumerate_with(const CensusConfig& c, std::span<const std::uint32_t> all_primes,
                    const std::function<void(const FactoredSquarefree&)>& visit, unsigned part, unsigned parts) {
    std::vector<std::uint32_t> primes;
    for (std::uint32_t p : all_primes) {
        if (passes(c.filter, p)) primes.push_back(p);
    }
    std::vector<u64> chosen;
    chosen.reserve(c.k);
    // Products stay below x <= 2^32, and each step checks p <= x / product first.
    std::function<void(std::size_t, u64)> dfs = [&](std::size_t start, u64 product) {
        const unsigned remaining = c.k - static_cast<unsigned>(chosen.size());
        if (remaining == 1) {
            std::size_t i = start;
            if (parts > 1) i += (part + parts - i % parts) % parts;
            for (; i < primes.size(); i += parts) {
                const u64 p = primes[i];
                if (p > c.x / product) break;
                const u64 n = product * p;
                if (c.n_mod8 && static_cast<int>(n % 8) != *c.n_mod8) continue;
                chosen.push_back(p);
                visit(make_factored(chosen, n));
                chosen.pop_back();
            }
            return;
        }
        for (std::size_t i = start; i < primes.size(); ++i) {
            // The smallest completion multiplies by `remaining` primes >= p.
            u64 bound = product;
            bool fits = true;
            for (unsigned j = 0; j < remaining && fits; ++j) {
                const u64 q = i + j < primes.size() ? primes[i + j] : 0;
                if (q == 0 || q > c.x / bound) fits = false;
                else bound *= q;
            }
            if (!fits) break;
            chosen.push_back(primes[i]);
            dfs(i + 1, product * primes[i]);
            chosen.pop_back();
        }
    };
    dfs(0, 1);
}

u64 count_Ck_rec(std::span<const std::uint32_t> primes, std::size_t start, u64 product, u64 x, unsigned remaining) {
    if (remaining == 1) {
        const u64 limit = x / product;
        const auto end = std::upper_bound(primes.begin(), primes.end(), limit);
        const auto begin = primes.begin() + static_cast<std::ptrdiff_t>(start);
        return end > begin ? static_cast<u64>(end - begin) : 0;
    }
    u64 total = 0;
    for (std::size_t i = start; i < primes.size(); ++i) {
        const u64 p = primes[i];
        // Need p^remaining <= x / product.
        u64 bound = product;
        bool fits = true;
        for (unsigned j = 0; j < remaining && fits; ++j) {
            if (p > x / bound) fits = false;
            else bound *= p;
        }
        if (!fits) break;
        total += count_Ck_rec(primes, i + 1, product * p, x, remaining - 1);
    }
    return total;
}

const char* const kCounterNames[] = {"enumerated",  "Q_k",          "h4_eq_1",       "P_k_D1",
                                     "P_k_D5",      "buckets_total", "buckets_prime_total",
                                     "Qtilde_k",    "Ptilde_construction", "Ckk_pairs"};
constexpr std::size_t kCounters = std::size(kCounterNames);
enum Counter : std::size_t {
    kEnumerated,
    kQ,
    kH4,
    kPD1,
    kPD5,
    kBuckets,
    kBucketsPrime,
    kQtilde,
    kPtilde,
    kCkk
};

struct Tally {
    std::vector<std::array<u64, kCounters>> bins;
    std::map<std::string, std::vector<u64>> buckets;
    std::map<std::string, std::vector<u64>> buckets_prime;

    explicit Tally(std::size_t nbins) : bins(nbins, std::array<u64, kCounters>{}) {}

    void add_bucket(std::map<std::string, std::vector<u64>>& m, const std::string& key, std::size_t bin) {
        auto& v = m[key];
        if (v.empty()) v.assign(bins.size(), 0);
        ++v[bin];
    }

    void merge(const Tally& o) {
        for (std::size_t b = 0; b < bins.size(); ++b) {
            for (std::size_t c = 0; c < kCounters; ++c) bins[b][c] += o.bins[b][c];
        }
        for (const auto& pair : {std::make_pair(&buckets, &o.buckets), std::make_pair(&buckets_prime, &o.buckets_prime)}) {
            for (const auto& [key, v] : *pair.second) {
                auto& mine = (*pair.first)[key];
                if (mine.empty()) mine.assign(bins.size(), 0);
                for (std::size_t b = 0; b < v.size(); ++b) mine[b] += v[b];
            }
        }
    }
};

std::string alpha_key(std::span<const u64> primes) {
    std::string s = "(";
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(primes[i] % 16);
    }
    return s + ")";
}

void classify_into(const FactoredSquarefree& n, std::size_t bin, Tally& t) {
    auto& c = t.bins[bin];
    ++c[kEnumerated];
    const unsigned k = n.k();
    if (n.in_Qk()) {
        ++c[kQ];
        const PkVerdict v = classify_Pk(n, Convention::D1);
        if (v.h4 == 1) {
            ++c[kH4];
            ++c[v.member ? kPD1 : kPD5];
        }
        if (k <= 3) {
            const SymMatF2 A = redei_A(n.primes);
            std::vector<int> alpha;
            for (u64 p : n.primes) alpha.push_back(static_cast<int>(p % 16));
            const VecF2 b = two_vector(alpha);
            const std::string key = "alpha=" + alpha_key(n.primes) + " B=" + A.to_string();
            const MatF2 am = A.to_mat();
            if (in_B(A) && am.try_solve(b)) {
                if (in_Ck_alpha_B(n, alpha, A)) {
                    ++c[kBuckets];
                    t.add_bucket(t.buckets, key, bin);
                }
            } else if (k >= 2 && in_Bprime(A) && am.augment(b).rank() + 1 == k) {
                if (in_Ck_alpha_B_prime(n, alpha, A)) {
                    ++c[kBucketsPrime];
                    t.add_bucket(t.buckets_prime, key, bin);
                }
            }
        }
    }
    if (n.in_Qtilde()) {
        ++c[kQtilde];
        if (k >= 2) {
            bool any = false;
            std::vector<int> alpha;
            for (u64 p : n.primes) alpha.push_back(static_cast<int>(p % 16));
            for (std::uint64_t mask = 1; mask + 1 < (1ull << k); ++mask) {
                u64 d = 1;
                std::vector<unsigned> sigma;
                std::vector<u64> left, right;
                for (unsigned j = 0; j < k; ++j) {
                    if (mask >> j & 1) {
                        d *= n.primes[j];
                        sigma.push_back(j);
                        left.push_back(n.primes[j]);
                    } else {
                        right.push_back(n.primes[j]);
                    }
                }
                if (in_tilde_construction(n, d)) any = true;
                const SymMatF2 B = redei_A(left), Bp = redei_A(right);
                if (in_B(B) && in_B(Bp) && in_Ckk_sigma(n, alpha, B, Bp, sigma)) ++c[kCkk];
            }
            if (any) ++c[kPtilde];
        }
    }
}

std::optional<double> ratio(u64 num, u64 den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

struct ClassRow {
    const char* name;
    const char* parent;
    const char* theory;
};

// Each reported class, the class its ratio is taken against, and its theory value.
const ClassRow kClasses[] = {
    {"C_k", nullptr, nullptr},
    {"enumerated", "C_k", nullptr},
    {"Q_k", "C_k", "Q_k_density"},
    {"h4_eq_1", "Q_k", nullptr},
    {"P_k_D1", "Q_k", "P_k_limit"},
    {"P_k_D5", "Q_k", "P_k_limit"},
    {"buckets_total", "C_k", nullptr},
    {"buckets_prime_total", "C_k", nullptr},
    {"Qtilde_k", "C_k", "Qtilde_density"},
    {"Ptilde_construction", "Qtilde_k", "tilde_bound"},
    {"Ckk_pairs", "Qtilde_k", "tilde_bound"},
};

std::map<std::string, ExactRational> theory_for(unsigned k) {
    std::map<std::string, ExactRational> t;
    t["P_k_limit"] = theoretical_limit_Pk(k);
    t["Q_k_density"] = theoretical_density_Qk(k);
    t["Qtilde_density"] = theoretical_density_Qtilde(k);
    t["bucket_density"] = theoretical_density_Ck_alpha_B(k);
    if (k >= 2) t["tilde_bound"] = theoretical_bound_tilde(k);
    return t;
}

void fill_ratios(CheckpointReport& cp) {
    for (const ClassRow& row : kClasses) {
        if (!row.parent) continue;
        cp.ratios[std::string(row.name) + "/" + row.parent] = ratio(cp.counts[row.name], cp.counts[row.parent]);
    }
}

std::string ratio_text(const std::optional<double>& r) {
    if (!r) return "";
    std::ostringstream os;
    os.precision(17);
    os << *r;
    return os.str();
}

}  // namespace

void enumerate_squarefree_k(const CensusConfig& config, const std::function<void(const FactoredSquarefree&)>& visit,
                            unsigned part, unsigned parts) {
    config.validate();
    if (parts == 0 || part >= parts) raise(Errc::BadInput, "partition index out of range");
    const auto primes = sieve_primes(config.x);
    enumerate_with(config, primes, visit, part, parts);
}

u64 count_Ck(std::span<const std::uint32_t> primes, u64 x, unsigned k) {
    if (k == 0) return x >= 1 ? 1 : 0;
    return count_Ck_rec(primes, 0, 1, x, k);
}

ExactRational theoretical_limit_Pk(unsigned k) {
    if (k < 1) raise(Errc::BadInput, "k must be positive");
    const ExactRational half(1, 2);
    return half * (u(k) + (half - pow2(-static_cast<long>(k))) * u(k - 1));
}

ExactRational theoretical_density_Ck_alpha_B(unsigned k) {
    if (k < 1) raise(Errc::BadInput, "k must be positive");
    return pow2(-static_cast<long>(3 * k + k * (k - 1) / 2 + 1));
}

ExactRational theoretical_bound_tilde(unsigned k) {
    if (k < 2) raise(Errc::BadInput, "the tilde bound needs k >= 2");
    ExactRational sum;
    for (unsigned j1 = 1; j1 < k; ++j1) {
        const unsigned j2 = k - j1;
        sum = sum + u(j1) * u(j2) * ExactRational(mpq_class(binomial(k, j1))) * pow2(-static_cast<long>(j1 * j2));
    }
    return pow2(static_cast<long>(k) - 4) * sum;
}

ExactRational theoretical_density_Qk(unsigned k) { return pow2(-1 - static_cast<long>(k)); }

ExactRational theoretical_density_Qtilde(unsigned k) { return pow2(-2 * static_cast<long>(k)); }

u64 estimate_census_bytes(const CensusConfig& config) {
    // Prime table (uint32 per prime, pi(x) < 1.26 x / ln x), one filtered copy
    // per worker, and small per-partition tallies.
    const double x = static_cast<double>(config.x);
    const double pi_bound = x < 17 ? 8 : 1.26 * x / std::log(x);
    const double table = 4 * pi_bound;
    const double per_worker = table + 64.0 * 1024;
    const double tallies = 16.0 * 1024 * config.partitions * (config.checkpoints.size() + 1);
    return static_cast<u64>(table + per_worker * std::min(config.jobs, config.partitions) + tallies);
}

CensusReport run_census(const CensusConfig& config) {
    config.validate();
    u64 budget_mb = 2048;
    if (const char* env = std::getenv("CENSUS_MEM_BUDGET_MB")) {
        try {
            budget_mb = std::stoull(env);
        } catch (const std::exception&) {
            raise(Errc::BadInput, "CENSUS_MEM_BUDGET_MB must be an integer");
        }
    }
    const u64 need = estimate_census_bytes(config);
    if (need > budget_mb * 1024 * 1024) {
        raise(Errc::ResourceLimit, "census needs about " + std::to_string(need >> 20) + " MB, budget is " +
                                       std::to_string(budget_mb) + " MB");
    }

    const std::vector<u64> cps = config.effective_checkpoints();
    const auto primes = sieve_primes(config.x);
    auto bin_of = [&](u64 n) {
        return static_cast<std::size_t>(std::lower_bound(cps.begin(), cps.end(), n) - cps.begin());
    };

    std::vector<Tally> partials(config.partitions, Tally(cps.size()));
    std::atomic<unsigned> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (unsigned part; (part = next.fetch_add(1)) < config.partitions;) {
            try {
                Tally& t = partials[part];
                enumerate_with(
                    config, primes, [&](const FactoredSquarefree& n) { classify_into(n, bin_of(n.n), t); }, part,
                    config.partitions);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    const unsigned threads = std::min(config.jobs, config.partitions);
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);

    Tally total(cps.size());
    for (const Tally& t : partials) total.merge(t);

    CensusReport report;
    report.config = config;
    std::array<u64, kCounters> running{};
    std::map<std::string, u64> run_b, run_bp;
    const auto theory = theory_for(config.k);
    for (std::size_t b = 0; b < cps.size(); ++b) {
        CheckpointReport cp;
        cp.x = cps[b];
        cp.counts["C_k"] = count_Ck(primes, cps[b], config.k);
        for (std::size_t c = 0; c < kCounters; ++c) {
            running[c] += total.bins[b][c];
            cp.counts[kCounterNames[c]] = running[c];
        }
        for (const auto& [key, v] : total.buckets) cp.buckets[key] = run_b[key] += v[b];
        for (const auto& [key, v] : total.buckets_prime) cp.buckets_prime[key] = run_bp[key] += v[b];
        fill_ratios(cp);
        cp.theory = theory;
        report.checkpoints.push_back(std::move(cp));
    }
    return report;
}

nlohmann::ordered_json to_json(const CensusReport& report) {
    using nlohmann::ordered_json;
    const CensusConfig& c = report.config;
    ordered_json config;
    config["x"] = c.x;
    config["k"] = c.k;
    config["filter"] = to_string(c.filter);
    config["n_mod8"] = c.n_mod8 ? ordered_json(*c.n_mod8) : ordered_json(nullptr);
    config["convention"] = to_string(c.convention);
    config["checkpoints"] = c.effective_checkpoints();

    ordered_json cps = ordered_json::array();
    for (const CheckpointReport& cp : report.checkpoints) {
        ordered_json j;
        j["x"] = cp.x;
        ordered_json counts, ratios, theory, buckets, buckets_prime;
        for (const ClassRow& row : kClasses) counts[row.name] = cp.counts.at(row.name);
        for (const auto& [key, r] : cp.ratios) ratios[key] = r ? ordered_json(*r) : ordered_json(nullptr);
        for (const auto& [key, t] : cp.theory) theory[key] = {{"exact", t.to_string()}, {"value", t.to_double()}};
        const u64 ck = cp.counts.at("C_k");
        for (const auto& [key, n] : cp.buckets) {
            buckets[key] = {{"count", n}, {"ratio_to_C_k", ratio(n, ck) ? ordered_json(*ratio(n, ck)) : nullptr}};
        }
        for (const auto& [key, n] : cp.buckets_prime) {
            buckets_prime[key] = {{"count", n},
                                  {"ratio_to_C_k", ratio(n, ck) ? ordered_json(*ratio(n, ck)) : nullptr}};
        }
        j["counts"] = counts;
        j["ratios"] = ratios;
        j["theory"] = theory;
        j["buckets"] = buckets.is_null() ? ordered_json::object() : buckets;
        j["buckets_prime"] = buckets_prime.is_null() ? ordered_json::object() : buckets_prime;
        cps.push_back(j);
    }
    return ordered_json{{"config", config}, {"checkpoints", cps}};
}

CensusReport report_from_json(const nlohmann::ordered_json& j) {
    try {
        CensusReport r;
        const auto& c = j.at("config");
        r.config.x = c.at("x").get<u64>();
        r.config.k = c.at("k").get<unsigned>();
        r.config.filter = parse_filter(c.at("filter").get<std::string>());
        if (!c.at("n_mod8").is_null()) r.config.n_mod8 = c.at("n_mod8").get<int>();
        r.config.convention = parse_convention(c.at("convention").get<std::string>());
        r.config.checkpoints = c.at("checkpoints").get<std::vector<u64>>();
        for (const auto& jc : j.at("checkpoints")) {
            CheckpointReport cp;
            cp.x = jc.at("x").get<u64>();
            for (const auto& [key, v] : jc.at("counts").items()) cp.counts[key] = v.get<u64>();
            for (const auto& [key, v] : jc.at("ratios").items()) {
                cp.ratios[key] = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
            }
            for (const auto& [key, v] : jc.at("theory").items()) {
                cp.theory[key] = ExactRational(mpq_class(v.at("exact").get<std::string>()));
            }
            for (const auto& [key, v] : jc.at("buckets").items()) cp.buckets[key] = v.at("count").get<u64>();
            for (const auto& [key, v] : jc.at("buckets_prime").items()) {
                cp.buckets_prime[key] = v.at("count").get<u64>();
            }
            r.checkpoints.push_back(std::move(cp));
        }
        if (r.checkpoints.empty()) raise(Errc::BadInput, "report has no checkpoints");
        return r;
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::BadInput, std::string("malformed census report: ") + e.what());
    }
}

std::string to_csv(const CensusReport& report) {
    std::ostringstream os;
    os << "x,class,count,ratio_to,ratio,theory_exact,theory_value\n";
    for (const CheckpointReport& cp : report.checkpoints) {
        auto row = [&](const std::string& name, u64 count, const char* parent, const std::optional<double>& r,
                       const ExactRational* t) {
            os << cp.x << ',' << name << ',' << count << ',' << (parent ? parent : "") << ',' << ratio_text(r) << ',';
            if (t) os << t->to_string() << ',' << ratio_text(t->to_double());
            else os << ',';
            os << '\n';
        };
        for (const ClassRow& c : kClasses) {
            const ExactRational* t = nullptr;
            if (c.theory) {
                auto it = cp.theory.find(c.theory);
                if (it != cp.theory.end()) t = &it->second;
            }
            std::optional<double> r;
            if (c.parent) r = cp.ratios.at(std::string(c.name) + "/" + c.parent);
            row(c.name, cp.counts.at(c.name), c.parent, r, t);
        }
        const u64 ck = cp.counts.at("C_k");
        const ExactRational& bd = cp.theory.at("bucket_density");
        for (const auto& [key, n] : cp.buckets) row("bucket " + key, n, "C_k", ratio(n, ck), &bd);
        for (const auto& [key, n] : cp.buckets_prime) row("bucket' " + key, n, "C_k", ratio(n, ck), nullptr);
    }
    return os.str();
}

OracleSweep oracle_sweep(u64 x0, unsigned kmax, unsigned jobs) {
    if (x0 > 1000000) raise(Errc::TooLarge, "oracle sweep bound must be at most 10^6");
    if (kmax < 1) raise(Errc::BadInput, "kmax must be positive");
    std::vector<FactoredSquarefree> members;
    for (unsigned k = 1; k <= kmax; ++k) {
        CensusConfig c;
        c.x = std::max<u64>(x0, 2);
        c.k = k;
        c.filter = PrimeFilter::OneMod4;
        c.n_mod8 = 1;
        enumerate_squarefree_k(c, [&](const FactoredSquarefree& n) { members.push_back(n); });
    }
    std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) { return a.n < b.n; });

    std::vector<std::optional<OracleMismatch>> verdicts(members.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < members.size();) try {
            const FactoredSquarefree& n = members[i];
            const RedeiData r = redei(n);
            OracleMismatch m;
            m.n = n.n;
            m.k = n.k();
            m.h4 = r.h4;
            if (r.h4 == 1) m.h8 = h8_criterion(n, r).h8;
            const ClassGroup2Part g = group_2part(-4 * static_cast<std::int64_t>(n.n));
            m.r2 = g.r2;
            m.r4 = g.r4;
            m.r8 = g.r8;
            const bool ok = m.r2 == m.k && m.r4 == m.h4 && (m.h4 != 1 || static_cast<int>(m.r8) == m.h8);
            if (!ok) verdicts[i] = m;
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);

    OracleSweep out;
    out.checked = members.size();
    for (auto& v : verdicts) {
        if (v) out.mismatches.push_back(*v);
    }
    return out;
}

}  // namespace congruent
