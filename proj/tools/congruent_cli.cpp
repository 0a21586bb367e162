// Command line front end: symbols, Redei data, classification, the class
// group oracle, matrix counts, census runs and property suites.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "congruent/census.hpp"
#include "congruent/classgroup.hpp"
#include "congruent/errors.hpp"
#include "congruent/genus.hpp"
#include "congruent/verify.hpp"

using namespace congruent;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInconsistent = 3;

struct Output {
    bool as_json = false;
    json doc = json::object();
    std::ostringstream text;

    void flush() const {
        if (as_json) std::cout << doc.dump(2) << '\n';
        else std::cout << text.str();
    }
};

bool is_rational(const GaussInt& g) { return g.im == 0; }

i64 as_i64(const GaussInt& g) {
    if (!is_rational(g) || !g.re.fits_slong_p()) raise(Errc::BadInput, g.to_string() + " is not a 64-bit integer");
    return g.re.get_si();
}

u64 as_u64(const GaussInt& g) {
    const i64 v = as_i64(g);
    if (v <= 0) raise(Errc::BadInput, g.to_string() + " must be positive");
    return static_cast<u64>(v);
}

int run_symbol(const std::string& kind, const std::vector<std::string>& args, Output& out) {
    std::vector<GaussInt> v;
    for (const auto& a : args) v.push_back(parse_gauss(a));
    auto need = [&](std::size_t n) {
        if (v.size() != n) raise(Errc::BadInput, kind + " takes " + std::to_string(n) + " argument(s)");
    };
    std::string value;
    if (kind == "quartic") {
        need(2);
        // Two rational integers give (q/d)_4; otherwise the symbol over Z[i].
        if (is_rational(v[0]) && is_rational(v[1])) {
            value = std::to_string(quartic_rational_composite(as_i64(v[0]), as_u64(v[1])));
        } else {
            value = quartic_symbol_composite(v[0], v[1]).to_string();
        }
    } else if (kind == "quartic-zi") {
        need(2);
        value = quartic_symbol_composite(v[0], v[1]).to_string();
    } else if (kind == "quartic-two") {
        need(1);
        value = quartic_symbol_of_two(v[0]).to_string();
    } else if (kind == "legendre-zi") {
        need(2);
        value = std::to_string(legendre_symbol_zi(v[0], v[1]));
    } else if (kind == "jacobi") {
        need(2);
        value = std::to_string(jacobi(as_i64(v[0]), as_u64(v[1])));
    } else if (kind == "additive") {
        need(2);
        value = std::to_string(additive(as_i64(v[0]), as_u64(v[1])));
    } else if (kind == "additive-two") {
        need(1);
        value = std::to_string(additive_two(as_i64(v[0])));
    } else {
        raise(Errc::BadInput, "unknown symbol kind '" + kind + "'");
    }
    out.doc = {{"kind", kind}, {"args", args}, {"value", value}};
    out.text << value << '\n';
    return 0;
}

std::string join(const std::vector<u64>& v) {
    std::string s;
    for (u64 x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

int run_redei(u64 n_value, Output& out) {
    const auto n = FactoredSquarefree::of(n_value);
    const RedeiData r = redei(n);
    out.doc = {{"n", n.n},        {"primes", n.primes},   {"A", r.A.to_string()}, {"b", r.b.to_string()},
               {"rank_A", r.rank_A}, {"rank_R", r.rank_R}, {"h4", r.h4}};
    out.text << "n=" << n.n << " k=" << n.k() << " primes=" << join(n.primes) << '\n'
             << "A=" << r.A.to_string() << '\n'
             << "b=" << r.b.to_string() << '\n'
             << "rank_A=" << r.rank_A << " rank_R=" << r.rank_R << " h4=" << r.h4 << '\n';
    return 0;
}

int run_classify(u64 n_value, Convention conv, Output& out) {
    const auto n = FactoredSquarefree::of(n_value);
    const PkVerdict v = classify_Pk(n, conv);
    const PkVerdict other = classify_Pk(n, conv == Convention::D1 ? Convention::D5 : Convention::D1);
    out.doc = {{"n", n.n}, {"h4", v.h4}, {"convention", to_string(conv)}, {"P_k", v.member},
               {"P_k_other_convention", other.member}};
    out.text << "h4=" << v.h4;
    if (v.h8) out.text << " h8=" << v.h8->h8;
    out.text << " P_k=" << (v.member ? "true" : "false") << '\n';
    if (v.h8) {
        const H8Verdict& h = *v.h8;
        const std::string tag = h.case_tag == H8Case::RankA_kMinus1 ? "rankA=k-1" : "rankA=k-2";
        out.doc["h8"] = {{"value", h.h8},     {"case", tag},       {"d", h.d},
                         {"d_prime", h.d_prime}, {"x", h.x.to_string()}, {"symbol_product", h.symbol_product},
                         {"target", h.target}};
        out.doc["X"] = v.X->to_string();
        out.doc["d"] = v.d;
        out.doc["parity"] = v.parity;
        out.text << "h8 case " << tag << ": d=" << h.d << " d'=" << h.d_prime << " x=" << h.x.to_string()
                 << " symbol_product=" << h.symbol_product << " target=" << h.target << '\n'
                 << "kernel X=" << v.X->to_string() << " d=" << v.d << " parity(" << to_string(conv) << ")=" << v.parity
                 << '\n';
    }
    out.text << "convention " << to_string(conv) << ": P_k=" << (v.member ? "true" : "false") << "; other convention: P_k="
             << (other.member ? "true" : "false") << '\n';
    return 0;
}

int run_oracle(u64 n_value, std::int64_t disc, Output& out) {
    const std::int64_t D = disc != 0 ? disc : -4 * static_cast<std::int64_t>(n_value);
    const ClassGroup2Part g = group_2part(D);
    out.doc = {{"disc", g.disc}, {"h", g.h},   {"divisors", g.divisors},
               {"r2", g.r2},     {"r4", g.r4}, {"r8", g.r8}, {"ambiguous_forms", g.ambiguous_forms}};
    out.text << "disc=" << g.disc << " h=" << g.h << " divisors=" << (g.divisors.empty() ? "-" : join(g.divisors))
             << " r2=" << g.r2 << " r4=" << g.r4 << " r8=" << g.r8 << '\n';
    if (disc != 0 || n_value == 0) return 0;
    const auto n = FactoredSquarefree::of(n_value);
    if (!n.in_Qk()) return 0;
    const RedeiData r = redei(n);
    const int h8 = r.h4 == 1 ? h8_criterion(n, r).h8 : -1;
    const bool agree = g.r2 == n.k() && g.r4 == r.h4 && (r.h4 != 1 || static_cast<int>(g.r8) == h8);
    out.doc["genus"] = {{"k", n.k()}, {"h4", r.h4}, {"h8", h8 < 0 ? json(nullptr) : json(h8)}, {"agree", agree}};
    out.text << "genus k=" << n.k() << " h4=" << r.h4 << " h8=" << (h8 < 0 ? std::string("-") : std::to_string(h8))
             << " agree=" << (agree ? "yes" : "NO") << '\n';
    return agree ? 0 : kExitInconsistent;
}

int run_matrix_count(unsigned k, Output& out) {
    if (k < 1) raise(Errc::BadInput, "k must be positive");
    const bool brute = k <= 5;
    const mpz_class cb = count_B(k);
    const mpz_class cbp = k >= 2 ? count_Bprime(k) : mpz_class(0);
    const mpz_class sigma = k >= 2 ? mpz_class(1) << (2 * k - 2) : mpz_class(0);
    out.text << "count_B=" << cb.get_str() << " count_Bprime=" << (k >= 2 ? cbp.get_str() : "-")
             << " count_sigma_B=" << (k >= 2 ? sigma.get_str() : "-") << " u_k=" << u(k).to_string() << '\n';
    out.doc = {{"k", k}, {"count_B", cb.get_str()}, {"u_k", u(k).to_string()}};
    if (k >= 2) {
        out.doc["count_Bprime"] = cbp.get_str();
        out.doc["count_sigma_B"] = sigma.get_str();
    }
    bool agree = true;
    json ranks = json::array();
    for (unsigned r = 0; r <= k; ++r) {
        const mpz_class f = count_sym_rank(k, r);
        out.text << "rank " << r << ": count_sym_rank=" << f.get_str();
        json row = {{"rank", r}, {"formula", f.get_str()}};
        if (brute) {
            const mpz_class b = brute_count_sym_rank(k, r);
            out.text << " brute=" << b.get_str();
            row["brute"] = b.get_str();
            agree = agree && b == f;
        }
        out.text << '\n';
        ranks.push_back(row);
    }
    out.doc["sym_rank"] = ranks;
    if (brute) {
        const mpz_class bb = enumerate_B(k).size();
        const mpz_class bbp = k >= 2 ? mpz_class(enumerate_Bprime(k).size()) : mpz_class(0);
        agree = agree && bb == cb && (k < 2 || bbp == cbp);
        out.text << "brute force: count_B=" << bb.get_str() << " count_Bprime=" << (k >= 2 ? bbp.get_str() : "-");
        out.doc["brute"] = {{"count_B", bb.get_str()}};
        if (k >= 2) out.doc["brute"]["count_Bprime"] = bbp.get_str();
        if (k >= 2 && k <= 4) {
            bool sigma_ok = true;
            for (const auto& B : enumerate_Bprime(k)) sigma_ok = sigma_ok && count_sigma_B(B) == sigma;
            out.text << " sigma_B=" << (sigma_ok ? sigma.get_str() : "MISMATCH") << " for all B'";
            out.doc["brute"]["sigma_B_all_equal"] = sigma_ok;
            agree = agree && sigma_ok;
        }
        out.text << " agree=" << (agree ? "yes" : "NO") << '\n';
        out.doc["agree"] = agree;
    }
    return agree ? 0 : kExitInconsistent;
}

std::vector<u64> parse_list(const std::string& s) {
    std::vector<u64> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size() || v < 1) throw std::invalid_argument(item);
            out.push_back(static_cast<u64>(v));
        } catch (const std::exception&) {
            raise(Errc::BadInput, "bad checkpoint '" + item + "'");
        }
    }
    return out;
}

std::string census_text(const CensusReport& r) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(6);
    const auto fmt = [&](const std::optional<double>& v) {
        std::ostringstream o;
        o.setf(std::ios::fixed);
        o.precision(6);
        if (v) o << *v;
        else o << "-";
        return o.str();
    };
    os << "census k=" << r.config.k << " filter=" << to_string(r.config.filter) << '\n';
    for (const auto& cp : r.checkpoints) {
        os << "x=" << cp.x << " C_k=" << cp.counts.at("C_k") << " Q_k=" << cp.counts.at("Q_k")
           << " P_k(d1)=" << cp.counts.at("P_k_D1") << " P_k(d5)=" << cp.counts.at("P_k_D5")
           << " Q_k/C_k=" << fmt(cp.ratios.at("Q_k/C_k")) << " P_k(d1)/Q_k=" << fmt(cp.ratios.at("P_k_D1/Q_k"))
           << " P_k(d5)/Q_k=" << fmt(cp.ratios.at("P_k_D5/Q_k")) << '\n';
    }
    const auto& f = r.final();
    os << "theory: P_k limit " << f.theory.at("P_k_limit").to_string() << " (" << f.theory.at("P_k_limit").to_double()
       << "), Q_k density " << f.theory.at("Q_k_density").to_string() << ", bucket density "
       << f.theory.at("bucket_density").to_string() << '\n';
    for (const auto& [key, n] : f.buckets) {
        os << "bucket " << key << ": " << n << " ratio_to_C_k="
           << static_cast<double>(n) / static_cast<double>(std::max<u64>(1, f.counts.at("C_k"))) << '\n';
    }
    for (const auto& [key, n] : f.buckets_prime) os << "bucket' " << key << ": " << n << '\n';
    if (r.config.k >= 2) {
        os << "Qtilde_k=" << f.counts.at("Qtilde_k") << " Ptilde_construction=" << f.counts.at("Ptilde_construction")
           << " Ckk_pairs=" << f.counts.at("Ckk_pairs") << " tilde_bound=" << f.theory.at("tilde_bound").to_string()
           << '\n';
    }
    return os.str();
}

int report_suite(const SuiteResult& s, double seconds, Output& out) {
    out.doc = {{"suite", s.name}, {"checked", s.checked}, {"failures", s.failures}, {"notes", s.notes},
               {"seconds", seconds}, {"ok", s.ok()}};
    out.text << "suite=" << s.name << " checked=" << s.checked << " failures=" << s.failures.size()
             << " status=" << (s.ok() ? "PASS" : "FAIL") << '\n';
    for (const auto& n : s.notes) out.text << "  " << n << '\n';
    for (const auto& f : s.failures) out.text << "  failure: " << f << '\n';
    return s.ok() ? 0 : kExitInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Genus theory, quartic symbols and congruent number statistics"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto* symbol = app.add_subcommand("symbol", "Evaluate one residue symbol");
    std::string kind;
    std::vector<std::string> symbol_args;
    symbol->add_option("--kind", kind, "quartic|quartic-zi|quartic-two|legendre-zi|jacobi|additive|additive-two")
        ->required();
    symbol->add_option("--args", symbol_args, "Arguments (integers or Gaussian integers like 3+2i)")
        ->required()
        ->allow_extra_args();

    auto* redei_cmd = app.add_subcommand("redei", "Redei matrix and 4-rank of n");
    u64 n_value = 0;
    redei_cmd->add_option("--n", n_value, "Squarefree n = 1 mod 8 with prime factors = 1 mod 4")->required();

    auto* classify = app.add_subcommand("classify", "P_k verdict with h8 detail");
    std::string convention = "d1";
    classify->add_option("--n", n_value, "n in Q_k")->required();
    classify->add_option("--convention", convention, "d1 or d5")->check(CLI::IsMember({"d1", "d5"}));

    auto* oracle = app.add_subcommand("oracle", "2-part of the class group of discriminant -4n");
    std::int64_t disc = 0;
    auto* oracle_n = oracle->add_option("--n", n_value, "n (discriminant -4n)");
    auto* oracle_d = oracle->add_option("--disc", disc, "Explicit negative discriminant");
    oracle_n->excludes(oracle_d);

    auto* matrix = app.add_subcommand("matrix-count", "Symmetric matrix counts over F2");
    unsigned k = 1;
    matrix->add_option("--k", k, "Dimension")->required()->check(CLI::Range(1u, 40u));

    auto* census = app.add_subcommand("census", "Enumerate and classify n <= x with k prime factors");
    double x_value = 1e4;
    std::string filter = "1mod4", checkpoints, out_path, csv_path;
    int n_mod8 = -1;
    unsigned partitions = 1, jobs = 1;
    census->add_option("--x", x_value, "Upper bound")->required();
    census->add_option("--k", k, "Number of prime factors")->required();
    census->add_option("--filter", filter, "all, 1mod4 or 1mod8")->check(CLI::IsMember({"all", "1mod4", "1mod8"}));
    census->add_option("--n-mod8", n_mod8, "Keep only n with this residue mod 8")->check(CLI::Range(0, 7));
    census->add_option("--convention", convention, "Headline convention, d1 or d5")
        ->check(CLI::IsMember({"d1", "d5"}));
    census->add_option("--partitions", partitions, "Work partitions")->check(CLI::PositiveNumber);
    census->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    census->add_option("--checkpoints", checkpoints, "Comma separated intermediate bounds");
    census->add_option("--out", out_path, "Write the JSON report here");
    census->add_option("--csv", csv_path, "Write the CSV report here");

    auto* verify = app.add_subcommand("verify", "Run a property suite");
    std::string suite;
    unsigned kmax = 3;
    std::uint64_t seed = 20151, cases = 10000;
    double verify_x = 1e5;
    verify->add_option("--suite", suite, "lemmas|bijection|oracle|counts|classes")
        ->required()
        ->check(CLI::IsMember({"lemmas", "bijection", "oracle", "counts", "classes"}));
    verify->add_option("--x", verify_x, "Bound for bijection and oracle suites");
    verify->add_option("--kmax", kmax, "Largest k")->check(CLI::Range(1u, 5u));
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("--cases", cases, "Random cases for the lemmas suite");
    verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    Output out;
    out.as_json = format == "json";
    int status = 0;
    try {
        if (symbol->parsed()) {
            status = run_symbol(kind, symbol_args, out);
        } else if (redei_cmd->parsed()) {
            status = run_redei(n_value, out);
        } else if (classify->parsed()) {
            status = run_classify(n_value, parse_convention(convention), out);
        } else if (oracle->parsed()) {
            if (n_value == 0 && disc == 0) raise(Errc::BadInput, "oracle needs --n or --disc");
            status = run_oracle(n_value, disc, out);
        } else if (matrix->parsed()) {
            status = run_matrix_count(k, out);
        } else if (census->parsed()) {
            CensusConfig c;
            if (x_value < 2 || x_value > 4294967296.0) raise(Errc::BadInput, "--x must lie in [2, 2^32]");
            c.x = static_cast<u64>(x_value);
            c.k = k;
            c.filter = parse_filter(filter);
            if (n_mod8 >= 0) c.n_mod8 = n_mod8;
            c.convention = parse_convention(convention);
            c.partitions = partitions;
            c.jobs = jobs;
            c.checkpoints = parse_list(checkpoints);
            const CensusReport r = run_census(c);
            out.doc = to_json(r);
            out.text << census_text(r);
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                if (!f) raise(Errc::BadInput, "cannot write " + out_path);
                f << to_json(r).dump(2) << '\n';
            }
            if (!csv_path.empty()) {
                std::ofstream f(csv_path);
                if (!f) raise(Errc::BadInput, "cannot write " + csv_path);
                f << to_csv(r);
            }
        } else if (verify->parsed()) {
            const auto start = std::chrono::steady_clock::now();
            const u64 vx = static_cast<u64>(verify_x);
            SuiteResult s("none");
            if (suite == "lemmas") s = verify_lemmas(cases, seed);
            else if (suite == "bijection") s = verify_bijection(vx, kmax);
            else if (suite == "oracle") s = verify_oracle(vx, kmax, jobs);
            else if (suite == "counts") s = verify_counts(std::min(kmax, 5u));
            else {
                s = verify_classes({{},
                                    {PrimaryPrime::make_in_P(GaussInt(-1, 2))},
                                    {PrimaryPrime::make_in_P(GaussInt(3, 2))}});
            }
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            status = report_suite(s, secs, out);
        }
    } catch (const MathError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == Errc::InternalInconsistency ? kExitInconsistent : kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    out.flush();
    return status;
}
