#include <CLI11.hpp>

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <mutex>
#include <string>
#include <vector>

#include "mordell/harness.hpp"
#include "mordell/pell.hpp"
#include "mordell/primes.hpp"
#include "mordell/surd.hpp"
#include "mordell/verify.hpp"

namespace {

// Exit codes: 0 clean, 1 counterexample found, 2 usage/config error,
// 3 internal consistency failure (fast/full disagreement).
constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

int cmd_cf(uint64_t d, uint64_t max_terms) {
    mordell::CFExpansion exp =
        mordell::expand_sqrt(d, max_terms == 0 ? UINT64_MAX : max_terms);
    std::printf("sqrt(%" PRIu64 ") = <%" PRIu64 ";", d, exp.n);
    for (size_t j = 0; j < exp.period.size(); ++j)
        std::printf("%s %" PRIu64, j == 0 ? "" : ",", exp.period[j]);
    std::printf(">\nperiod length %" PRIu64 "\n", exp.l());
    return kExitOk;
}

int cmd_pell(uint64_t d, bool decompose) {
    mordell::PellSolution sol = mordell::fundamental_solution(d);
    std::printf("d = %" PRIu64 "\n", d);
    std::printf("x = %s\n", sol.x.get_str().c_str());
    std::printf("y = %s\n", sol.y.get_str().c_str());
    std::printf("norm = %+d\n", sol.norm);
    if (decompose) {
        if (!mordell::is_prime_u64(d) || d % 4 != 3)
            throw std::invalid_argument("--decompose requires a prime d with d = 3 mod 4");
        mordell::UnitDecomposition dec = mordell::decompose_unit(d, sol);
        std::printf("a = %s\n", dec.a.get_str().c_str());
        std::printf("b = %s\n", dec.b.get_str().c_str());
        std::printf("epsilon = %+d\n", dec.epsilon);
    }
    return kExitOk;
}

int cmd_verify(const std::string& mode, mordell::RunConfig cfg) {
    cfg.mode = mode == "aac" ? mordell::VerifyMode::aac : mordell::VerifyMode::mordell;

    mordell::RunHooks hooks;
    std::mutex print_mu;
    hooks.on_counterexample = [&print_mu](const mordell::VerificationRecord& r) {
        std::lock_guard<std::mutex> lk(print_mu);
        std::fprintf(stderr, "COUNTEREXAMPLE: %s\n",
                     mordell::format_row(r, mordell::ReportFormat::csv).c_str());
        std::fflush(stderr);
    };
    hooks.on_progress = [&print_mu](uint64_t done, uint64_t total) {
        std::lock_guard<std::mutex> lk(print_mu);
        std::fprintf(stderr, "chunks: %" PRIu64 "/%" PRIu64 "\n", done, total);
    };

    mordell::RunSummary s = mordell::run_range(cfg, hooks);
    std::printf("mode: %s\n", mordell::to_string(cfg.mode));
    std::printf("range: [%" PRIu64 ", %" PRIu64 ")\n", cfg.from, cfg.to);
    std::printf("primes checked: %" PRIu64 "\n", s.counts.primes_checked);
    std::printf("holds: %" PRIu64 "\n", s.counts.holds);
    std::printf("counterexamples: %" PRIu64 "\n", s.counts.counterexamples);
    if (s.max_witness_seen)
        std::printf("longest period: l = %" PRIu64 " at p = %" PRIu64 "\n",
                    s.max_witness_seen->period_len, s.max_witness_seen->p);
    std::printf("elapsed: %.2f s\n", s.elapsed_seconds);
    return s.counts.counterexamples == 0 ? kExitOk : kExitCounterexample;
}

int cmd_families(int period, uint64_t count, bool verify) {
    std::vector<uint64_t> ps;
    switch (period) {
        case 2: ps = mordell::family_period2(count); break;
        case 4: ps = mordell::family_period4(count); break;
        default: ps = mordell::family_period6(count); break;
    }
    for (uint64_t p : ps) {
        if (verify) {
            uint64_t l = mordell::expand_sqrt(p).l();
            if (l != (uint64_t)period)
                throw mordell::InternalError("family claim failed: p = " + std::to_string(p) +
                                             " has period " + std::to_string(l));
            std::printf("%" PRIu64 " l=%" PRIu64 "\n", p, l);
        } else {
            std::printf("%" PRIu64 "\n", p);
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continued fractions, Pell equations, and batch verification of the"
                 " Mordell and Ankeny-Artin-Chowla divisibility conjectures"};
    app.require_subcommand(1);

    uint64_t d = 0, max_terms = 0;
    bool decompose = false;

    CLI::App* cf = app.add_subcommand("cf", "Continued fraction of sqrt(d)");
    cf->add_option("d", d, "radicand (non-square, >= 2)")->required();
    cf->add_option("--max-terms", max_terms, "abort if the period exceeds this many terms");

    CLI::App* pell = app.add_subcommand("pell", "Fundamental solution of x^2 - d y^2 = +-1");
    pell->add_option("d", d, "radicand (non-square, >= 2)")->required();
    pell->add_flag("--decompose", decompose,
                   "also print the (a, b, epsilon) unit decomposition (prime d = 3 mod 4)");

    std::string mode;
    mordell::RunConfig cfg;
    std::string format = "csv";
    CLI::App* verify = app.add_subcommand("verify", "Verify a conjecture over a prime range");
    verify->add_option("mode", mode, "mordell (p = 3 mod 4) or aac (p = 1 mod 4)")
        ->required()
        ->check(CLI::IsMember({"mordell", "aac"}));
    verify->add_option("--from", cfg.from, "range start (inclusive)")->required();
    verify->add_option("--to", cfg.to, "range end (exclusive)")->required();
    verify->add_option("--jobs", cfg.jobs, "worker threads");
    verify->add_option("--chunk", cfg.chunk_size, "chunk size in integers");
    verify->add_option("--full-every", cfg.full_every,
                       "run the exact path on every K-th prime per chunk (0 disables)");
    verify->add_option("--checkpoint", cfg.checkpoint_path,
                       "checkpoint file; reruns with the same config resume from it");
    verify->add_option("--report", cfg.report_path, "write per-prime rows to this file");
    verify->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"csv", "jsonl"}));

    int period = 0;
    uint64_t count = 0;
    bool fam_verify = false;
    CLI::App* families = app.add_subcommand("families", "Fixed-period prime families");
    families->add_option("--period", period, "period length of the family")
        ->required()
        ->check(CLI::IsMember({2, 4, 6}));
    families->add_option("--count", count, "how many primes to emit")->required();
    families->add_flag("--verify", fam_verify, "re-expand each prime and check its period");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cf->parsed()) return cmd_cf(d, max_terms);
        if (pell->parsed()) return cmd_pell(d, decompose);
        if (verify->parsed()) {
            cfg.format = format == "jsonl" ? mordell::ReportFormat::jsonl
                                           : mordell::ReportFormat::csv;
            return cmd_verify(mode, cfg);
        }
        return cmd_families(period, count, fam_verify);
    } catch (const mordell::InternalError& e) {
        std::fprintf(stderr, "internal consistency failure: %s\n", e.what());
        return kExitInternal;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}
