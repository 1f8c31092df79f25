#pragma once

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mordell/errors.hpp"
#include "mordell/modarith.hpp"
#include "mordell/primes.hpp"
#include "mordell/report.hpp"
#include "mordell/verify.hpp"

namespace mordell {

enum class VerifyMode { mordell, aac };

inline const char* to_string(VerifyMode m) { return m == VerifyMode::mordell ? "mordell" : "aac"; }

/// Batch-run configuration. Plain data: everything here round-trips through
/// the checkpoint file.
struct RunConfig {
    VerifyMode mode = VerifyMode::mordell;
    uint64_t from = 3;
    uint64_t to = 0;
    unsigned jobs = 1;
    uint64_t chunk_size = uint64_t{1} << 20;
    uint64_t full_every = 10000;  // 1-in-K exact cross-checks; 0 disables sampling
    std::string checkpoint_path;  // empty: no checkpointing
    std::string report_path;      // empty: no report file
    ReportFormat format = ReportFormat::csv;
};

/// Caller hooks. on_counterexample may be invoked concurrently from worker
/// threads and must be internally synchronized; on_progress runs on the
/// collector after each committed chunk, and throwing from it cancels the
/// run after a clean shutdown (committed chunks stay checkpointed).
struct RunHooks {
    std::function<void(const VerificationRecord&)> on_counterexample;
    std::function<void(uint64_t chunks_done, uint64_t chunks_total)> on_progress;
};

struct RunCounts {
    uint64_t primes_checked = 0;
    uint64_t holds = 0;
    uint64_t counterexamples = 0;
};

struct RunSummary {
    RunCounts counts;
    double elapsed_seconds = 0.0;
    std::optional<VerificationRecord> max_witness_seen;  // largest period encountered
    uint64_t chunks_total = 0;
    uint64_t chunks_skipped = 0;  // already covered by the checkpoint
};

/// On-disk progress marker. completed_chunks is always a contiguous prefix
/// of the chunk sequence because the collector commits in chunk order;
/// report_bytes is the report size at the last commit, so a resumed run can
/// truncate a partially written tail before appending.
struct Checkpoint {
    std::string config_digest;
    RunConfig config;
    std::vector<std::pair<uint64_t, uint64_t>> completed_chunks;
    RunCounts counts;
    std::optional<VerificationRecord> max_witness_seen;
    uint64_t report_bytes = 0;
};

namespace detail {

inline uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace detail

/// Digest of the math-relevant part of the config. jobs and file paths are
/// deliberately excluded: they may change between a run and its resume
/// without affecting the verified content.
inline std::string config_digest(const RunConfig& cfg) {
    std::string canon = std::string(to_string(cfg.mode)) + "|" + std::to_string(cfg.from) + "|" +
                        std::to_string(cfg.to) + "|" + std::to_string(cfg.chunk_size) + "|" +
                        std::to_string(cfg.full_every) + "|" +
                        (cfg.format == ReportFormat::csv ? "csv" : "jsonl");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)detail::fnv1a64(canon));
    return std::string(buf);
}

namespace detail {

inline nlohmann::json record_to_json(const VerificationRecord& r) {
    return nlohmann::json{{"p", r.p},
                          {"p_mod8", r.p_mod_8},
                          {"period_len", r.period_len},
                          {"central", r.central},
                          {"witness_residue", r.witness_residue},
                          {"method", to_string(r.method)},
                          {"verdict", to_string(r.verdict)}};
}

inline VerificationRecord record_from_json(const nlohmann::json& j) {
    VerificationRecord r;
    r.p = j.at("p").get<uint64_t>();
    r.p_mod_8 = j.at("p_mod8").get<unsigned>();
    r.period_len = j.at("period_len").get<uint64_t>();
    r.central = j.at("central").get<uint64_t>();
    r.witness_residue = j.at("witness_residue").get<uint64_t>();
    std::string m = j.at("method").get<std::string>();
    r.method = m == "fast" ? Method::fast : m == "full" ? Method::full : Method::both;
    r.verdict = j.at("verdict").get<std::string>() == "holds" ? Verdict::holds
                                                              : Verdict::counterexample;
    return r;
}

}  // namespace detail

inline void save_checkpoint(const Checkpoint& ck, const std::string& path) {
    nlohmann::json j;
    j["config_digest"] = ck.config_digest;
    j["config"] = {{"mode", to_string(ck.config.mode)},
                   {"from", ck.config.from},
                   {"to", ck.config.to},
                   {"jobs", ck.config.jobs},
                   {"chunk_size", ck.config.chunk_size},
                   {"full_every", ck.config.full_every},
                   {"checkpoint_path", ck.config.checkpoint_path},
                   {"report_path", ck.config.report_path},
                   {"format", ck.config.format == ReportFormat::csv ? "csv" : "jsonl"}};
    nlohmann::json chunks = nlohmann::json::array();
    for (const auto& [lo, hi] : ck.completed_chunks) chunks.push_back({lo, hi});
    j["completed_chunks"] = std::move(chunks);
    j["counts"] = {{"primes_checked", ck.counts.primes_checked},
                   {"holds", ck.counts.holds},
                   {"counterexamples", ck.counts.counterexamples}};
    j["max_witness_seen"] =
        ck.max_witness_seen ? detail::record_to_json(*ck.max_witness_seen) : nlohmann::json();
    j["report_bytes"] = ck.report_bytes;

    // Write-temp-then-rename keeps the checkpoint readable even if this
    // process dies mid-write.
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("save_checkpoint: cannot open " + tmp);
        os << j.dump(2) << '\n';
        os.flush();
        if (!os) throw IoError("save_checkpoint: write to " + tmp + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("save_checkpoint: rename to " + path + " failed: " + ec.message());
}

inline Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("load_checkpoint: cannot open " + path);
    Checkpoint ck;
    try {
        nlohmann::json j = nlohmann::json::parse(is);
        ck.config_digest = j.at("config_digest").get<std::string>();
        const auto& jc = j.at("config");
        std::string mode = jc.at("mode").get<std::string>();
        if (mode != "mordell" && mode != "aac")
            throw CheckpointCorrupt("load_checkpoint: unknown mode " + mode);
        ck.config.mode = mode == "mordell" ? VerifyMode::mordell : VerifyMode::aac;
        ck.config.from = jc.at("from").get<uint64_t>();
        ck.config.to = jc.at("to").get<uint64_t>();
        ck.config.jobs = jc.at("jobs").get<unsigned>();
        ck.config.chunk_size = jc.at("chunk_size").get<uint64_t>();
        ck.config.full_every = jc.at("full_every").get<uint64_t>();
        ck.config.checkpoint_path = jc.at("checkpoint_path").get<std::string>();
        ck.config.report_path = jc.at("report_path").get<std::string>();
        ck.config.format =
            jc.at("format").get<std::string>() == "jsonl" ? ReportFormat::jsonl : ReportFormat::csv;
        for (const auto& c : j.at("completed_chunks"))
            ck.completed_chunks.emplace_back(c.at(0).get<uint64_t>(), c.at(1).get<uint64_t>());
        ck.counts.primes_checked = j.at("counts").at("primes_checked").get<uint64_t>();
        ck.counts.holds = j.at("counts").at("holds").get<uint64_t>();
        ck.counts.counterexamples = j.at("counts").at("counterexamples").get<uint64_t>();
        if (!j.at("max_witness_seen").is_null())
            ck.max_witness_seen = detail::record_from_json(j.at("max_witness_seen"));
        ck.report_bytes = j.at("report_bytes").get<uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw CheckpointCorrupt("load_checkpoint: " + path + ": " + e.what());
    }
    return ck;
}

namespace detail {

/// Verifies every prime of the mode's residue class in [lo, hi).
/// force-full rule: the 1-in-K sample is indexed chunk-locally so the
/// output is independent of how chunks are distributed over workers; in
/// mordell mode, primes with p + 2 a perfect square (the period-4 family
/// the reference table draws from) always take the exact path too.
inline std::vector<ReportRow> process_chunk(uint64_t lo, uint64_t hi, const RunConfig& cfg,
                                            const RunHooks& hooks) {
    const bool is_mordell = cfg.mode == VerifyMode::mordell;
    std::vector<uint64_t> primes = sieve_segment(
        lo, hi, is_mordell ? ResidueFilter::mod4_eq_3 : ResidueFilter::mod4_eq_1);
    std::vector<ReportRow> rows;
    rows.reserve(primes.size());
    uint64_t idx = 0;
    for (uint64_t p : primes) {
        try {
            ReportRow rec = is_mordell ? mordell_fast(p) : aac_fast(p);
            bool force_full = cfg.full_every != 0 && idx % cfg.full_every == 0;
            if (is_mordell && is_perfect_square_u64(p + 2)) force_full = true;
            if (rec.verdict == Verdict::counterexample) force_full = true;  // always re-verify
            if (force_full) {
                ReportRow full = is_mordell ? mordell_full(p) : aac_full(p);
                bool agree = full.verdict == rec.verdict && full.period_len == rec.period_len &&
                             full.central == rec.central;
                // In A-A-C mode both witnesses are h_{l-1} mod p, so they
                // must agree bit for bit; in mordell mode the fast witness
                // is h_{l/2-1} mod p and only the verdicts are comparable.
                if (!is_mordell) agree = agree && full.witness_residue == rec.witness_residue;
                if (!agree)
                    throw InternalError("fast/full disagreement at p = " + std::to_string(p));
                rec.method = Method::both;
            }
            if (rec.verdict == Verdict::counterexample && hooks.on_counterexample)
                hooks.on_counterexample(rec);
            rows.push_back(rec);
        } catch (const InternalError& e) {
            throw InternalError("p = " + std::to_string(p) + ": " + e.what());
        } catch (const Error& e) {
            throw Error("p = " + std::to_string(p) + ": " + e.what());
        }
        ++idx;
    }
    return rows;
}

struct ChunkResult {
    uint64_t idx = 0;
    std::vector<ReportRow> rows;
};

}  // namespace detail

/// Partitions [from, to) into fixed-size chunks, verifies them on a worker
/// pool, and commits results strictly in chunk order: the collector is the
/// only writer of the report and checkpoint. Output bytes depend only on
/// the config, never on jobs or scheduling.
inline RunSummary run_range(const RunConfig& cfg, const RunHooks& hooks = {}) {
    if (cfg.from >= cfg.to)
        throw std::invalid_argument("run_range: need from < to");
    if (cfg.jobs < 1) throw std::invalid_argument("run_range: need jobs >= 1");
    if (cfg.chunk_size < 1) throw std::invalid_argument("run_range: need chunk_size >= 1");

    const auto t0 = std::chrono::steady_clock::now();
    const std::string digest = config_digest(cfg);

    const uint64_t span = cfg.to - cfg.from;
    const uint64_t nchunks = (span + cfg.chunk_size - 1) / cfg.chunk_size;
    auto chunk_lo = [&cfg](uint64_t i) { return cfg.from + i * cfg.chunk_size; };
    auto chunk_hi = [&cfg](uint64_t i) {
        uint64_t hi = cfg.from + (i + 1) * cfg.chunk_size;
        return hi > cfg.to ? cfg.to : hi;
    };

    // Seed from an existing checkpoint, if any.
    Checkpoint ck;
    ck.config_digest = digest;
    ck.config = cfg;
    uint64_t first_chunk = 0;
    const bool checkpointing = !cfg.checkpoint_path.empty();
    if (checkpointing && std::filesystem::exists(cfg.checkpoint_path)) {
        Checkpoint prev = load_checkpoint(cfg.checkpoint_path);
        if (prev.config_digest != digest)
            throw CheckpointMismatch("run_range: checkpoint " + cfg.checkpoint_path +
                                     " was written for digest " + prev.config_digest +
                                     ", current config has " + digest);
        // The collector only ever extends a prefix, so a valid checkpoint
        // holds at most one interval starting at `from`.
        if (prev.completed_chunks.size() > 1 ||
            (prev.completed_chunks.size() == 1 && prev.completed_chunks[0].first != cfg.from))
            throw CheckpointCorrupt("run_range: completed chunks are not a contiguous prefix");
        if (!prev.completed_chunks.empty()) {
            uint64_t done_hi = prev.completed_chunks[0].second;
            while (first_chunk < nchunks && chunk_hi(first_chunk) <= done_hi) ++first_chunk;
            ck.completed_chunks = prev.completed_chunks;
            ck.counts = prev.counts;
            ck.max_witness_seen = prev.max_witness_seen;
            ck.report_bytes = prev.report_bytes;
        }
    }

    RunSummary summary;
    summary.chunks_total = nchunks;
    summary.chunks_skipped = first_chunk;
    summary.counts = ck.counts;
    summary.max_witness_seen = ck.max_witness_seen;

    // Report stream: fresh runs truncate; resumed runs cut the report back
    // to the last committed byte and append.
    std::ofstream report;
    if (!cfg.report_path.empty()) {
        if (first_chunk == 0) {
            report.open(cfg.report_path, std::ios::binary | std::ios::trunc);
            if (!report) throw IoError("run_range: cannot open " + cfg.report_path);
            write_report_header(report, cfg.format);
        } else {
            std::error_code ec;
            uint64_t size = std::filesystem::file_size(cfg.report_path, ec);
            if (ec || size < ck.report_bytes)
                throw CheckpointCorrupt("run_range: report " + cfg.report_path +
                                        " is shorter than the checkpoint recorded");
            std::filesystem::resize_file(cfg.report_path, ck.report_bytes, ec);
            if (ec)
                throw IoError("run_range: cannot truncate " + cfg.report_path + ": " +
                              ec.message());
            report.open(cfg.report_path, std::ios::binary | std::ios::app);
            if (!report) throw IoError("run_range: cannot reopen " + cfg.report_path);
            // Make tellp meaningful before the first write; append streams
            // may report 0 until then.
            report.seekp(0, std::ios::end);
        }
    }

    if (first_chunk >= nchunks) {
        // Nothing left to do; the previous run already covered the range.
        summary.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return summary;
    }

    // Worker pool with an in-order collector. Workers pull chunk indexes
    // from an atomic counter and park finished chunks in `pending`; the
    // collector consumes them strictly by index.
    std::atomic<uint64_t> next_chunk{first_chunk};
    std::atomic<bool> abort{false};
    std::mutex mu;
    std::condition_variable cv;
    std::map<uint64_t, detail::ChunkResult> pending;
    std::exception_ptr first_error;

    const unsigned nworkers =
        (unsigned)std::min<uint64_t>(cfg.jobs, nchunks - first_chunk);
    std::vector<std::thread> workers;
    workers.reserve(nworkers);
    for (unsigned w = 0; w < nworkers; ++w) {
        workers.emplace_back([&] {
            try {
                while (!abort.load(std::memory_order_relaxed)) {
                    uint64_t i = next_chunk.fetch_add(1, std::memory_order_relaxed);
                    if (i >= nchunks) break;
                    detail::ChunkResult res;
                    res.idx = i;
                    res.rows = detail::process_chunk(chunk_lo(i), chunk_hi(i), cfg, hooks);
                    std::lock_guard<std::mutex> lk(mu);
                    pending.emplace(i, std::move(res));
                    cv.notify_all();
                }
            } catch (...) {
                std::lock_guard<std::mutex> lk(mu);
                if (!first_error) first_error = std::current_exception();
                abort.store(true);
                cv.notify_all();
            }
        });
    }

    for (uint64_t k = first_chunk; k < nchunks; ++k) {
        detail::ChunkResult res;
        {
            std::unique_lock<std::mutex> lk(mu);
            cv.wait(lk, [&] { return pending.count(k) != 0 || abort.load(); });
            if (abort.load() && pending.count(k) == 0) break;
            res = std::move(pending.at(k));
            pending.erase(k);
        }
        for (const ReportRow& r : res.rows) {
            ++summary.counts.primes_checked;
            if (r.verdict == Verdict::holds)
                ++summary.counts.holds;
            else
                ++summary.counts.counterexamples;
            if (!summary.max_witness_seen || r.period_len > summary.max_witness_seen->period_len)
                summary.max_witness_seen = r;
        }
        if (report.is_open()) {
            write_report_rows(report, res.rows, cfg.format);
            report.flush();
            if (!report) {
                std::lock_guard<std::mutex> lk(mu);
                if (!first_error)
                    first_error = std::make_exception_ptr(
                        IoError("run_range: write to " + cfg.report_path + " failed"));
                abort.store(true);
                break;
            }
        }
        try {
            if (checkpointing) {
                ck.counts = summary.counts;
                ck.max_witness_seen = summary.max_witness_seen;
                ck.completed_chunks = {{cfg.from, chunk_hi(k)}};
                ck.report_bytes = report.is_open() ? (uint64_t)report.tellp() : 0;
                save_checkpoint(ck, cfg.checkpoint_path);
            }
            // A throwing progress hook cancels the run; everything committed
            // so far stays valid and a rerun resumes behind it.
            if (hooks.on_progress) hooks.on_progress(k + 1, nchunks);
        } catch (...) {
            std::lock_guard<std::mutex> lk(mu);
            if (!first_error) first_error = std::current_exception();
            abort.store(true);
            break;
        }
    }

    abort.store(true);
    {
        std::lock_guard<std::mutex> lk(mu);
        cv.notify_all();
    }
    for (std::thread& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);

    summary.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return summary;
}

/// Continues an interrupted run from its checkpoint file. The whole config
/// is reconstructed from the checkpoint, so the caller needs nothing else;
/// a finished run returns its summary without doing any work.
inline RunSummary resume(const std::string& checkpoint_path, const RunHooks& hooks = {}) {
    Checkpoint ck = load_checkpoint(checkpoint_path);
    RunConfig cfg = ck.config;
    cfg.checkpoint_path = checkpoint_path;
    if (config_digest(cfg) != ck.config_digest)
        throw CheckpointMismatch("resume: checkpoint digest does not match its embedded config");
    return run_range(cfg, hooks);
}

}  // namespace mordell
