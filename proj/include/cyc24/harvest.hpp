#pragma once

#include "cyc24/cyclotomic_numbers.hpp"
#include "cyc24/errors.hpp"
#include "cyc24/field_context.hpp"
#include "cyc24/jacobi_params.hpp"
#include "cyc24/nonexistence.hpp"
#include "cyc24/serialize.hpp"

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace cyc24 {

// Runs fn(i) for i in [0, count) on up to `jobs` threads. The first
// exception wins and is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn)
{
    if (jobs < 1)
        jobs = 1;
    if (jobs == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex err_mutex;
    std::exception_ptr err;
    auto worker = [&] {
        while (!stop.load(std::memory_order_relaxed)) {
            std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err)
                    err = std::current_exception();
                stop = true;
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    int nthreads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), count));
    threads.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t)
        threads.emplace_back(worker);
    for (auto& t : threads)
        t.join();
    if (err)
        std::rethrow_exception(err);
}

inline int default_jobs()
{
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

inline std::vector<std::uint64_t> primes_one_mod(std::uint64_t n, std::uint64_t lo, std::uint64_t hi)
{
    std::vector<std::uint64_t> ps;
    if (lo < 2)
        lo = 2;
    std::uint64_t start = lo + (lo % n == 1 ? 0 : (1 + n - lo % n) % n);
    for (std::uint64_t c = start; c <= hi; c += n)
        if (is_prime(c))
            ps.push_back(c);
    return ps;
}

// Canonical per-prime pipeline: normalized generator, extracted parameters,
// direct order-24 counts. The optional cache holds the index table keyed by
// (p, g) and the flat parameter record keyed by p; counts are always
// recomputed (one O(p) pass).
inline PrimeData analyze_prime(std::uint64_t p, const CacheDir* cache = nullptr)
{
    std::optional<PrimeContext> ctx;
    std::optional<JacobiParams> params;

    auto cached_record_ok = [p](const ParamsRecord& rec, const PrimeContext& c) {
        const JacobiParams& q = rec.params;
        Int P(p);
        return rec.p == p && c.ind[2] % 12 == static_cast<std::uint64_t>(q.Z) &&
               c.ind[3] % 8 == static_cast<std::uint64_t>(q.T) &&
               q.X * q.X + 4 * q.Y * q.Y == P && q.A * q.A + 3 * q.B * q.B == P &&
               q.C * q.C + 2 * q.D * q.D == P && q.U * q.U + 24 * q.V * q.V == P;
    };

    if (cache) {
        try {
            auto pf = cache->params_file(p);
            if (std::filesystem::exists(pf)) {
                ParamsRecord rec = params_record_from_json(read_json_file(pf));
                if (rec.p == p) {
                    auto indf = cache->ind_file(p, rec.g);
                    if (std::filesystem::exists(indf)) {
                        PrimeContext loaded = load_context(indf, 24);
                        if (loaded.p == p && loaded.g == rec.g)
                            ctx = std::move(loaded);
                    }
                    if (!ctx)
                        ctx = build_context(p, 24, rec.g);
                    if (cached_record_ok(rec, *ctx))
                        params = rec.params;
                    else
                        ctx.reset(); // stale or tampered record; recompute
                }
            }
        } catch (const error&) {
            ctx.reset();
            params.reset(); // stale or corrupt cache entry; recompute below
        }
    }

    if (!ctx)
        ctx = normalize_generator(p);
    if (!params)
        params = extract_params(*ctx);

    if (cache) {
        try {
            auto indf = cache->ind_file(p, ctx->g);
            if (!std::filesystem::exists(indf))
                save_context(*ctx, indf);
            auto pf = cache->params_file(p);
            if (!std::filesystem::exists(pf))
                write_json_file(params_record_json(p, ctx->g, ctx->f, *params), pf);
        } catch (const error&) {
            // cache writes are best-effort
        }
    }

    PrimeData pd;
    pd.p = p;
    pd.g = ctx->g;
    pd.f = ctx->f;
    pd.params = *params;
    pd.counts = count_all(*ctx, 24);
    return pd;
}

struct HarvestResult {
    std::vector<PrimeData> primes; // ascending p
    std::map<ClassTuple, std::vector<std::size_t>> by_class;
    std::uint64_t scanned_to = 0;

    std::vector<PrimeData> class_primes(const ClassTuple& cls) const
    {
        std::vector<PrimeData> out;
        auto it = by_class.find(cls);
        if (it == by_class.end())
            return out;
        out.reserve(it->second.size());
        for (std::size_t i : it->second)
            out.push_back(primes[i]);
        return out;
    }
};

// Scans primes p = 1 mod 24 in increasing order, classifying each, and
// stops once every targeted class holds `per_class_target` primes (or the
// bound is hit). Classification is parallel across primes; the scan order
// and result are deterministic.
inline HarvestResult harvest(std::uint64_t pmax, int per_class_target, int jobs,
                             const CacheDir* cache = nullptr,
                             const std::vector<ClassTuple>& wanted = all_class_tuples())
{
    HarvestResult result;
    auto candidates = primes_one_mod(24, 73, pmax);
    std::map<ClassTuple, int> fill;
    for (const auto& cls : wanted)
        fill[cls] = 0;

    auto targets_met = [&] {
        for (const auto& [cls, count] : fill)
            if (count < per_class_target)
                return false;
        return true;
    };

    const std::size_t block = static_cast<std::size_t>(std::max(jobs, 1)) * 16;
    std::size_t pos = 0;
    while (pos < candidates.size() && !targets_met()) {
        std::size_t n = std::min(block, candidates.size() - pos);
        std::vector<PrimeData> batch(n);
        parallel_for(n, jobs, [&](std::size_t i) { batch[i] = analyze_prime(candidates[pos + i], cache); });
        for (std::size_t i = 0; i < n; ++i) {
            ClassTuple cls = batch[i].params.cls();
            result.by_class[cls].push_back(result.primes.size());
            auto it = fill.find(cls);
            if (it != fill.end())
                ++it->second;
            result.scanned_to = batch[i].p;
            result.primes.push_back(std::move(batch[i]));
            if (targets_met())
                break;
        }
        pos += n;
    }
    return result;
}

inline ScanResult direct_criterion_scan(std::uint64_t pmax, Mode mode, int jobs = 1)
{
    if (pmax < 73)
        throw input_error("direct_criterion_scan: pmax must be at least 73");
    auto primes = primes_one_mod(24, 73, pmax);
    ScanResult result;
    result.records.resize(primes.size());
    parallel_for(primes.size(), jobs,
                 [&](std::size_t i) { result.records[i] = scan_one_prime(primes[i], mode); });
    for (const auto& rec : result.records) {
        if (!rec.applicable)
            continue;
        if (rec.pass0)
            result.survivors.push_back({rec.p, 0});
        if (rec.pass1)
            result.survivors.push_back({rec.p, 1});
    }
    return result;
}

} // namespace cyc24
