#pragma once

#include "cyc24/errors.hpp"
#include "cyc24/harvest.hpp"
#include "cyc24/nonexistence.hpp"
#include "cyc24/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cyc24 {

// Shared command configuration; every command is deterministic given one of
// these (canonical generators, ordered scans, fixed serialization order).
struct RunConfig {
    std::uint64_t p = 0;
    std::uint64_t n = 24;
    std::uint64_t m = 1;
    int epsilon_single = 0; // verify-ds
    std::uint64_t pmax = 200000;
    std::optional<ClassTuple> class_filter;
    std::string epsilon = "both"; // 0 | 1 | both
    std::optional<Mode> mode;
    std::string out;
    std::string format = "json"; // json | csv
    int jobs = 0;                // 0 = all hardware threads
    std::string cache_dir;
    std::string tables_dir;
};

namespace detail {

inline std::vector<int> epsilon_list(const std::string& text)
{
    if (text == "0")
        return {0};
    if (text == "1")
        return {1};
    if (text == "both")
        return {0, 1};
    throw input_error("epsilon must be 0, 1 or both (got \"" + text + "\")");
}

inline int effective_jobs(const RunConfig& cfg)
{
    return cfg.jobs > 0 ? cfg.jobs : default_jobs();
}

inline std::optional<CacheDir> open_cache(const RunConfig& cfg)
{
    if (cfg.cache_dir.empty())
        return std::nullopt;
    return CacheDir(cfg.cache_dir);
}

inline void require_order24_prime(std::uint64_t p)
{
    if (!is_prime(p) || (p - 1) % 24 != 0)
        throw input_error(std::to_string(p) + " is not prime = 1 (mod 24)");
}

inline void require_pmax(std::uint64_t pmax)
{
    if (pmax < 73)
        throw input_error("pmax must be at least 73");
}

inline void maybe_write_text(const std::string& path, const std::string& text)
{
    if (path.empty())
        return;
    std::ofstream os(path, std::ios::trunc);
    if (!os)
        throw input_error("cannot open for writing: " + path);
    os << text;
}

} // namespace detail

// Prints the flat parameter record for the canonical generator of p.
inline int cmd_params(const RunConfig& cfg, std::ostream& os)
{
    detail::require_order24_prime(cfg.p);
    auto cache = detail::open_cache(cfg);
    PrimeData pd = analyze_prime(cfg.p, cache ? &*cache : nullptr);
    Json j = params_record_json(pd.p, pd.g, pd.f, pd.params);
    std::string text = j.dump(2) + "\n";
    os << text;
    detail::maybe_write_text(cfg.out, text);
    return 0;
}

// Derives coefficient tables (one JSON file per class) for the filtered
// class or for all 48, harvesting primes up to pmax.
inline int cmd_derive(const RunConfig& cfg, std::ostream& os)
{
    detail::require_pmax(cfg.pmax);
    auto cache = detail::open_cache(cfg);
    std::filesystem::path out_dir;
    if (!cfg.out.empty())
        out_dir = cfg.out;
    else if (cache)
        out_dir = cache->root / "tables";
    else
        throw input_error("derive needs --out DIR (or --cache DIR)");
    std::filesystem::create_directories(out_dir);

    std::vector<ClassTuple> wanted =
        cfg.class_filter ? std::vector<ClassTuple>{*cfg.class_filter} : all_class_tuples();

    HarvestResult hv = harvest(cfg.pmax, 23, detail::effective_jobs(cfg),
                               cache ? &*cache : nullptr, wanted);
    os << "scanned primes = 1 (mod 24) up to " << hv.scanned_to << " (" << hv.primes.size()
       << " primes)\n";

    int failures = 0;
    for (const auto& cls : wanted) {
        auto primes = hv.class_primes(cls);
        try {
            CoeffTable table = derive_table(cls, primes);
            auto file = out_dir / (cls.tag() + ".json");
            write_json_file(table_to_json(table), file);
            if (cache && out_dir != cache->root / "tables")
                write_json_file(table_to_json(table), cache->tables_file(cls));
            if (cfg.format == "csv") {
                std::ofstream csv(out_dir / (cls.tag() + ".csv"), std::ios::trunc);
                table_to_csv(table, csv);
            }
            os << "class " << cls.str() << ": derived from " << table.provenance.size()
               << " primes, validated on " << table.validated.size() << " held-out primes -> "
               << file.string() << "\n";
        } catch (const RankDeficient& e) {
            ++failures;
            os << "class " << cls.str() << ": " << e.what() << " (" << primes.size()
               << " primes below " << cfg.pmax << "; raise --pmax)\n";
        }
    }
    os << (wanted.size() - failures) << "/" << wanted.size() << " tables derived\n";
    return failures == 0 ? 0 : 2;
}

// Runs the contradiction pipeline over every class of the mode's parity,
// reading tables from a directory of derive outputs.
inline int cmd_analyze(const RunConfig& cfg, std::ostream& os)
{
    if (!cfg.mode)
        throw input_error("analyze needs --mode difference|qualified");
    if (cfg.tables_dir.empty())
        throw input_error("analyze needs a tables directory");
    Mode mode = *cfg.mode;
    int want_f1 = mode == Mode::qualified ? 0 : 1;

    std::vector<CoeffTable> tables;
    for (const auto& cls : all_class_tuples()) {
        if (cls.F1 != want_f1)
            continue;
        auto file = std::filesystem::path(cfg.tables_dir) / (cls.tag() + ".json");
        if (!std::filesystem::exists(file))
            throw input_error("missing table for class " + cls.str() + ": " + file.string());
        tables.push_back(table_from_json(read_json_file(file)));
    }

    std::vector<ContradictionReport> reports;
    for (int eps : detail::epsilon_list(cfg.epsilon)) {
        std::vector<ContradictionReport> batch(tables.size());
        parallel_for(tables.size(), detail::effective_jobs(cfg),
                     [&](std::size_t i) { batch[i] = analyze_class(tables[i], mode, eps); });
        int contradictions = 0, unresolved = 0;
        std::map<std::string, int> by_verdict;
        for (auto& rep : batch) {
            (rep.is_contradiction() ? contradictions : unresolved)++;
            ++by_verdict[verdict_name(rep.verdict)];
            os << mode_name(mode) << " eps=" << eps << " class " << rep.cls.str() << ": "
               << rep.verdict_string() << "\n";
            reports.push_back(std::move(rep));
        }
        os << mode_name(mode) << " eps=" << eps << ": " << contradictions << " contradictions, "
           << unresolved << " unresolved (";
        bool first = true;
        for (const auto& [name, count] : by_verdict) {
            os << (first ? "" : ", ") << name << "=" << count;
            first = false;
        }
        os << ")\n";
    }

    if (!cfg.out.empty()) {
        if (cfg.format == "csv") {
            std::ofstream f(cfg.out, std::ios::trunc);
            if (!f)
                throw input_error("cannot open for writing: " + cfg.out);
            reports_to_csv(reports, f);
        } else {
            Json arr = Json::array();
            for (const auto& rep : reports)
                arr.push_back(report_to_json(rep));
            write_json_file(arr, cfg.out);
        }
    }
    return 0;
}

// Exhaustive counted test of the necessary conditions up to pmax.
inline int cmd_scan(const RunConfig& cfg, std::ostream& os)
{
    detail::require_pmax(cfg.pmax);
    if (!cfg.mode)
        throw input_error("scan needs --mode difference|qualified");
    Mode mode = *cfg.mode;
    ScanResult result = direct_criterion_scan(cfg.pmax, mode, detail::effective_jobs(cfg));

    if (cfg.out.empty()) {
        scan_records_to_csv(result, os);
    } else if (cfg.format == "csv") {
        std::ofstream f(cfg.out, std::ios::trunc);
        if (!f)
            throw input_error("cannot open for writing: " + cfg.out);
        scan_records_to_csv(result, f);
    } else {
        write_json_file(scan_result_to_json(cfg.pmax, mode, result), cfg.out);
    }

    double total_ms = 0;
    for (const auto& r : result.records)
        total_ms += r.millis;
    os << "scanned " << result.records.size() << " primes up to " << cfg.pmax << " ("
       << mode_name(mode) << " mode, " << total_ms << " ms counted)\n";
    if (result.survivors.empty()) {
        os << "survivors: none\n";
    } else {
        os << "survivors:\n";
        for (const auto& s : result.survivors)
            os << "  p=" << s.p << " epsilon=" << s.epsilon << "\n";
    }
    return 0;
}

// Brute-force difference/qualified-difference set check at (p, n, eps, m).
inline int cmd_verify_ds(const RunConfig& cfg, std::ostream& os)
{
    DSReport rep = verify_addition_set(cfg.p, cfg.n, cfg.epsilon_single, cfg.m);
    std::string text = ds_report_to_json(rep).dump(2) + "\n";
    os << text;
    detail::maybe_write_text(cfg.out, text);
    return 0;
}

} // namespace cyc24
