// Command-line front end: prime parameter dumps, coefficient-table
// derivation, nonexistence analysis, criterion scans, and brute-force
// difference-set verification.
#include "cyc24/commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

cyc24::ClassTuple parse_class(const std::string& text)
{
    int vals[4];
    if (std::sscanf(text.c_str(), "%d,%d,%d,%d", &vals[0], &vals[1], &vals[2], &vals[3]) != 4)
        throw cyc24::input_error("--class expects F1,V1,Z,T (e.g. 1,1,4,0)");
    cyc24::ClassTuple cls{vals[0], vals[1], vals[2], vals[3]};
    bool ok = (cls.F1 == 0 || cls.F1 == 1) && (cls.V1 == 0 || cls.V1 == 1) &&
              (cls.Z == 0 || cls.Z == 2 || cls.Z == 4 || cls.Z == 6) &&
              (cls.T == 0 || cls.T == 2 || cls.T == 4);
    if (!ok)
        throw cyc24::input_error("class components out of range: F1,V1 in {0,1}, Z in {0,2,4,6}, T in {0,2,4}");
    return cls;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cyclotomic numbers of order 24: exact tables and difference-set nonexistence"};
    app.require_subcommand(1);

    cyc24::RunConfig cfg;
    std::string class_text;
    std::string mode_text;

    auto* params = app.add_subcommand("params", "print the parameter record of a prime = 1 (mod 24)");
    params->add_option("p", cfg.p, "prime = 1 (mod 24)")->required();
    params->add_option("--out", cfg.out, "also write the record to this file");
    params->add_option("--cache", cfg.cache_dir, "cache directory");

    auto* derive = app.add_subcommand("derive", "derive coefficient tables by exact fitting");
    derive->add_option("--class", class_text, "single class as F1,V1,Z,T (default: all 48)");
    derive->add_option("--pmax", cfg.pmax, "prime harvest bound (>= 73)")->capture_default_str();
    derive->add_option("--out", cfg.out, "output directory for table JSON files");
    derive->add_option("--format", cfg.format, "json|csv (csv adds flattened tables)")->capture_default_str();
    derive->add_option("--jobs", cfg.jobs, "worker threads (0 = all)");
    derive->add_option("--cache", cfg.cache_dir, "cache directory");

    auto* analyze = app.add_subcommand("analyze", "run the nonexistence pipeline over derived tables");
    analyze->add_option("tables", cfg.tables_dir, "directory holding F1_V1_Z_T.json tables")->required();
    analyze->add_option("--mode", mode_text, "difference|qualified")->required();
    analyze->add_option("--epsilon", cfg.epsilon, "0|1|both")->capture_default_str();
    analyze->add_option("--out", cfg.out, "write reports to this file");
    analyze->add_option("--format", cfg.format, "json|csv")->capture_default_str();

    auto* scan = app.add_subcommand("scan", "test the counted criteria for every prime up to pmax");
    scan->add_option("--pmax", cfg.pmax, "scan bound (>= 73)")->capture_default_str();
    scan->add_option("--mode", mode_text, "difference|qualified")->required();
    scan->add_option("--out", cfg.out, "write per-prime records to this file");
    scan->add_option("--format", cfg.format, "json|csv")->capture_default_str();
    scan->add_option("--jobs", cfg.jobs, "worker threads (0 = all)");

    auto* verify = app.add_subcommand("verify-ds", "brute-force check of an addition set");
    verify->add_option("p", cfg.p, "prime")->required();
    verify->add_option("n", cfg.n, "order (p = 1 mod n)")->required();
    verify->add_option("epsilon", cfg.epsilon_single, "0 or 1")->required();
    verify->add_option("m", cfg.m, "qualifier (nonzero residue)")->required();
    verify->add_option("--out", cfg.out, "also write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (params->parsed())
            return cyc24::cmd_params(cfg, std::cout);
        if (derive->parsed()) {
            if (!class_text.empty())
                cfg.class_filter = parse_class(class_text);
            return cyc24::cmd_derive(cfg, std::cout);
        }
        if (analyze->parsed()) {
            cfg.mode = cyc24::mode_from_string(mode_text);
            return cyc24::cmd_analyze(cfg, std::cout);
        }
        if (scan->parsed()) {
            cfg.mode = cyc24::mode_from_string(mode_text);
            return cyc24::cmd_scan(cfg, std::cout);
        }
        if (verify->parsed())
            return cyc24::cmd_verify_ds(cfg, std::cout);
    } catch (const cyc24::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cyc24::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
