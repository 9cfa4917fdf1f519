#pragma once

#include "cyc24/cyclotomic_numbers.hpp"
#include "cyc24/errors.hpp"
#include "cyc24/jacobi_params.hpp"
#include "cyc24/nonexistence.hpp"
#include "cyc24/numeric.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

namespace cyc24 {

// All interchange files use insertion-ordered JSON so key order is stable.
using Json = nlohmann::ordered_json;

inline Json class_to_json(const ClassTuple& cls)
{
    return Json{{"F1", cls.F1}, {"V1", cls.V1}, {"Z", cls.Z}, {"T", cls.T}};
}

inline ClassTuple class_from_json(const Json& j)
{
    ClassTuple cls{j.at("F1").get<int>(), j.at("V1").get<int>(), j.at("Z").get<int>(),
                   j.at("T").get<int>()};
    bool ok = (cls.F1 == 0 || cls.F1 == 1) && (cls.V1 == 0 || cls.V1 == 1) &&
              (cls.Z == 0 || cls.Z == 2 || cls.Z == 4 || cls.Z == 6) &&
              (cls.T == 0 || cls.T == 2 || cls.T == 4);
    if (!ok)
        throw input_error("class tuple out of range: " + cls.str());
    return cls;
}

// Flat per-prime parameter record with exactly these keys.
inline Json params_record_json(std::uint64_t p, std::uint64_t g, std::uint64_t f,
                               const JacobiParams& params)
{
    Json j;
    j["p"] = p;
    j["g"] = g;
    j["f"] = f;
    j["F1"] = params.F1;
    j["V1"] = params.V1;
    j["Z"] = params.Z;
    j["T"] = params.T;
    j["X"] = to_i64(params.X);
    j["Y"] = to_i64(params.Y);
    j["A"] = to_i64(params.A);
    j["B"] = to_i64(params.B);
    j["C"] = to_i64(params.C);
    j["D"] = to_i64(params.D);
    j["U"] = to_i64(params.U);
    j["V"] = to_i64(params.V);
    for (int k = 0; k < 8; ++k)
        j["D" + std::to_string(k)] = to_i64(params.Dj[k]);
    return j;
}

struct ParamsRecord {
    std::uint64_t p = 0, g = 0, f = 0;
    JacobiParams params;
};

inline ParamsRecord params_record_from_json(const Json& j)
{
    ParamsRecord rec;
    rec.p = j.at("p").get<std::uint64_t>();
    rec.g = j.at("g").get<std::uint64_t>();
    rec.f = j.at("f").get<std::uint64_t>();
    rec.params.F1 = j.at("F1").get<int>();
    rec.params.V1 = j.at("V1").get<int>();
    rec.params.Z = j.at("Z").get<int>();
    rec.params.T = j.at("T").get<int>();
    rec.params.X = j.at("X").get<std::int64_t>();
    rec.params.Y = j.at("Y").get<std::int64_t>();
    rec.params.A = j.at("A").get<std::int64_t>();
    rec.params.B = j.at("B").get<std::int64_t>();
    rec.params.C = j.at("C").get<std::int64_t>();
    rec.params.D = j.at("D").get<std::int64_t>();
    rec.params.U = j.at("U").get<std::int64_t>();
    rec.params.V = j.at("V").get<std::int64_t>();
    for (int k = 0; k < 8; ++k)
        rec.params.Dj[k] = j.at("D" + std::to_string(k)).get<std::int64_t>();
    return rec;
}

inline Json table_to_json(const CoeffTable& table)
{
    Json j;
    j["class"] = class_to_json(table.cls);
    Json order = Json::array();
    for (const auto& name : observation_names())
        order.push_back(name);
    j["order"] = order;
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json r;
        r["s"] = row.s;
        r["t"] = row.t;
        Json cs = Json::array();
        for (const auto& c : row.coeffs)
            cs.push_back(to_i64(c));
        r["coeffs"] = cs;
        rows.push_back(std::move(r));
    }
    j["rows"] = rows;
    j["provenance"] = table.provenance;
    j["validated"] = table.validated;
    return j;
}

inline CoeffTable table_from_json(const Json& j)
{
    CoeffTable table;
    table.cls = class_from_json(j.at("class"));
    const auto& order = j.at("order");
    if (order.size() != 18)
        throw input_error("table: bad order array");
    for (int i = 0; i < 18; ++i)
        if (order[i].get<std::string>() != observation_names()[i])
            throw input_error("table: unexpected evaluation order");
    const auto& rows = j.at("rows");
    if (rows.size() != 576)
        throw input_error("table: expected 576 rows, found " + std::to_string(rows.size()));
    table.rows.resize(576);
    std::vector<bool> seen(576, false);
    for (const auto& r : rows) {
        int s = r.at("s").get<int>();
        int t = r.at("t").get<int>();
        if (s < 0 || s > 23 || t < 0 || t > 23 || seen[static_cast<std::size_t>(s) * 24 + t])
            throw input_error("table: bad or duplicate row index");
        seen[static_cast<std::size_t>(s) * 24 + t] = true;
        CycCoeffRow& row = table.row(s, t);
        row.s = s;
        row.t = t;
        const auto& cs = r.at("coeffs");
        if (cs.size() != 18)
            throw input_error("table: row coefficient count != 18");
        for (int i = 0; i < 18; ++i)
            row.coeffs[i] = cs[i].get<std::int64_t>();
    }
    for (const auto& p : j.at("provenance"))
        table.provenance.push_back(p.get<std::uint64_t>());
    for (const auto& p : j.at("validated"))
        table.validated.push_back(p.get<std::uint64_t>());
    return table;
}

// CSV flattening of a table: s,t,c0..c17 under a header naming the
// evaluation order.
inline void table_to_csv(const CoeffTable& table, std::ostream& os)
{
    os << "s,t";
    for (const auto& name : observation_names())
        os << "," << name;
    os << "\n";
    for (const auto& row : table.rows) {
        os << row.s << "," << row.t;
        for (const auto& c : row.coeffs)
            os << "," << c.str();
        os << "\n";
    }
}

inline Json report_to_json(const ContradictionReport& rep)
{
    Json j;
    j["class"] = class_to_json(rep.cls);
    j["mode"] = mode_name(rep.mode);
    j["epsilon"] = rep.epsilon;
    j["verdict"] = rep.verdict_string();
    Json witness;
    Json particular = Json::array();
    Json basis = Json::array();
    if (rep.witness) {
        for (const auto& v : rep.witness->particular)
            particular.push_back(rat_to_string(v));
        for (const auto& vec : rep.witness->basis) {
            Json b = Json::array();
            for (const auto& v : vec)
                b.push_back(rat_to_string(v));
            basis.push_back(std::move(b));
        }
    }
    witness["particular"] = particular;
    witness["basis"] = basis;
    Json roots = Json::array();
    for (const auto& r : rep.roots)
        roots.push_back(rat_to_string(r));
    witness["roots"] = roots;
    j["witness"] = witness;
    j["rows_used"] = rep.rows_used;
    return j;
}

inline Json ds_report_to_json(const DSReport& rep)
{
    Json j;
    j["p"] = rep.p;
    j["n"] = rep.n;
    j["epsilon"] = rep.epsilon;
    j["m"] = rep.m;
    j["is_set"] = rep.is_set;
    if (rep.lambda)
        j["lambda"] = *rep.lambda;
    return j;
}

inline Json scan_result_to_json(std::uint64_t pmax, Mode mode, const ScanResult& result)
{
    Json j;
    j["pmax"] = pmax;
    j["mode"] = mode_name(mode);
    Json survivors = Json::array();
    for (const auto& s : result.survivors)
        survivors.push_back(Json{{"p", s.p}, {"epsilon", s.epsilon}});
    j["survivors"] = survivors;
    Json records = Json::array();
    for (const auto& r : result.records) {
        records.push_back(Json{{"p", r.p},
                               {"f", r.f},
                               {"applicable", r.applicable},
                               {"pass0", r.pass0},
                               {"pass1", r.pass1},
                               {"millis", r.millis}});
    }
    j["records"] = records;
    return j;
}

inline void scan_records_to_csv(const ScanResult& result, std::ostream& os)
{
    os << "p,f,applicable,pass0,pass1,millis\n";
    for (const auto& r : result.records)
        os << r.p << "," << r.f << "," << (r.applicable ? 1 : 0) << "," << (r.pass0 ? 1 : 0) << ","
           << (r.pass1 ? 1 : 0) << "," << r.millis << "\n";
}

inline void reports_to_csv(const std::vector<ContradictionReport>& reps, std::ostream& os)
{
    os << "F1,V1,Z,T,mode,epsilon,verdict\n";
    for (const auto& r : reps)
        os << r.cls.F1 << "," << r.cls.V1 << "," << r.cls.Z << "," << r.cls.T << ","
           << mode_name(r.mode) << "," << r.epsilon << ",\"" << r.verdict_string() << "\"\n";
}

// Cache directory layout: ind/p_g.bin, params/p.json, tables/F1_V1_Z_T.json.
struct CacheDir {
    std::filesystem::path root;

    explicit CacheDir(std::filesystem::path r) : root(std::move(r))
    {
        std::filesystem::create_directories(root / "ind");
        std::filesystem::create_directories(root / "params");
        std::filesystem::create_directories(root / "tables");
    }

    std::filesystem::path ind_file(std::uint64_t p, std::uint64_t g) const
    {
        return root / "ind" / (std::to_string(p) + "_" + std::to_string(g) + ".bin");
    }

    std::filesystem::path params_file(std::uint64_t p) const
    {
        return root / "params" / (std::to_string(p) + ".json");
    }

    std::filesystem::path tables_file(const ClassTuple& cls) const
    {
        return root / "tables" / (cls.tag() + ".json");
    }
};

inline void write_json_file(const Json& j, const std::filesystem::path& file)
{
    std::ofstream os(file, std::ios::trunc);
    if (!os)
        throw input_error("cannot open for writing: " + file.string());
    os << j.dump(2) << "\n";
}

inline Json read_json_file(const std::filesystem::path& file)
{
    std::ifstream is(file);
    if (!is)
        throw input_error("cannot open: " + file.string());
    Json j;
    is >> j;
    return j;
}

} // namespace cyc24
