#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

#ifndef ISOLAG_DEFAULT_DATA_DIR
#define ISOLAG_DEFAULT_DATA_DIR "data"
#endif

namespace isolag {

inline constexpr const char* kDataDirEnv = "ISOLAG_DATA_DIR";

inline std::filesystem::path data_dir()
{
    if (const char* env = std::getenv(kDataDirEnv); env && *env)
        return env;
    return ISOLAG_DEFAULT_DATA_DIR;
}

// Minimal CSV: comma separated, double-quoted fields may hold commas and "".
// Lines starting with '#' are comments.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> comments;

    int column(const std::string& name) const
    {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return static_cast<int>(i);
        throw ConfigError("csv: missing column " + name);
    }
    const std::string& at(std::size_t row, const std::string& name) const
    {
        return rows.at(row).at(static_cast<std::size_t>(column(name)));
    }
};

inline std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw ConfigError("csv: unterminated quote in: " + line);
    out.push_back(cur);
    return out;
}

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

inline std::string csv_line(const std::vector<std::string>& fields)
{
    std::string s;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            s += ',';
        s += csv_field(fields[i]);
    }
    return s;
}

inline CsvTable parse_csv(std::istream& in, const std::string& what)
{
    CsvTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            t.comments.push_back(line);
            continue;
        }
        auto f = split_csv_line(line);
        if (t.header.empty()) {
            t.header = f;
            continue;
        }
        if (f.size() != t.header.size())
            throw ConfigError(what + ": row has " + std::to_string(f.size()) + " fields, expected " +
                              std::to_string(t.header.size()));
        t.rows.push_back(std::move(f));
    }
    if (t.header.empty())
        throw ConfigError(what + ": empty file");
    return t;
}

inline CsvTable read_csv(const std::filesystem::path& p)
{
    std::ifstream in(p);
    if (!in)
        throw ConfigError("cannot open data file " + p.string());
    return parse_csv(in, p.string());
}

inline CsvTable read_data_file(const std::string& name) { return read_csv(data_dir() / name); }

inline std::vector<int> parse_int_list(const std::string& s)
{
    std::vector<int> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ' ')) {
        if (tok.empty())
            continue;
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ConfigError("bad integer list: " + s);
        }
    }
    return v;
}

inline std::string int_list(const std::vector<int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

inline std::string rational_list(const RVec& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + to_string(v[i]);
    return s;
}

inline int parse_int(const std::string& s, const std::string& what)
{
    auto v = parse_int_list(s);
    if (v.size() != 1)
        throw ConfigError(what + ": expected one integer, got '" + s + "'");
    return v[0];
}

// --- branching.csv -------------------------------------------------------

struct BranchingDatum {
    std::string case_id;
    std::vector<int> weight;  // over fundamental weights
    int fixed_dim_k0 = 0;     // dim (V)_{K0}
    int fixed_dim = 0;        // dim (V)_{K[a]}
    std::string source;       // "curated" or "derived"
    std::string citation;
};

inline std::vector<BranchingDatum> load_branching(const CsvTable& t)
{
    std::vector<BranchingDatum> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        BranchingDatum d;
        d.case_id = t.at(r, "case");
        d.weight = parse_int_list(t.at(r, "weight_m"));
        d.fixed_dim_k0 = parse_int(t.at(r, "fixed_dim_k0"), "branching");
        d.fixed_dim = parse_int(t.at(r, "fixed_dim"), "branching");
        d.source = t.at(r, "source");
        d.citation = t.at(r, "citation");
        if (d.fixed_dim < 0 || d.fixed_dim > d.fixed_dim_k0)
            throw ConfigError("branching: fixed dims out of order for " + d.case_id + " " +
                              t.at(r, "weight"));
        if (d.source != "curated" && d.source != "derived")
            throw ConfigError("branching: unknown source tag " + d.source);
        if (d.citation.empty())
            throw ConfigError("branching: missing citation for " + d.case_id);
        out.push_back(std::move(d));
    }
    return out;
}

inline std::vector<BranchingDatum> load_branching() { return load_branching(read_data_file("branching.csv")); }

// --- table1.csv ----------------------------------------------------------

struct Table1Row {
    std::string ambient;  // M
    std::string lagrangian;
    bool einstein = false;
    std::string lambda1;  // "1/2", "m/(4m-2)", "p/(p+q-2)"
    bool h_stable = false;
    bool stable = false;
    std::string quadric_rule;  // empty unless M is a quadric
    bool corrected = false;
    std::string citation;
};

inline bool parse_yes_no(const std::string& s)
{
    if (s == "Yes")
        return true;
    if (s == "No")
        return false;
    throw ConfigError("table1: expected Yes/No, got " + s);
}

inline std::vector<Table1Row> load_table1(const CsvTable& t)
{
    std::vector<Table1Row> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        Table1Row x;
        x.ambient = t.at(r, "M");
        x.lagrangian = t.at(r, "L");
        x.einstein = parse_yes_no(t.at(r, "einstein"));
        x.lambda1 = t.at(r, "lambda1");
        x.h_stable = parse_yes_no(t.at(r, "h_stable"));
        x.stable = parse_yes_no(t.at(r, "stable"));
        x.quadric_rule = t.at(r, "quadric_rule");
        x.corrected = parse_yes_no(t.at(r, "corrected"));
        x.citation = t.at(r, "citation");
        out.push_back(std::move(x));
    }
    return out;
}

inline std::vector<Table1Row> load_table1() { return load_table1(read_data_file("table1.csv")); }

// Real quadric Q_{p,q}(R) in Q_{p+q-2}(C): which table row applies.
inline bool quadric_rule_applies(const std::string& rule, int p, int q)
{
    if (rule == "gap_ge3")
        return p >= 2 && q - p >= 3;
    if (rule == "gap_lt3")
        return p >= 2 && q - p >= 0 && q - p < 3;
    if (rule == "p_eq1")
        return p == 1 && q >= 3;
    if (rule.empty())
        return false;
    throw ConfigError("table1: unknown quadric rule " + rule);
}

inline const Table1Row& table1_quadric_row(const std::vector<Table1Row>& rows, int p, int q)
{
    const Table1Row* hit = nullptr;
    for (const auto& r : rows)
        if (quadric_rule_applies(r.quadric_rule, p, q)) {
            if (hit)
                throw ConfigError("table1: overlapping quadric rows");
            hit = &r;
        }
    if (!hit)
        throw UnsupportedCase("table1: no row for Q_{" + std::to_string(p) + "," + std::to_string(q) + "}");
    return *hit;
}

} // namespace isolag
