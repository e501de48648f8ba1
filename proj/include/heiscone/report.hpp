#pragma once

#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "heiscone/geodesics.hpp"

namespace heiscone {

struct RunConfig {
    double fd_step = 1e-3;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int samples = 100;
    std::uint64_t seed = 12345;
    double guard = 1e-9;

    void validate() const {
        if (!(fd_step > 0) || !(abs_tol > 0) || !(rel_tol > 0) || !(guard > 0) || samples <= 0)
            throw std::invalid_argument("RunConfig: tolerances and counts must be positive");
    }
};

struct CheckEntry {
    std::string check;
    std::string target;
    long samples = 0;
    double max_residual = 0;
    double tolerance = 0;
    bool pass = false;
};

struct VerifyReport {
    RunConfig config;
    std::vector<CheckEntry> entries;

    bool all_pass() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
};

// Fixed 17-significant-digit float formatting so reports are byte-identical
// across runs and diffable.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

inline std::string to_json(const VerifyReport& r) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"seed\": " << r.config.seed << ",\n";
    os << "  \"config\": {\"fd_step\": " << format_double(r.config.fd_step)
       << ", \"abs_tol\": " << format_double(r.config.abs_tol)
       << ", \"rel_tol\": " << format_double(r.config.rel_tol)
       << ", \"samples\": " << r.config.samples
       << ", \"guard\": " << format_double(r.config.guard) << "},\n";
    os << "  \"checks\": [\n";
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        const auto& e = r.entries[i];
        os << "    {\"check\": \"" << json_escape(e.check) << "\", \"target\": \""
           << json_escape(e.target) << "\", \"samples\": " << e.samples
           << ", \"max_residual\": " << format_double(e.max_residual)
           << ", \"tolerance\": " << format_double(e.tolerance)
           << ", \"pass\": " << (e.pass ? "true" : "false") << "}"
           << (i + 1 < r.entries.size() ? "," : "") << "\n";
    }
    os << "  ],\n";
    os << "  \"pass\": " << (r.all_pass() ? "true" : "false") << "\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// CSV curves: header s,x,y,t,r with columns restricted to the manifold.
// ---------------------------------------------------------------------------

inline std::vector<std::string> csv_columns(Manifold m) {
    switch (m) {
        case Manifold::Heisenberg: return {"s", "x", "y", "t"};
        case Manifold::Cone: return {"s", "x", "y", "t", "r"};
        case Manifold::HalfPlane: return {"s", "t", "r"};
        case Manifold::ComplexPlane: return {"s", "x", "y"};
        case Manifold::HalfSpace: return {"s", "x", "y", "r"};
        case Manifold::Siegel: return {"s", "x", "y", "t", "r"};
    }
    return {};
}

inline std::string curve_to_csv(const Curve& c) {
    const Manifold man = manifold_of(c.metric);
    const auto cols = csv_columns(man);
    std::ostringstream os;
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& smp : c.samples) {
        os << format_double(smp.s);
        for (int i = 0; i < smp.point.dim(); ++i) os << "," << format_double(smp.point[i]);
        os << "\n";
    }
    return os.str();
}

struct ParsedCurve {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // first column is s

    double param_span() const {
        return rows.empty() ? 0.0 : rows.back()[0] - rows.front()[0];
    }
};

inline ParsedCurve curve_from_csv(const std::string& text) {
    ParsedCurve out;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("curve_from_csv: empty input");
    std::istringstream hs(line);
    std::string tok;
    while (std::getline(hs, tok, ',')) out.columns.push_back(tok);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        while (std::getline(ls, tok, ',')) row.push_back(std::stod(tok));
        if (row.size() != out.columns.size())
            throw std::invalid_argument("curve_from_csv: ragged row");
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace heiscone
