#include "ehrelay/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ehrelay::report {

std::string format_double(double v) {
    char buf[40];
    // Shortest round-trip form: widen precision until strtod returns v.
    for (int prec = 12; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::optional<double> parse_opt(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::strtod(s.c_str(), nullptr);
}

}  // namespace

std::string to_csv(const std::vector<Row>& rows) {
    std::string out = kCsvHeader;
    out.push_back('\n');
    for (const Row& r : rows) {
        out += r.scheme;
        out += ',' + format_double(r.gamma_db);
        out += ',' + format_double(r.eta);
        out += ',' + format_double(r.rate);
        out += ',' + std::to_string(r.n_relays);
        out += ',' + cell(r.rho_fixed);
        out += ',' + cell(r.p_out_analytic);
        out += ',' + cell(r.p_out_mc);
        out += ',' + cell(r.ci_low);
        out += ',' + cell(r.ci_high);
        out += ',' + (r.trials ? std::to_string(*r.trials) : std::string());
        out += ',' + std::to_string(r.seed);
        out += ',' + r.method;
        out.push_back('\n');
    }
    return out;
}

std::string to_json(const std::vector<Row>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Row& r : rows) {
        nlohmann::json rec;
        rec["scheme"] = r.scheme;
        rec["gamma_db"] = r.gamma_db;
        rec["eta"] = r.eta;
        rec["rate"] = r.rate;
        rec["n_relays"] = r.n_relays;
        auto opt = [&rec](const char* key, const std::optional<double>& v) {
            if (v)
                rec[key] = *v;
            else
                rec[key] = nullptr;
        };
        opt("rho_fixed", r.rho_fixed);
        opt("p_out_analytic", r.p_out_analytic);
        opt("p_out_mc", r.p_out_mc);
        opt("ci_low", r.ci_low);
        opt("ci_high", r.ci_high);
        if (r.trials)
            rec["trials"] = *r.trials;
        else
            rec["trials"] = nullptr;
        rec["seed"] = r.seed;
        rec["method"] = r.method;
        arr.push_back(std::move(rec));
    }
    return arr.dump(2) + "\n";
}

std::vector<Row> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("parse_csv: missing or unexpected header");
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_line(line);
        if (f.size() != 13) throw std::runtime_error("parse_csv: expected 13 fields");
        Row r;
        r.scheme = f[0];
        r.gamma_db = std::strtod(f[1].c_str(), nullptr);
        r.eta = std::strtod(f[2].c_str(), nullptr);
        r.rate = std::strtod(f[3].c_str(), nullptr);
        r.n_relays = std::atoi(f[4].c_str());
        r.rho_fixed = parse_opt(f[5]);
        r.p_out_analytic = parse_opt(f[6]);
        r.p_out_mc = parse_opt(f[7]);
        r.ci_low = parse_opt(f[8]);
        r.ci_high = parse_opt(f[9]);
        if (!f[10].empty()) r.trials = std::strtoull(f[10].c_str(), nullptr, 10);
        r.seed = std::strtoull(f[11].c_str(), nullptr, 10);
        r.method = f[12];
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace ehrelay::report
