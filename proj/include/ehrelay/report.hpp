#ifndef EHRELAY_REPORT_HPP
#define EHRELAY_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ehrelay::report {

// One evaluated point.  Optional fields render as empty CSV cells / JSON
// nulls: rho_fixed is set for TPS only, p_out_analytic only where a closed
// form exists, and the MC block only when a simulation ran.
struct Row {
    std::string scheme;
    double gamma_db = 0.0;
    double eta = 0.0;
    double rate = 0.0;
    int n_relays = 0;
    std::optional<double> rho_fixed;
    std::optional<double> p_out_analytic;
    std::optional<double> p_out_mc;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    std::optional<std::uint64_t> trials;
    std::uint64_t seed = 0;
    std::string method;
};

inline constexpr const char* kCsvHeader =
    "scheme,gamma_db,eta,rate,n_relays,rho_fixed,p_out_analytic,p_out_mc,ci_low,ci_high,"
    "trials,seed,method";

// Shortest representation that parses back to the same double (up to 17
// significant digits).
std::string format_double(double v);

std::string to_csv(const std::vector<Row>& rows);
std::string to_json(const std::vector<Row>& rows);

// Parses to_csv output; throws std::runtime_error on malformed input.
std::vector<Row> parse_csv(const std::string& text);

}  // namespace ehrelay::report

#endif
