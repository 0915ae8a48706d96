// Command-line front end: analytic evaluation, Monte-Carlo simulation,
// parameter sweeps, figure campaigns, and the validation battery.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ehrelay/analytic.hpp"
#include "ehrelay/figures.hpp"
#include "ehrelay/mc.hpp"
#include "ehrelay/model.hpp"
#include "ehrelay/report.hpp"
#include "ehrelay/rng.hpp"
#include "ehrelay/validate.hpp"

namespace {

using namespace ehrelay;

struct Settings {
    std::string schemes = "ops";
    double gamma_db = 15.0;
    double eta = 0.5;
    double rate = 1.0;
    int relays = 6;
    double rho = 0.5;
    double battery_db = 30.0;
    std::uint64_t trials = 1'000'000;
    std::uint64_t warmup = 1'000;
    int chains = 8;
    std::uint64_t seed = 1;
    std::string output = "-";
    std::string format = "csv";
    std::string mode = "both";
    std::string config_path;
    bool quick = false;
};

struct OptionHandles {
    std::map<std::string, CLI::Option*> by_key;
};

// Registers the shared flags on a subcommand and records the handles so
// config-file values can fill in anything the command line left untouched.
OptionHandles add_common_options(CLI::App* cmd, Settings& s) {
    OptionHandles h;
    h.by_key["scheme"] = cmd->add_option("--scheme", s.schemes,
                                         "comma-separated schemes: eps,tps,ops,ehb_df,ehb_af");
    h.by_key["gamma_db"] = cmd->add_option("--gamma-db", s.gamma_db, "source SNR in dB");
    h.by_key["eta"] = cmd->add_option("--eta", s.eta, "energy conversion efficiency in (0,1]");
    h.by_key["rate"] = cmd->add_option("--rate", s.rate, "target rate R in bit/s/Hz");
    h.by_key["relays"] = cmd->add_option("--relays", s.relays, "number of relays N");
    h.by_key["rho"] = cmd->add_option("--rho", s.rho, "fixed power-splitting ratio for tps");
    h.by_key["battery_db"] =
        cmd->add_option("--battery-db", s.battery_db, "battery cap SNR in dB");
    h.by_key["trials"] = cmd->add_option("--trials", s.trials, "Monte-Carlo slots per point");
    h.by_key["warmup"] =
        cmd->add_option("--warmup", s.warmup, "discarded leading slots (battery schemes)");
    h.by_key["chains"] =
        cmd->add_option("--chains", s.chains, "independent trajectories (battery schemes)");
    h.by_key["seed"] = cmd->add_option("--seed", s.seed, "base RNG seed");
    h.by_key["output"] = cmd->add_option("--output", s.output, "output path ('-' for stdout)");
    h.by_key["format"] = cmd->add_option("--format", s.format, "csv or json");
    h.by_key["mode"] = cmd->add_option("--mode", s.mode, "analytic, simulate, or both");
    cmd->add_option("--config", s.config_path, "key=value config file (flags take precedence)");
    return h;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string t) {
            const auto a = t.find_first_not_of(" \t\r");
            const auto b = t.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : t.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

// Config file fills anything the command line did not set explicitly.
void apply_config(Settings& s, const OptionHandles& h) {
    std::string path = s.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("EHRELAY_CONFIG")) path = env;
    }
    if (path.empty()) return;
    const auto kv = read_config_file(path);
    auto want = [&](const char* key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        const auto opt = h.by_key.find(key);
        if (opt != h.by_key.end() && opt->second->count() > 0) return std::nullopt;
        return it->second;
    };
    if (auto v = want("scheme")) s.schemes = *v;
    if (auto v = want("gamma_db")) s.gamma_db = std::stod(*v);
    if (auto v = want("eta")) s.eta = std::stod(*v);
    if (auto v = want("rate")) s.rate = std::stod(*v);
    if (auto v = want("relays")) s.relays = std::stoi(*v);
    if (auto v = want("rho")) s.rho = std::stod(*v);
    if (auto v = want("battery_db")) s.battery_db = std::stod(*v);
    if (auto v = want("trials")) s.trials = std::stoull(*v);
    if (auto v = want("warmup")) s.warmup = std::stoull(*v);
    if (auto v = want("chains")) s.chains = std::stoi(*v);
    if (auto v = want("seed")) s.seed = std::stoull(*v);
    if (auto v = want("output")) s.output = *v;
    if (auto v = want("format")) s.format = *v;
    if (auto v = want("mode")) s.mode = *v;
}

std::vector<schemes::SchemeKind> parse_schemes(const Settings& s) {
    std::vector<schemes::SchemeKind> kinds;
    std::stringstream ss(s.schemes);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto kind = schemes::SchemeKind::parse(item, s.rho);
        if (!kind) throw std::runtime_error("unknown scheme: '" + item + "'");
        kinds.push_back(*kind);
    }
    if (kinds.empty()) throw std::runtime_error("no scheme given");
    return kinds;
}

model::SystemParams params_from(const Settings& s) {
    auto p = model::SystemParams::symmetric(model::db_to_linear(s.gamma_db), s.eta, s.rate,
                                            s.relays, 1.0, model::db_to_linear(s.battery_db));
    p.validate();
    return p;
}

mc::TrialConfig trial_config_from(const Settings& s) {
    mc::TrialConfig cfg;
    cfg.trials = s.trials;
    cfg.warmup = s.warmup;
    cfg.chains = s.chains;
    cfg.seed = s.seed;
    cfg.validate();
    return cfg;
}

figures::RunMode mode_from(const Settings& s) {
    if (s.mode == "analytic") return figures::RunMode::analytic;
    if (s.mode == "simulate") return figures::RunMode::simulate;
    if (s.mode == "both") return figures::RunMode::both;
    throw std::runtime_error("unknown mode: '" + s.mode + "' (use analytic, simulate, or both)");
}

mc::SweepAxis parse_axis(std::string name) {
    for (char& c : name) c = c == '-' ? '_' : static_cast<char>(std::tolower(c));
    if (name == "gamma_db") return mc::SweepAxis::gamma_db;
    if (name == "eta") return mc::SweepAxis::eta;
    if (name == "rate") return mc::SweepAxis::rate;
    if (name == "relays" || name == "n_relays") return mc::SweepAxis::n_relays;
    if (name == "rho" || name == "rho_fixed") return mc::SweepAxis::rho_fixed;
    throw std::runtime_error("unknown sweep axis: '" + name + "'");
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> values;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw std::runtime_error("bad sweep value: '" + item + "'");
        values.push_back(v);
    }
    if (values.empty()) throw std::runtime_error("no sweep values given");
    return values;
}

void write_output(const Settings& s, const std::vector<report::Row>& rows) {
    const std::string text =
        s.format == "json" ? report::to_json(rows) : report::to_csv(rows);
    if (s.format != "json" && s.format != "csv")
        throw std::runtime_error("unknown format: '" + s.format + "' (use csv or json)");
    if (s.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(s.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output path: " + s.output);
    out << text;
    if (!out.good()) throw std::runtime_error("short write to output path: " + s.output);
}

int run_point_command(const Settings& s, figures::RunMode mode) {
    const auto kinds = parse_schemes(s);
    const auto params = params_from(s);
    const auto cfg = trial_config_from(s);
    if (mode == figures::RunMode::analytic)
        for (const auto& k : kinds)
            if (k.battery_backed())
                throw std::runtime_error("scheme '" + k.name() +
                                         "' has no closed-form outage; use simulate");
    std::vector<report::Row> rows;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        mc::TrialConfig row_cfg = cfg;
        row_cfg.seed = mix_seed(cfg.seed, i);
        rows.push_back(figures::evaluate_point(kinds[i], params, mode, row_cfg));
    }
    write_output(s, rows);
    return 0;
}

int run_sweep_command(const Settings& s, const std::string& axis_name,
                      const std::string& value_list) {
    const auto kinds = parse_schemes(s);
    const auto base_params = params_from(s);
    const auto cfg = trial_config_from(s);
    const auto mode = mode_from(s);
    const auto axis = parse_axis(axis_name);
    const auto values = parse_values(value_list);
    for (const auto& k : kinds) {
        mc::validate_axis_values(k, axis, values);
        if (mode == figures::RunMode::analytic && k.battery_backed())
            throw std::runtime_error("scheme '" + k.name() +
                                     "' has no closed-form outage; use simulate");
    }

    std::vector<report::Row> rows;
    std::uint64_t row_index = 0;
    for (const auto& kind : kinds) {
        for (double v : values) {
            schemes::SchemeKind k = kind;
            model::SystemParams p = base_params;
            mc::apply_axis(k, p, axis, v);
            mc::TrialConfig row_cfg = cfg;
            row_cfg.seed = mix_seed(cfg.seed, row_index++);
            rows.push_back(figures::evaluate_point(k, p, mode, row_cfg));
        }
    }
    write_output(s, rows);
    return 0;
}

int run_figure_command(const Settings& s, int number) {
    const auto cfg = trial_config_from(s);
    write_output(s, figures::figure(number, mode_from(s), cfg));
    return 0;
}

int run_validate_command(const Settings& s) {
    validate::Options opts;
    opts.quick = s.quick;
    const auto results = validate::run_all(opts);
    std::cout << validate::report_header(opts) << "\n";
    for (const auto& r : results)
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << ": "
                  << r.detail << "\n";
    return validate::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-harvesting relay selection: outage analysis and simulation"};
    app.require_subcommand(1);

    Settings s;
    auto* cmd_analytic =
        app.add_subcommand("analytic", "closed-form outage at a single operating point");
    auto h_analytic = add_common_options(cmd_analytic, s);
    auto* cmd_simulate =
        app.add_subcommand("simulate", "Monte-Carlo outage at a single operating point");
    auto h_simulate = add_common_options(cmd_simulate, s);

    auto* cmd_sweep = app.add_subcommand("sweep", "outage along one parameter axis");
    auto h_sweep = add_common_options(cmd_sweep, s);
    std::string axis_name = "gamma_db";
    std::string value_list;
    cmd_sweep->add_option("--axis", axis_name, "gamma_db, eta, rate, relays, or rho");
    cmd_sweep->add_option("--values", value_list, "comma-separated axis values")->required();

    auto* cmd_figure = app.add_subcommand("figure", "reproduce one of the figure campaigns");
    auto h_figure = add_common_options(cmd_figure, s);
    int figure_number = 5;
    cmd_figure->add_option("number", figure_number, "figure number, 3..10")->required();

    auto* cmd_validate = app.add_subcommand("validate", "run the acceptance check battery");
    cmd_validate->add_flag("--quick", s.quick, "reduced trial counts, faster and less strict");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_analytic->parsed()) {
            apply_config(s, h_analytic);
            return run_point_command(s, figures::RunMode::analytic);
        }
        if (cmd_simulate->parsed()) {
            apply_config(s, h_simulate);
            return run_point_command(s, figures::RunMode::simulate);
        }
        if (cmd_sweep->parsed()) {
            apply_config(s, h_sweep);
            return run_sweep_command(s, axis_name, value_list);
        }
        if (cmd_figure->parsed()) {
            apply_config(s, h_figure);
            return run_figure_command(s, figure_number);
        }
        if (cmd_validate->parsed()) {
            return run_validate_command(s);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
