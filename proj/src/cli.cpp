// Copyright 2026 The entrolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entrolab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "entrolab/catalog.hpp"
#include "entrolab/classical.hpp"
#include "entrolab/harness.hpp"
#include "entrolab/report_io.hpp"
#include "entrolab/suite.hpp"

namespace entrolab::cli {

using nlohmann::json;

namespace {

struct NamedState {
    std::string name;
    std::map<std::string, std::string> params;
    std::string path;  // file states
};

const std::map<std::string, std::vector<std::string>>& known_names() {
    static const std::map<std::string, std::vector<std::string>> names{
        {"ghz", {"m", "d"}},
        {"key", {"m", "d"}},
        {"flower", {"m", "d"}},
        {"flower-locked", {"m", "d"}},
        {"pdit", {"m", "d", "shield", "seed", "twist"}},
    };
    return names;
}

NamedState parse_named(const std::string& spec, const std::string& flag) {
    NamedState s;
    const auto colon = spec.find(':');
    s.name = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (s.name == "file") {
        if (rest.empty()) throw UsageError(flag, "file: needs a path");
        s.path = rest;
        return s;
    }
    const auto it = known_names().find(s.name);
    if (it == known_names().end()) throw UsageError(flag, fmt::format("unknown state '{}'", s.name));
    std::istringstream in(rest);
    std::string kv;
    while (std::getline(in, kv, ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
            throw UsageError(flag, fmt::format("expected key=value, got '{}'", kv));
        const std::string key = kv.substr(0, eq);
        if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
            throw UsageError(flag, fmt::format("'{}' takes no parameter '{}'", s.name, key));
        s.params[key] = kv.substr(eq + 1);
    }
    return s;
}

long long param_int(const NamedState& s, const std::string& key, long long fallback, const std::string& flag) {
    const auto it = s.params.find(key);
    if (it == s.params.end()) return fallback;
    try {
        std::size_t used = 0;
        const long long v = std::stoll(it->second, &used);
        if (used == it->second.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(flag, fmt::format("{}={} is not an integer", key, it->second));
}

int small_int(const NamedState& s, const std::string& key, int fallback, const std::string& flag) {
    const long long v = param_int(s, key, fallback, flag);
    if (v < 1 || v > 64) throw UsageError(flag, fmt::format("{}={} out of range", key, v));
    return static_cast<int>(v);
}

PditSpec pdit_spec_of(const NamedState& s) {
    const int m = small_int(s, "m", 2, "--state");
    const int d = small_int(s, "d", 2, "--state");
    const int shield = small_int(s, "shield", 2, "--state");
    const auto seed = static_cast<std::uint64_t>(param_int(s, "seed", 0, "--state"));
    const std::string twist = s.params.count("twist") ? s.params.at("twist") : "random";
    if (twist == "random") return random_pdit_spec(m, d, shield, seed);
    if (twist == "none") return untwisted_pdit_spec(m, d, shield, seed);
    throw UsageError("--state", "twist must be random or none");
}

std::string read_file(const std::string& path, const std::string& flag) {
    std::ifstream in(path);
    if (!in) throw UsageError(flag, fmt::format("cannot read '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_text(const std::string& text, const std::string& flag) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw UsageError(flag, std::string("invalid JSON: ") + e.what());
    }
}

std::string parties_partition(int m) {
    std::string out;
    for (int i = 0; i < m; ++i) out += (i ? ":" : "") + party_label(i);
    return out;
}

std::string fmt_num(double x) { return fmt::format("{:.12g}", x); }

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void emit(const json& report, const Table& table, Format format, std::ostream& out) {
    if (format == Format::Json) {
        out << rounded(report).dump(2) << "\n";
        return;
    }
    if (format == Format::Csv) {
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
            out << "\n";
        };
        line(table.header);
        for (const auto& r : table.rows) line(r);
        return;
    }
    std::vector<std::size_t> width(table.header.size(), 0);
    for (std::size_t i = 0; i < width.size(); ++i) width[i] = table.header[i].size();
    for (const auto& r : table.rows)
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            s += cells[i];
            if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
        }
        out << s << "\n";
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
}

int finish(const json& report, const Table& table, Format format, std::ostream& out, std::ostream& err,
           bool violation = false) {
    emit(report, table, format, out);
    if (has_non_finite(report)) {
        err << "error: non-finite value in report\n";
        return kExitNumeric;
    }
    return violation ? kExitViolation : kExitOk;
}

Partition partition_of(const Command& cmd) {
    const std::string text = cmd.partition.empty() ? default_partition(cmd.state) : cmd.partition;
    try {
        return Partition::parse(text);
    } catch (const Error& e) {
        throw UsageError("--partition", e.what());
    }
}

// Catalog values for named states, keyed by (search, which).
std::optional<double> known_value(const Command& cmd, const std::string& search) {
    if (!cmd.partition.empty() && cmd.partition != default_partition(cmd.state)) return std::nullopt;
    const auto s = parse_named(cmd.state, "--state");
    if (s.name == "key") return 0.0;
    if (s.name != "flower") return std::nullopt;
    const int m = small_int(s, "m", 3, "--state");
    const double ld = std::log2(static_cast<double>(small_int(s, "d", 2, "--state")));
    if (cmd.which == Which::S) return m + ld;
    return search == "c" ? m + 0.5 * m * ld : m + ld;
}

int run_compute(const Command& cmd, std::ostream& out, std::ostream& err) {
    const auto rho = resolve_state(cmd.state);
    const auto part = partition_of(cmd);
    const double v = cond_multi_info(rho, part, cmd.which);
    const json report{{"verb", "compute"},
                      {"state", cmd.state},
                      {"partition", part.to_string()},
                      {"which", std::string(to_string(cmd.which))},
                      {"value", v}};
    return finish(report, {{"state", "partition", "which", "value"}, {{cmd.state, part.to_string(), std::string(to_string(cmd.which)), fmt_num(v)}}},
                  cmd.format, out, err);
}

int run_squash(const Command& cmd, std::ostream& out, std::ostream& err) {
    const auto rho = resolve_state(cmd.state);
    const auto part = partition_of(cmd);
    OptimizerConfig cfg = cmd.cfg;
    cfg.seed = cmd.seed;
    const std::string mode = cmd.mode.empty() ? "q" : cmd.mode;
    BoundReport rep;
    if (mode == "c")
        rep = c_squashed_upper(rho, part, cmd.which, cfg);
    else if (mode == "q")
        rep = q_squashed_upper(rho, part, cmd.which, cfg);
    else
        rep = bipartite_squashed_upper(rho, part, cfg);
    if (mode != "bipartite")
        if (const auto known = known_value(cmd, mode)) rep = certify_against(std::move(rep), *known);
    const json report{{"verb", "squash"},       {"state", cmd.state}, {"partition", part.to_string()},
                      {"mode", mode},           {"report", to_json(rep)}};
    const std::string cert(to_string(rep.certified));
    return finish(report,
                  {{"state", "partition", "mode", "which", "value", "certified", "evals"},
                   {{cmd.state, part.to_string(), mode, std::string(to_string(rep.which)), fmt_num(rep.value), cert,
                     std::to_string(rep.evals)}}},
                  cmd.format, out, err);
}

json probe_summary(const ProbeReport& r) {
    json j{{"check", r.check},
           {"function", r.function},
           {"records", r.records.size()},
           {"tol", r.tol},
           {"max_violation", r.max_violation},
           {"pass", r.pass}};
    if (r.max_ratio) j["max_ratio"] = *r.max_ratio;
    return j;
}

int run_suite(const Command& cmd, std::ostream& out, std::ostream& err) {
    SuiteOptions opt;
    opt.samples = cmd.samples;
    opt.seed = cmd.seed;
    const SuiteResult res = run_standard_suite(opt);

    std::map<std::string, std::pair<std::size_t, double>> by_name;
    for (const auto& r : res.identities.records) {
        auto& [count, worst] = by_name[r.name];
        ++count;
        worst = std::max(worst, r.inequality ? std::max(0.0, -r.residual) : std::abs(r.residual));
    }
    json identities = json::array();
    Table table{{"group", "check", "records", "max_violation", "tol", "status"}, {}};
    for (const auto& [name, cw] : by_name) {
        const bool ok = cw.second <= res.identities.tol;
        identities.push_back({{"name", name}, {"records", cw.first}, {"max_violation", cw.second}, {"pass", ok}});
        table.rows.push_back({"identity", name, std::to_string(cw.first), fmt_num(cw.second), fmt_num(res.identities.tol),
                              ok ? "pass" : "FAIL"});
    }
    json checks = json::array();
    for (const auto* group : {&res.additivity, &res.monotone, &res.axioms}) {
        for (const auto& r : *group) {
            checks.push_back(probe_summary(r));
            table.rows.push_back({r.check, r.function, std::to_string(r.records.size()), fmt_num(r.max_violation),
                                  fmt_num(r.tol), r.pass ? "pass" : "FAIL"});
        }
    }
    json controls = json::array();
    for (const auto& r : res.controls) {
        json c = probe_summary(r);
        c["expected_to_fail"] = true;
        controls.push_back(c);
        table.rows.push_back({"control:" + r.check, r.function, std::to_string(r.records.size()),
                              fmt_num(r.max_violation), fmt_num(r.tol), r.pass ? "NOT FIRED" : "fired"});
    }
    const json report{{"verb", "suite"}, {"samples", cmd.samples},  {"seed", cmd.seed},        {"pass", res.pass},
                      {"identities", identities}, {"checks", checks}, {"negative_controls", controls}};
    if (!res.pass) err << "suite: violation beyond tolerance\n";
    return finish(report, table, cmd.format, out, err, !res.pass);
}

int run_flower(const Command& cmd, std::ostream& out, std::ostream& err) {
    const FlowerBundle f = flower(cmd.m, cmd.d);
    const auto part = Partition::parse(flower_partition(cmd.m));
    const double m = cmd.m, ld = std::log2(static_cast<double>(cmd.d));
    struct Row {
        std::string which, extension;
        double value, expected;
    };
    std::vector<Row> rows;
    rows.push_back({"I", "purifier",
                    cmi_at_extension(f.reduced, part, QuantumExtension::explicit_state(f.purification, "X"), Which::I),
                    m + ld});
    rows.push_back({"S", "trivial", cmi_at_extension(f.reduced, part, ClassicalExtension{{1.0}, {f.reduced}}, Which::S),
                    m + ld});
    rows.push_back({"I", "measured-X", cmi_at_extension(f.reduced, part, flower_measured_extension(f), Which::I),
                    m + 0.5 * m * ld});
    rows.push_back({"I", "locked-product", lockability_demo(cmd.m, cmd.d).locked_value, 0.0});
    if (cmd.optimize) {
        OptimizerConfig cfg = cmd.cfg;
        cfg.seed = cmd.seed;
        rows.push_back({"I", "c-optimized", c_squashed_upper(f.reduced, part, Which::I, cfg).value, m + 0.5 * m * ld});
        rows.push_back({"I", "q-optimized", q_squashed_upper(f.reduced, part, Which::I, cfg).value, m + ld});
    }
    json jrows = json::array();
    Table table{{"m", "d", "which", "extension", "value", "paper_value", "delta"}, {}};
    for (const auto& r : rows) {
        jrows.push_back({{"m", cmd.m},
                         {"d", cmd.d},
                         {"which", r.which},
                         {"extension", r.extension},
                         {"value", r.value},
                         {"paper_value", r.expected},
                         {"delta", r.value - r.expected}});
        table.rows.push_back({std::to_string(cmd.m), std::to_string(cmd.d), r.which, r.extension, fmt_num(r.value),
                              fmt_num(r.expected), fmt_num(r.value - r.expected)});
    }
    const json report{{"verb", "flower"}, {"m", cmd.m}, {"d", cmd.d}, {"partition", part.to_string()}, {"rows", jrows}};
    return finish(report, table, cmd.format, out, err);
}

int run_keybound(const Command& cmd, std::ostream& out, std::ostream& err) {
    const auto rho = resolve_state(cmd.state);
    const auto part = partition_of(cmd);
    LabelSet keys;
    if (cmd.keys.empty()) {
        for (const auto& p : part.parties) keys.push_back(p.front());
    } else {
        std::istringstream in(cmd.keys);
        std::string k;
        while (std::getline(in, k, ',')) keys.push_back(k);
    }
    const double rate = dw_rate(rho, part, keys);
    json report{{"verb", "keybound"}, {"state", cmd.state}, {"partition", part.to_string()}, {"keys", keys}, {"dw_rate", rate}};
    Table table{{"quantity", "value", "status"}, {{"dw_rate", fmt_num(rate), ""}}};
    bool violation = false;
    const auto named = parse_named(cmd.state, "--state");
    if (named.name == "pdit") {
        const PditSpec spec = pdit_spec_of(named);
        const auto exts = random_channel_extensions(rho, cmd.extensions, 4, 2, cmd.seed);
        const ProbeReport check = pdit_normalization_check(spec, exts, 1e-7);
        double lowest = std::numeric_limits<double>::infinity();
        for (const auto& r : check.records) lowest = std::min(lowest, r.lhs);
        report["normalization"] = to_json(check);
        report["normalization_floor"] = spec.m * std::log2(static_cast<double>(spec.d));
        table.rows.push_back({"pdit-min-extension-value", fmt_num(lowest), check.pass ? "pass" : "FAIL"});
        violation = !check.pass;
    }
    return finish(report, table, cmd.format, out, err, violation);
}

JointDistribution resolve_distribution(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (name == "file") {
        const std::string text = read_file(rest, "--dist");
        if (rest.size() >= 5 && rest.substr(rest.size() - 5) == ".json")
            return distribution_from_json(parse_json_text(text, "--dist"));
        return parse_distribution_csv(text);
    }
    if (name != "key") throw UsageError("--dist", fmt::format("unknown distribution '{}'", name));
    int m = 3, d = 2;
    EveMode mode = EveMode::Independent;
    std::istringstream in(rest);
    std::string kv;
    while (std::getline(in, kv, ',')) {
        const auto eq = kv.find('=');
        const std::string key = kv.substr(0, eq), value = eq == std::string::npos ? "" : kv.substr(eq + 1);
        try {
            if (key == "m")
                m = std::stoi(value);
            else if (key == "d")
                d = std::stoi(value);
            else if (key == "eve")
                mode = parse_eve_mode(value);
            else
                throw UsageError("--dist", fmt::format("unknown parameter '{}'", key));
        } catch (const std::logic_error&) {
            throw UsageError("--dist", fmt::format("bad value in '{}'", kv));
        } catch (const Error& e) {
            throw UsageError("--dist", e.what());
        }
    }
    return ideal_key_dist(m, d, mode);
}

int run_intrinsic(const Command& cmd, std::ostream& out, std::ostream& err) {
    const auto p = resolve_distribution(cmd.dist);
    OptimizerConfig cfg = cmd.cfg;
    cfg.seed = cmd.seed;
    const std::string mode = cmd.mode.empty() ? "both" : cmd.mode;
    json report{{"verb", "intrinsic"}, {"dist", cmd.dist}, {"eve", cmd.eve}};
    Table table{{"quantity", "value", "certified"}, {}};
    if (mode == "intrinsic" || mode == "both") {
        const auto r = intrinsic_info(p, cmd.eve, cfg);
        report["intrinsic"] = to_json(r);
        table.rows.push_back({"intrinsic", fmt_num(r.value), std::string(to_string(r.certified))});
    }
    if (mode == "sarrow" || mode == "both") {
        const auto r = s_arrow(p, cmd.eve, cfg);
        report["s_arrow"] = to_json(r);
        table.rows.push_back({"s_arrow", fmt_num(r.value), std::string(to_string(r.certified))});
    }
    return finish(report, table, cmd.format, out, err);
}

int run_demo_lock(const Command& cmd, std::ostream& out, std::ostream& err) {
    const LockRecord r = lockability_demo(cmd.m, cmd.d);
    json report = to_json(r);
    report["verb"] = "demo-lock";
    report["gap"] = r.full_value_I - r.locked_value;
    return finish(report,
                  {{"m", "d", "full_value_I", "full_value_S", "locked_value", "gap"},
                   {{std::to_string(r.m), std::to_string(r.d), fmt_num(r.full_value_I), fmt_num(r.full_value_S),
                     fmt_num(r.locked_value), fmt_num(r.full_value_I - r.locked_value)}}},
                  cmd.format, out, err);
}

}  // namespace

DensityMatrix resolve_state(const std::string& spec) {
    const NamedState s = parse_named(spec, "--state");
    if (s.name == "file") return density_from_json(parse_json_text(read_file(s.path, "--state"), "--state"));
    if (s.name == "pdit") return pdit(pdit_spec_of(s));
    const int m = small_int(s, "m", 3, "--state");
    const int d = small_int(s, "d", 2, "--state");
    if (s.name == "ghz") return ghz(m, d).density();
    if (s.name == "key") return ideal_key_state(m, d);
    if (s.name == "flower") return flower(m, d).reduced;
    return flower_locked_state(flower(m, d));
}

std::string default_partition(const std::string& spec) {
    const NamedState s = parse_named(spec, "--state");
    if (s.name == "file") throw UsageError("--partition", "required for file states");
    const int m = small_int(s, "m", s.name == "pdit" ? 2 : 3, "--state");
    if (s.name == "ghz" || s.name == "key") return parties_partition(m);
    if (s.name == "flower-locked") {
        auto text = flower_partition(m);
        return party_label(0) + text.substr(text.find(':'));
    }
    return flower_partition(m);
}

Command parse_args(const std::vector<std::string>& args) {
    CLI::App app{"entrolab: multipartite entropic quantities and squashed-entanglement bounds", "entrolab"};
    app.require_subcommand(1);
    Command cmd;

    if (const char* env = std::getenv("ENTROLAB_SEED"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            cmd.seed = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument("seed");
        } catch (const std::logic_error&) {
            throw UsageError("ENTROLAB_SEED", fmt::format("'{}' is not an unsigned integer", env));
        }
    }

    std::string which = "I", format = "json";
    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
        sub->add_option("--seed", cmd.seed, "base seed (default: ENTROLAB_SEED or 0)");
    };
    auto budget = [&](CLI::App* sub) {
        sub->add_option("--restarts", cmd.cfg.restarts)->check(CLI::PositiveNumber);
        sub->add_option("--max-iters", cmd.cfg.max_iters)->check(CLI::PositiveNumber);
        sub->add_option("--rel-tol", cmd.cfg.rel_tol)->check(CLI::PositiveNumber);
        sub->add_option("--window", cmd.cfg.window)->check(CLI::PositiveNumber);
        sub->add_option("--ensemble-size", cmd.cfg.ensemble_size)->check(CLI::PositiveNumber);
        sub->add_option("--extension-dim", cmd.cfg.extension_dim)->check(CLI::PositiveNumber);
        sub->add_option("--extension-env", cmd.cfg.extension_env)->check(CLI::PositiveNumber);
        sub->add_option("--eve-alphabet", cmd.cfg.eve_alphabet)->check(CLI::PositiveNumber);
    };
    auto state_opts = [&](CLI::App* sub) {
        sub->add_option("--state", cmd.state, "named state (ghz:m=3,d=2, key:..., flower:..., pdit:...) or file:path")
            ->required();
        sub->add_option("--partition", cmd.partition, "parties split by ':', labels by ',', conditioner after '|'");
    };
    auto which_opt = [&](CLI::App* sub) {
        sub->add_option("--which", which, "I or S")->check(CLI::IsMember({"I", "S"}));
    };

    auto* compute = app.add_subcommand("compute", "conditional multipartite mutual information of a state");
    state_opts(compute);
    which_opt(compute);
    common(compute);

    auto* squash = app.add_subcommand("squash", "upper bounds on squashed entanglement");
    state_opts(squash);
    which_opt(squash);
    squash->add_option("--mode", cmd.mode, "c, q or bipartite")->check(CLI::IsMember({"c", "q", "bipartite"}));
    budget(squash);
    common(squash);

    auto* suite = app.add_subcommand("suite", "identity, additivity and monotonicity checks on random states");
    suite->add_option("--samples", cmd.samples)->check(CLI::PositiveNumber);
    common(suite);

    auto* flower_cmd = app.add_subcommand("flower", "flower-state values at the known extensions");
    flower_cmd->add_option("--m", cmd.m)->check(CLI::Range(2, 8));
    flower_cmd->add_option("--d", cmd.d)->check(CLI::Range(2, 16));
    bool table = false;
    flower_cmd->add_flag("--table", table, "same as --format table");
    flower_cmd->add_flag("--optimize", cmd.optimize, "add rows from the c and q optimizers");
    budget(flower_cmd);
    common(flower_cmd);

    auto* keybound = app.add_subcommand("keybound", "Devetak-Winter rate and pdit normalization");
    state_opts(keybound);
    keybound->add_option("--keys", cmd.keys, "key label of each party, comma separated");
    keybound->add_option("--extensions", cmd.extensions, "random extensions for pdit states")->check(CLI::PositiveNumber);
    common(keybound);

    auto* intrinsic = app.add_subcommand("intrinsic", "classical intrinsic information and S-arrow");
    intrinsic->add_option("--dist", cmd.dist, "key:m=3,d=2,eve=independent or file:path (CSV or .json)")->required();
    intrinsic->add_option("--eve", cmd.eve, "Eve's variable");
    intrinsic->add_option("--mode", cmd.mode, "intrinsic, sarrow or both")
        ->check(CLI::IsMember({"intrinsic", "sarrow", "both"}));
    budget(intrinsic);
    common(intrinsic);

    auto* lock = app.add_subcommand("demo-lock", "flower value before and after losing one qubit");
    lock->add_option("--m", cmd.m)->check(CLI::Range(2, 8));
    lock->add_option("--d", cmd.d)->check(CLI::Range(2, 16));
    common(lock);

    std::vector<std::string> argv_store{"entrolab"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        CLI::App* target = &app;
        for (auto* sub : app.get_subcommands()) target = sub;
        throw HelpRequested(target->help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw UsageError("", e.what());
    }

    if (compute->parsed()) cmd.verb = Verb::Compute;
    if (squash->parsed()) cmd.verb = Verb::Squash;
    if (suite->parsed()) cmd.verb = Verb::Suite;
    if (flower_cmd->parsed()) cmd.verb = Verb::Flower;
    if (keybound->parsed()) cmd.verb = Verb::Keybound;
    if (intrinsic->parsed()) cmd.verb = Verb::Intrinsic;
    if (lock->parsed()) cmd.verb = Verb::DemoLock;

    cmd.which = which == "S" ? Which::S : Which::I;
    cmd.format = format == "csv" ? Format::Csv : format == "table" ? Format::Table : Format::Json;
    if (table) cmd.format = Format::Table;

    if (!cmd.state.empty()) {
        parse_named(cmd.state, "--state");
        if (cmd.partition.empty()) default_partition(cmd.state);
    }
    if (!cmd.partition.empty()) {
        try {
            Partition::parse(cmd.partition);
        } catch (const Error& e) {
            throw UsageError("--partition", e.what());
        }
    }
    if (cmd.verb == Verb::Squash && cmd.mode == "bipartite" && !cmd.partition.empty() &&
        Partition::parse(cmd.partition).size() != 2)
        throw UsageError("--partition", "bipartite mode needs exactly two parties");
    return cmd;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
    switch (cmd.verb) {
        case Verb::Compute: return run_compute(cmd, out, err);
        case Verb::Squash: return run_squash(cmd, out, err);
        case Verb::Suite: return run_suite(cmd, out, err);
        case Verb::Flower: return run_flower(cmd, out, err);
        case Verb::Keybound: return run_keybound(cmd, out, err);
        case Verb::Intrinsic: return run_intrinsic(cmd, out, err);
        case Verb::DemoLock: return run_demo_lock(cmd, out, err);
    }
    return kExitUsage;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run(parse_args(args), out, err);
    } catch (const HelpRequested& h) {
        out << h.what();
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace entrolab::cli
