// edgelab command-line driver.
//
// Every run resolves one effective configuration (defaults, then --config, then flags),
// writes <out>/<command>.{csv,json} and a <out>/<command>.manifest.json side file.
// Exit codes: 0 ok, 1 configuration error, 2 unclassifiable trend, 3 not certified.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "edgelab/algebraic.hpp"
#include "edgelab/calderon.hpp"
#include "edgelab/errors.hpp"
#include "edgelab/fredholm.hpp"
#include "edgelab/mesh.hpp"
#include "edgelab/report.hpp"
#include "edgelab/wspace.hpp"

namespace fs = std::filesystem;
using namespace edgelab;

namespace {

enum Exit { kOk = 0, kConfig = 1, kUnclassifiable = 2, kNotCertified = 3 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Record defaults() {
    return Record::parse(R"({
      "mesh": {"r_max": 20, "n_points": 128, "grading_exponent": 2, "levels": 4},
      "edge": {"gamma": 1.0, "gamma_sweep": {"from": 0.25, "to": 1.75, "steps": 7},
               "xi_norm": 1, "sigma0": 1},
      "borders": {"mode": "boundary_row", "phi": "default"},
      "space": {"s": 0, "gamma": 0.4, "dual": false},
      "dtn": {"profile": null, "profiles": [], "modes": 8, "n_steps": 4096},
      "algebra": {"dim_j": 3, "dim_o": 3, "trials": 100, "seed": 0},
      "output": {"directory": ".", "formats": "both"}
    })");
}

// Reject keys the defaults do not know, so a typo never silently falls back.
void check_known(const Record& given, const Record& known, const std::string& prefix) {
    for (const auto& [k, v] : given.items()) {
        const std::string path = prefix.empty() ? k : prefix + "." + k;
        if (!known.contains(k)) throw ConfigError("unknown field " + path);
        if (known[k].is_object()) {
            if (!v.is_object()) throw ConfigError(path + ": expected an object");
            check_known(v, known[k], path);
        }
    }
}

const Record& at(const Record& cfg, const std::string& sec, const std::string& key) {
    return cfg.at(sec).at(key);
}

double number(const Record& cfg, const std::string& sec, const std::string& key) {
    const Record& v = at(cfg, sec, key);
    if (!v.is_number()) throw ConfigError(sec + "." + key + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(sec + "." + key + ": must be finite");
    return x;
}

long integer(const Record& cfg, const std::string& sec, const std::string& key) {
    const Record& v = at(cfg, sec, key);
    if (!v.is_number_integer()) throw ConfigError(sec + "." + key + ": expected an integer");
    return v.get<long>();
}

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ConfigError(field + ": " + what);
}

struct Run {
    std::string command;  // e.g. "edge classify"
    Record cfg = defaults();
    std::vector<std::pair<std::string, std::string>> digests;
    std::optional<std::int64_t> seed;

    [[nodiscard]] std::string stem() const {
        std::string s = command;
        std::replace(s.begin(), s.end(), ' ', '_');
        std::replace(s.begin(), s.end(), '-', '_');
        return s;
    }
    [[nodiscard]] fs::path out_dir() const { return cfg["output"]["directory"].get<std::string>(); }
    [[nodiscard]] std::string formats() const { return cfg["output"]["formats"].get<std::string>(); }

    void digest(const std::string& path) {
        try {
            digests.emplace_back(path, file_digest(path));
        } catch (const IoError&) {
            throw ConfigError("cannot read " + path);
        }
    }
};

struct Flags {
    std::optional<std::string> config, out, format;
    std::optional<std::int64_t> seed;
    std::optional<double> r_max, grading, gamma, xi, sigma0, from, to;
    std::optional<int> n_points, levels, steps, s, modes, n_steps, dim_j, dim_o, trials;
    std::optional<std::string> mode, phi, profile;
    std::vector<std::string> profiles;
    bool dual = false;
};

void load_config(Run& run, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config: cannot read " + path);
    Record j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError("--config: " + std::string(ex.what()));
    }
    run.digest(path);
    // A manifest carries the effective configuration of an earlier run.
    if (j.is_object() && j.contains("tool_version") && j.contains("config")) j = j["config"];
    if (!j.is_object()) throw ConfigError("--config: expected a JSON object");
    if (j.contains("command")) {
        if (j["command"] != run.command)
            throw ConfigError("command: config was written for '" +
                              j["command"].get<std::string>() + "'");
        j.erase("command");
    }
    check_known(j, run.cfg, "");
    run.cfg.merge_patch(j);
}

void apply_flags(Run& run, const Flags& f) {
    auto set = [&](const char* sec, const char* key, const auto& opt) {
        if (opt) run.cfg[sec][key] = *opt;
    };
    set("output", "directory", f.out);
    set("output", "formats", f.format);
    set("mesh", "r_max", f.r_max);
    set("mesh", "n_points", f.n_points);
    set("mesh", "grading_exponent", f.grading);
    set("mesh", "levels", f.levels);
    set("edge", "xi_norm", f.xi);
    set("edge", "sigma0", f.sigma0);
    set("borders", "mode", f.mode);
    set("borders", "phi", f.phi);
    set("dtn", "modes", f.modes);
    set("dtn", "n_steps", f.n_steps);
    set("dtn", "profile", f.profile);
    set("algebra", "dim_j", f.dim_j);
    set("algebra", "dim_o", f.dim_o);
    set("algebra", "trials", f.trials);
    if (f.from) run.cfg["edge"]["gamma_sweep"]["from"] = *f.from;
    if (f.to) run.cfg["edge"]["gamma_sweep"]["to"] = *f.to;
    if (f.steps) run.cfg["edge"]["gamma_sweep"]["steps"] = *f.steps;
    if (f.gamma) run.cfg[run.command == "space member" ? "space" : "edge"]["gamma"] = *f.gamma;
    if (f.s) run.cfg["space"]["s"] = *f.s;
    if (f.dual) run.cfg["space"]["dual"] = true;
    if (!f.profiles.empty()) run.cfg["dtn"]["profiles"] = f.profiles;
    if (f.seed) run.cfg["algebra"]["seed"] = *f.seed;
}

void validate_common(const Run& run) {
    const Record& fmt = run.cfg["output"]["formats"];
    require(fmt.is_string() && (fmt == "csv" || fmt == "json" || fmt == "both"), "output.formats",
            "must be csv, json or both");
    require(run.cfg["output"]["directory"].is_string(), "output.directory", "expected a path");
}

std::vector<GradedMesh> meshes_from(const Run& run) {
    const double r_max = number(run.cfg, "mesh", "r_max");
    const long n = integer(run.cfg, "mesh", "n_points");
    const double p = number(run.cfg, "mesh", "grading_exponent");
    const long levels = integer(run.cfg, "mesh", "levels");
    require(r_max > 0, "mesh.r_max", "must be positive");
    require(n >= 16 && n <= 1 << 16, "mesh.n_points", "must lie in [16, 65536]");
    require(p >= 1, "mesh.grading_exponent", "must be at least 1");
    require(levels >= 3 && levels <= 12, "mesh.levels", "must lie in [3, 12]");
    return refinement_sequence(build_graded(r_max, static_cast<int>(n), p, 0),
                               static_cast<int>(levels));
}

struct EdgeParams {
    double xi, sigma0;
};

EdgeParams edge_params(const Run& run) {
    const EdgeParams e{number(run.cfg, "edge", "xi_norm"), number(run.cfg, "edge", "sigma0")};
    require(e.xi > 0, "edge.xi_norm", "must be positive");
    require(e.sigma0 > 0, "edge.sigma0", "must be positive");
    return e;
}

void write_outputs(const Run& run, const std::vector<Record>& rows, const Record& json) {
    const fs::path dir = run.out_dir();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("output.directory: " + ec.message());
    const std::string fmt = run.formats();
    try {
        if (fmt != "json") emit_csv(rows, dir / (run.stem() + ".csv"));
        if (fmt != "csv") emit_json(json, dir / (run.stem() + ".json"));
        RunManifest m;
        m.timestamp = utc_timestamp();
        m.config = run.cfg;
        m.config["command"] = run.command;
        m.input_digests = run.digests;
        m.seed = run.seed;
        emit_json(to_json(m), dir / (run.stem() + ".manifest.json"));
    } catch (const IoError& ex) {
        throw ConfigError(std::string("output.directory: ") + ex.what());
    }
}

Record array_of(const std::vector<Record>& rows) {
    Record a = Record::array();
    for (const auto& r : rows) a.push_back(r);
    return a;
}

int report_rows(const Run& run, const std::vector<FredholmReport>& reports) {
    std::vector<Record> rows;
    for (const auto& r : reports) {
        rows.push_back(to_record(r));
        std::printf("gamma=%s %s kernel_dim=%d cokernel_dim=%d\n", short_number(r.gamma).c_str(),
                    to_string(r.case_label).c_str(), r.kernel_dim, r.cokernel_dim);
    }
    write_outputs(run, rows, array_of(rows));
    return kOk;
}

int cmd_classify(Run& run, const std::vector<double>& gammas) {
    const EdgeParams e = edge_params(run);
    const auto meshes = meshes_from(run);
    std::vector<FredholmReport> reports;
    for (double g : gammas)
        reports.push_back(analyze(assemble(g, e.xi, e.sigma0, meshes.front()), meshes));
    return report_rows(run, reports);
}

int edge_classify(Run& run) {
    const double g = number(run.cfg, "edge", "gamma");
    return cmd_classify(run, {g});
}

int edge_sweep(Run& run) {
    const Record& sw = run.cfg["edge"]["gamma_sweep"];
    require(sw.is_object(), "edge.gamma_sweep", "expected an object");
    auto get = [&](const char* k) {
        require(sw.contains(k) && sw[k].is_number(), std::string("edge.gamma_sweep.") + k,
                "expected a number");
        return sw[k].get<double>();
    };
    const double from = get("from"), to = get("to");
    require(sw["steps"].is_number_integer(), "edge.gamma_sweep.steps", "expected an integer");
    const long steps = sw["steps"].get<long>();
    require(steps >= 1 && steps <= 1000, "edge.gamma_sweep.steps", "must lie in [1, 1000]");
    require(std::isfinite(from) && std::isfinite(to), "edge.gamma_sweep", "bounds must be finite");
    require(steps > 1 || from == to, "edge.gamma_sweep.steps", "one step needs from == to");
    std::vector<double> gammas;
    for (long i = 0; i < steps; ++i)
        gammas.push_back(steps == 1 ? from : from + (to - from) * static_cast<double>(i) /
                                                        static_cast<double>(steps - 1));
    return cmd_classify(run, gammas);
}

// Tabulated phi(t): {"t": [...], "values": [...]}, linear in between, zero outside.
std::function<double(double)> load_phi(Run& run, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("borders.phi: cannot read " + path);
    Record j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError("borders.phi: " + std::string(ex.what()));
    }
    run.digest(path);
    std::vector<double> t, v;
    try {
        t = j.at("t").get<std::vector<double>>();
        v = j.at("values").get<std::vector<double>>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("borders.phi: expected {\"t\": [...], \"values\": [...]}");
    }
    require(t.size() >= 2 && t.size() == v.size(), "borders.phi", "t and values must match");
    for (std::size_t i = 0; i < t.size(); ++i) {
        require(std::isfinite(t[i]) && std::isfinite(v[i]), "borders.phi", "non-finite entry");
        require(i == 0 || t[i] > t[i - 1], "borders.phi", "t must be strictly increasing");
    }
    return [t, v](double x) {
        if (x <= t.front() || x >= t.back()) return 0.0;
        const auto k = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), x) - t.begin());
        const double a = (x - t[k - 1]) / (t[k] - t[k - 1]);
        return (1 - a) * v[k - 1] + a * v[k];
    };
}

int edge_augment(Run& run) {
    const EdgeParams e = edge_params(run);
    const double g = number(run.cfg, "edge", "gamma");
    const Record& m = run.cfg["borders"]["mode"];
    require(m.is_string(), "borders.mode", "expected a string");
    BorderMode mode;
    try {
        mode = parse_border_mode(m.get<std::string>());
    } catch (const InvalidArgument&) {
        throw ConfigError("borders.mode: must be boundary_row or coboundary_column");
    }
    const Record& p = run.cfg["borders"]["phi"];
    require(p.is_string(), "borders.phi", "expected \"default\" or a file path");
    std::function<double(double)> rule = bump;
    if (p != "default") rule = load_phi(run, p.get<std::string>());
    const auto meshes = meshes_from(run);

    BorderedOperator b;
    try {
        b = border(assemble(g, e.xi, e.sigma0, meshes.back()), rule, mode);
    } catch (const InvalidArgument& ex) {
        throw ConfigError(std::string("borders.phi: ") + ex.what());
    }
    const Certification c = certify_invertible(b, meshes);
    const Record row = to_record(c);
    std::printf("gamma=%s %s certified=%s\n", short_number(g).c_str(), to_string(mode).c_str(),
                c.certified ? "true" : "false");
    write_outputs(run, {row}, row);
    return c.certified ? kOk : kNotCertified;
}

int space_member(Run& run) {
    const Record& s_rec = at(run.cfg, "space", "s");
    require(s_rec.is_number_integer(), "space.s", "expected an integer");
    const int s = s_rec.get<int>();
    const double g = number(run.cfg, "space", "gamma");
    require(s >= 0 && s <= 2, "space.s", "must be 0, 1 or 2");
    require(at(run.cfg, "space", "dual").is_boolean(), "space.dual", "expected true or false");
    const bool dual = run.cfg["space"]["dual"].get<bool>();
    const auto meshes = meshes_from(run);
    const int ts = dual ? 2 - s : s;
    const double tg = dual ? 2.0 - g : g;
    const MembershipVerdict v =
        membership_test([](double r) { return std::exp(-r); }, ts, tg, meshes);
    Record row = to_record(v, ts, tg);
    row["dual"] = dual;
    std::printf("s=%d gamma=%s %s\n", ts, short_number(tg).c_str(), to_string(v.verdict).c_str());
    write_outputs(run, {row}, row);
    return kOk;
}

RadialMesh radial(const Run& run) {
    const long steps = integer(run.cfg, "dtn", "n_steps");
    require(steps >= 16 && steps <= 1 << 22, "dtn.n_steps", "must lie in [16, 4194304]");
    RadialMesh m;
    m.n_steps = static_cast<int>(steps);
    return m;
}

int dtn_modes(const Run& run) {
    const long n = integer(run.cfg, "dtn", "modes");
    require(n >= 1 && n <= 4096, "dtn.modes", "must lie in [1, 4096]");
    return static_cast<int>(n);
}

ConductivityProfile profile_at(Run& run, const std::string& path, const std::string& field) {
    run.digest(path);
    try {
        return ConductivityProfile::load(path);
    } catch (const Error& ex) {
        throw ConfigError(field + ": " + ex.what());
    }
}

int dtn_spectrum_cmd(Run& run) {
    const Record& p = run.cfg["dtn"]["profile"];
    require(p.is_string(), "dtn.profile", "a profile file is required");
    const int n = dtn_modes(run);
    const RadialMesh mesh = radial(run);
    const ConductivityProfile prof = profile_at(run, p.get<std::string>(), "dtn.profile");
    const DtNSpectrum spec = dtn_spectrum(prof, n, mesh);
    const std::vector<Record> rows = to_records(spec);
    Record j = Record::object();
    j["profile"] = Record::parse(prof.to_json().dump());
    j["sigma_at_boundary"] = prof(1.0);  // the sigma0 an edge symbol would freeze here
    j["modes"] = array_of(rows);
    for (const auto& [k, lam] : spec.modes) std::printf("%d %s\n", k, format_number(lam).c_str());
    write_outputs(run, rows, j);
    return kOk;
}

int dtn_compare_cmd(Run& run) {
    const Record& ps = run.cfg["dtn"]["profiles"];
    require(ps.is_array() && ps.size() == 2 && ps[0].is_string() && ps[1].is_string(),
            "dtn.profiles", "exactly two profile files are required");
    const int n = dtn_modes(run);
    const RadialMesh mesh = radial(run);
    const ConductivityProfile a = profile_at(run, ps[0].get<std::string>(), "dtn.profiles[0]");
    const ConductivityProfile b = profile_at(run, ps[1].get<std::string>(), "dtn.profiles[1]");
    const DtNSpectrum sa = dtn_spectrum(a, n, mesh), sb = dtn_spectrum(b, n, mesh);
    const SpectrumComparison c = compare_spectra(sa, sb);
    Record row = to_record(c);
    Record la = Record::array(), lb = Record::array();
    for (const auto& [k, v] : sa.modes) la.push_back(v);
    for (const auto& [k, v] : sb.modes) lb.push_back(v);
    row["lambda_a"] = la;
    row["lambda_b"] = lb;
    std::printf("max_abs_dev=%s distinguishable=%s\n", format_number(c.max_abs_dev).c_str(),
                c.distinguishable ? "true" : "false");
    write_outputs(run, {row}, row);
    return kOk;
}

int splitting_check(Run& run) {
    const long dj = integer(run.cfg, "algebra", "dim_j");
    const long dobj = integer(run.cfg, "algebra", "dim_o");
    const long trials = integer(run.cfg, "algebra", "trials");
    const long seed = integer(run.cfg, "algebra", "seed");
    require(dj >= 1 && dj <= 256, "algebra.dim_j", "must lie in [1, 256]");
    require(dobj >= 1 && dobj <= 256, "algebra.dim_o", "must lie in [1, 256]");
    require(trials >= 1 && trials <= 100000, "algebra.trials", "must lie in [1, 100000]");
    require(seed >= 0, "algebra.seed", "must be nonnegative");
    run.seed = seed;

    int passed = 0, rejected = 0;
    double worst = 0.0;
    for (long t = 0; t < trials; ++t) {
        const auto base = static_cast<std::uint64_t>(seed) + 3 * static_cast<std::uint64_t>(t);
        const SplitSequence s1 = build_random_split(int(dj), int(dobj), base);
        const SplitSequence s2 = build_random_split(int(dj), int(dobj), base + 1, s1.gram_O);
        const Eigen::MatrixXd phi = random_isometry(s1, s2, base + 2);
        const SplitCheck r = verify_split_isometry(s1, s2, phi);
        worst = std::max(worst, r.max_deviation);
        passed += r.pass;
        try {
            (void)verify_split_isometry(s1, s2, 2.0 * phi);
        } catch (const InvalidArgument&) {
            ++rejected;
        }
    }
    Record row = Record::object();
    row["dim_j"] = dj;
    row["dim_o"] = dobj;
    row["trials"] = trials;
    row["seed"] = seed;
    row["passed"] = passed;
    row["failed"] = trials - passed;
    row["max_deviation"] = worst;
    row["scaled_phi_rejected"] = rejected;
    std::printf("passed=%d failed=%ld max_deviation=%s\n", passed, trials - passed,
                format_number(worst).c_str());
    write_outputs(run, {row}, row);
    return passed == trials ? kOk : kNotCertified;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edge-symbol and Dirichlet-to-Neumann laboratory"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    Flags f;
    app.add_option("--config", f.config, "JSON configuration or an earlier run manifest");
    app.add_option("--out", f.out, "output directory");
    app.add_option("--format", f.format, "csv, json or both");
    app.add_option("--seed", f.seed, "random seed");

    auto mesh_flags = [&](CLI::App* c) {
        c->add_option("--r-max", f.r_max);
        c->add_option("--n-points", f.n_points);
        c->add_option("--grading", f.grading);
        c->add_option("--levels", f.levels);
    };
    auto edge_flags = [&](CLI::App* c) {
        mesh_flags(c);
        c->add_option("--xi", f.xi, "|xi|");
        c->add_option("--sigma0", f.sigma0);
    };

    std::string command;
    std::vector<std::pair<CLI::App*, std::string>> leaves;
    auto leaf = [&](CLI::App* parent, const char* name, const char* group, const char* help) {
        CLI::App* c = parent->add_subcommand(name, help);
        c->fallthrough();
        leaves.emplace_back(c, std::string(group) + " " + name);
        return c;
    };

    CLI::App* edge = app.add_subcommand("edge", "edge symbol analysis");
    edge->require_subcommand(1);
    edge->fallthrough();
    CLI::App* classify = leaf(edge, "classify", "edge", "kernel/cokernel classification");
    edge_flags(classify);
    classify->add_option("--gamma", f.gamma);
    CLI::App* sweep = leaf(edge, "sweep-gamma", "edge", "classification over a gamma grid");
    edge_flags(sweep);
    sweep->add_option("--from", f.from);
    sweep->add_option("--to", f.to);
    sweep->add_option("--steps", f.steps);
    CLI::App* augment = leaf(edge, "augment", "edge", "bordered system certification");
    edge_flags(augment);
    augment->add_option("--gamma", f.gamma);
    augment->add_option("--mode", f.mode, "boundary_row or coboundary_column");
    augment->add_option("--phi", f.phi, "\"default\" or a tabulated phi file");

    CLI::App* space = app.add_subcommand("space", "weighted spaces");
    space->require_subcommand(1);
    space->fallthrough();
    CLI::App* member = leaf(space, "member", "space", "membership of e^{-r} by refinement");
    mesh_flags(member);
    member->add_option("--gamma", f.gamma);
    member->add_option("-s,--order", f.s);
    member->add_flag("--dual", f.dual, "test order 2-s and weight 2-gamma instead");

    CLI::App* dtn = app.add_subcommand("dtn", "Dirichlet-to-Neumann harness");
    dtn->require_subcommand(1);
    dtn->fallthrough();
    CLI::App* spectrum = leaf(dtn, "spectrum", "dtn", "lambda_n for n = 0..N");
    spectrum->add_option("--profile", f.profile);
    spectrum->add_option("--modes,-N", f.modes);
    spectrum->add_option("--n-steps", f.n_steps);
    CLI::App* compare = leaf(dtn, "compare", "dtn", "compare two spectra");
    compare->add_option("--profiles", f.profiles)->expected(2);
    compare->add_option("--modes,-N", f.modes);
    compare->add_option("--n-steps", f.n_steps);

    CLI::App* algebra = app.add_subcommand("algebra", "splitting lemma");
    algebra->require_subcommand(1);
    algebra->fallthrough();
    CLI::App* split = leaf(algebra, "splitting-check", "algebra", "random split isometries");
    split->add_option("--dim-j", f.dim_j);
    split->add_option("--dim-o", f.dim_o);
    split->add_option("--trials", f.trials);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    }

    Run run;
    for (const auto& [c, name] : leaves)
        if (c->parsed()) run.command = name;
    if (run.command == "space member") run.cfg["mesh"]["grading_exponent"] = 6;

    try {
        if (f.config) load_config(run, *f.config);
        apply_flags(run, f);
        if (f.seed) run.seed = *f.seed;
        validate_common(run);
        if (run.command == "edge classify") return edge_classify(run);
        if (run.command == "edge sweep-gamma") return edge_sweep(run);
        if (run.command == "edge augment") return edge_augment(run);
        if (run.command == "space member") return space_member(run);
        if (run.command == "dtn spectrum") return dtn_spectrum_cmd(run);
        if (run.command == "dtn compare") return dtn_compare_cmd(run);
        if (run.command == "algebra splitting-check") return splitting_check(run);
        std::cerr << "config error: no command\n";
        return kConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const Unclassifiable& e) {
        std::cerr << "unclassifiable: " << e.what() << "\n";
        return kUnclassifiable;
    } catch (const NotCertified& e) {
        std::cerr << "not certified: " << e.what() << "\n";
        return kNotCertified;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    }
}
