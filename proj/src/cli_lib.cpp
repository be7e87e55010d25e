#include "hdisk/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdisk/acceptance.hpp"
#include "hdisk/corpus.hpp"
#include "hdisk/errors.hpp"
#include "hdisk/json_io.hpp"
#include "hdisk/registry.hpp"

namespace hdisk {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "hdisk 1.0.0";

/// One flag bundle shared by every subcommand; `opts` remembers the CLI11
/// handles so the config merge can tell "given on the command line" apart
/// from "left at default".
struct FlagSet {
    std::string config, map_path, corpus, functional, lambda_s, out, filter;
    std::string format = "json";
    std::string axis, values;  // sweep only
    double p = 2.0, alpha = 0.0, mu = 0.5, tol = 1e-4;
    int n = 1, rings = 14, cap = 14;
    std::size_t angular = 256;
    cplx lambda{1.0, 0.0};
    std::map<std::string, CLI::Option*> opts;
};

void add_flags(CLI::App* cmd, FlagSet& fs) {
    fs.opts["config"] =
        cmd->add_option("--config", fs.config, "JSON config file; explicit flags override it");
    fs.opts["map"] = cmd->add_option("--map", fs.map_path, "map JSON file path");
    fs.opts["corpus"] = cmd->add_option("--corpus", fs.corpus, "built-in corpus entry name");
    fs.opts["functional"] = cmd->add_option("--functional", fs.functional, "functional id");
    fs.opts["p"] = cmd->add_option("--p", fs.p, "exponent p");
    fs.opts["n"] = cmd->add_option("--n", fs.n, "derivative order n");
    fs.opts["alpha"] = cmd->add_option("--alpha", fs.alpha, "radial weight exponent");
    fs.opts["lambda"] =
        cmd->add_option("--lambda", fs.lambda_s, "unimodular lambda as re or re,im");
    fs.opts["mu"] = cmd->add_option("--mu", fs.mu, "envelope parameter mu in (0,1]");
    fs.opts["tol"] = cmd->add_option("--tol", fs.tol, "quadrature relative tolerance");
    fs.opts["rings"] = cmd->add_option("--rings", fs.rings, "dyadic quadrature rings");
    fs.opts["angular"] = cmd->add_option("--angular", fs.angular, "angular nodes per ring");
    fs.opts["cap"] =
        cmd->add_option("--cap", fs.cap, "sup-search radius cap level (radius 1-2^-cap)");
    fs.opts["out"] = cmd->add_option("--out", fs.out, "output file (default stdout)");
    fs.opts["format"] = cmd->add_option("--format", fs.format, "output format")
                            ->check(CLI::IsMember({"json", "csv"}));
    fs.opts["filter"] = cmd->add_option("--filter", fs.filter, "substring filter");
}

cplx parse_cplx_flag(const std::string& s) {
    const auto comma = s.find(',');
    std::size_t used = 0;
    if (comma == std::string::npos) {
        const double re = std::stod(s, &used);
        if (used != s.size()) throw ArgError("cannot parse complex value: " + s);
        return {re, 0.0};
    }
    const std::string rs = s.substr(0, comma), is = s.substr(comma + 1);
    const double re = std::stod(rs, &used);
    if (used != rs.size()) throw ArgError("cannot parse complex value: " + s);
    const double im = std::stod(is, &used);
    if (used != is.size()) throw ArgError("cannot parse complex value: " + s);
    return {re, im};
}

/// Fill unset flags from the JSON config document (same keys as the flags),
/// then resolve --lambda; rejects unknown config keys outright.
void merge_config(FlagSet& fs) {
    json j = json::object();
    if (!fs.config.empty()) {
        std::ifstream in(fs.config);
        if (!in) throw ArgError("cannot open config file: " + fs.config);
        in >> j;
        if (!j.is_object()) throw ArgError("config must be a JSON object");
    }
    static const std::set<std::string> known = {
        "map",  "corpus",  "functional", "p",   "n",      "alpha", "lambda", "mu",    "tol",
        "rings", "angular", "cap",        "out", "format", "filter", "axis",   "values"};
    for (const auto& item : j.items())
        if (!known.count(item.key())) throw ArgError("unknown config key: " + item.key());

    const auto given = [&](const char* k) {
        const auto it = fs.opts.find(k);
        return it != fs.opts.end() && it->second->count() > 0;
    };
    const auto use = [&](const char* k) { return j.contains(k) && !given(k); };

    if (use("map")) fs.map_path = j.at("map").get<std::string>();
    if (use("corpus")) fs.corpus = j.at("corpus").get<std::string>();
    if (use("functional")) fs.functional = j.at("functional").get<std::string>();
    if (use("out")) fs.out = j.at("out").get<std::string>();
    if (use("format")) fs.format = j.at("format").get<std::string>();
    if (use("filter")) fs.filter = j.at("filter").get<std::string>();
    if (j.contains("axis") && fs.axis.empty()) fs.axis = j.at("axis").get<std::string>();
    if (j.contains("values") && fs.values.empty()) fs.values = j.at("values").get<std::string>();
    if (use("p")) fs.p = j.at("p").get<double>();
    if (use("alpha")) fs.alpha = j.at("alpha").get<double>();
    if (use("mu")) fs.mu = j.at("mu").get<double>();
    if (use("tol")) fs.tol = j.at("tol").get<double>();
    if (use("n")) fs.n = j.at("n").get<int>();
    if (use("rings")) fs.rings = j.at("rings").get<int>();
    if (use("cap")) fs.cap = j.at("cap").get<int>();
    if (use("angular")) fs.angular = j.at("angular").get<std::size_t>();
    if (fs.format != "json" && fs.format != "csv")
        throw ArgError("format must be json or csv, got: " + fs.format);

    if (given("lambda")) fs.lambda = parse_cplx_flag(fs.lambda_s);
    else if (j.contains("lambda")) {
        const json& lj = j.at("lambda");
        fs.lambda = lj.is_string() ? parse_cplx_flag(lj.get<std::string>()) : cplx_from_json(lj);
    }
}

RunParams params_from(const FlagSet& fs) {
    RunParams rp;
    rp.p = fs.p;
    rp.n = fs.n;
    rp.mu = fs.mu;
    rp.lambda = fs.lambda;
    rp.quad.alpha = fs.alpha;
    rp.quad.rel_tol = fs.tol;
    rp.quad.rings = fs.rings;
    rp.quad.angular_nodes = fs.angular;
    rp.zsearch.max_level = fs.cap;
    return rp;
}

CorpusEntry load_entry(const FlagSet& fs) {
    if (!fs.corpus.empty() && !fs.map_path.empty())
        throw ArgError("give either --corpus or --map, not both");
    if (!fs.corpus.empty()) return corpus_lookup(fs.corpus);
    if (fs.map_path.empty()) throw ArgError("one of --corpus or --map is required");
    std::ifstream in(fs.map_path);
    if (!in) throw ArgError("cannot open map file: " + fs.map_path);
    json j;
    in >> j;
    CorpusEntry e;
    e.name = fs.map_path;
    e.summary = "user-supplied map";
    if (j.contains("shear")) {
        const json& s = j.at("shear");
        e.map = shear(expr_from_json(s.at("phi")), expr_from_json(s.at("w")));
        e.has_map = true;
    } else if (j.contains("h_prime")) {
        const ExprPtr w = j.contains("w") ? expr_from_json(j.at("w")) : constant(0.0);
        e.map = make_map(expr_from_json(j.at("h_prime")), w, "user");
        e.has_map = true;
    } else {
        throw ArgError("map JSON needs \"h_prime\" (+ optional \"w\") or \"shear\"");
    }
    if (j.contains("h")) e.analytic = expr_from_json(j.at("h"));
    return e;
}

/// All emitted text ends with exactly one newline; the writer never appends.
void write_out(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream o(out, std::ios::binary);
    if (!o) throw ArgError("cannot open output file: " + out);
    o << text;
}

std::string num17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string report_csv(const Report& r) {
    std::ostringstream os;
    os << "functional,entry,value,est_error,verdict,boundary_limited,decaying,converged\n"
       << r.functional << ',' << csv_field(r.entry) << ',' << num17(r.value) << ','
       << num17(r.est_error) << ',' << r.verdict << ',' << r.boundary_limited << ','
       << r.decaying << ',' << r.converged << '\n';
    return os.str();
}

int cmd_eval(const FlagSet& fs) {
    if (fs.functional.empty()) throw ArgError("--functional is required");
    const CorpusEntry e = load_entry(fs);
    const RunParams rp = params_from(fs);
    const Report rep = run_functional(fs.functional, e, rp);
    const std::string text =
        fs.format == "csv" ? report_csv(rep) : rep.to_json().dump(2) + "\n";
    write_out(fs.out, text);
    return rep.exit_code();
}

std::vector<double> parse_values(const std::string& s) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        vals.push_back(std::stod(item, &used));
        if (used != item.size()) throw ArgError("cannot parse sweep value: " + item);
    }
    if (vals.empty()) throw ArgError("--values parsed to an empty list");
    return vals;
}

json row_json(const std::string& axis, double x, const Report& r) {
    json row;
    row[axis] = x;
    row["value"] = r.value;
    row["est_error"] = r.est_error;
    row["verdict"] = r.verdict;
    row["boundary_limited"] = r.boundary_limited;
    row["decaying"] = r.decaying;
    row["converged"] = r.converged;
    return row;
}

int cmd_sweep(const FlagSet& fs) {
    std::ostringstream csv;
    json rows = json::array();
    int rc = 0;
    const auto note = [&](const Report& r) {
        if (r.exit_code() == 2) rc = 2;
    };
    const auto emit = [&](const std::string& axis, double x, const Report& r) {
        csv << num17(x) << ',' << num17(r.value) << ',' << num17(r.est_error) << ','
            << r.verdict << ',' << r.boundary_limited << ',' << r.decaying << ','
            << r.converged << '\n';
        rows.push_back(row_json(axis, x, r));
        note(r);
    };
    const char* header = "value,est_error,verdict,boundary_limited,decaying,converged\n";

    if (fs.axis == "p") {
        if (fs.functional.empty()) throw ArgError("--functional is required for the p axis");
        const CorpusEntry e = load_entry(fs);
        const std::vector<double> vals =
            fs.values.empty() ? std::vector<double>{1.25, 1.5, 2.0, 2.5, 3.0}
                              : parse_values(fs.values);
        csv << "p," << header;
        for (double p : vals) {
            RunParams rp = params_from(fs);
            rp.p = p;
            emit("p", p, run_functional(fs.functional, e, rp));
        }
    } else if (fs.axis == "rho") {
        if (fs.functional.empty()) throw ArgError("--functional is required for the rho axis");
        const std::vector<double> vals = fs.values.empty()
                                             ? std::vector<double>{0.25, 0.5, 0.75}
                                             : parse_values(fs.values);
        csv << "rho," << header;
        for (double rho : vals) {
            if (!(rho > 0.0 && rho < 1.0)) throw ArgError("rho must lie in (0,1)");
            CorpusEntry e;
            e.name = "shear_rho(" + num17(rho) + ")";
            e.summary = "canonical shear with w = rho z";
            e.map = shear(var_z(), scale(cplx(rho, 0.0), var_z()));
            e.has_map = true;
            e.analytic = scale(cplx(-1.0 / rho, 0.0), hdisk::log(affine(1.0, -rho)));
            emit("rho", rho, run_functional(fs.functional, e, params_from(fs)));
        }
    } else if (fs.axis == "a-radius") {
        if (fs.functional.empty())
            throw ArgError("--functional is required for the a-radius axis");
        const CorpusEntry e = load_entry(fs);
        std::vector<double> vals;
        if (fs.values.empty())
            for (int k = 0; k <= 8; ++k) vals.push_back(1.0 - std::exp2(-k));
        else
            vals = parse_values(fs.values);
        csv << "a_radius," << header;
        for (double radius : vals) {
            if (!(radius >= 0.0 && radius < 1.0)) throw ArgError("a-radius must lie in [0,1)");
            RunParams rp = params_from(fs);
            rp.a = cplx(radius, 0.0);
            emit("a_radius", radius, run_functional(fs.functional, e, rp));
        }
    } else if (fs.axis == "truncation") {
        const CorpusEntry e = load_entry(fs);
        if (!e.has_map) throw NotApplicable("the truncation axis needs a harmonic map");
        const HarmonicMap& f = e.map;
        const double p = fs.p;
        RunParams rp = params_from(fs);
        const GrowthReport g = divergence_probe(
            [&](cplx z) { return std::pow(2.0 * std::abs(pre_schwarzian(f, z)), p); },
            p - 2.0, rp.levels, rp.quad);
        csv << "m,radius,value,growth_exponent,verdict\n";
        for (std::size_t i = 0; i < g.levels.size(); ++i) {
            const int m = g.levels[i];
            const double radius = 1.0 - std::exp2(-m);
            csv << m << ',' << num17(radius) << ',' << num17(g.truncated_values[i]) << ','
                << num17(g.growth_exponent) << ',' << verdict_name(g.verdict) << '\n';
            json row;
            row["m"] = m;
            row["radius"] = radius;
            row["value"] = g.truncated_values[i];
            row["growth_exponent"] = g.growth_exponent;
            row["verdict"] = verdict_name(g.verdict);
            rows.push_back(row);
        }
        if (g.verdict == IntegralVerdict::DivergentSuspect) rc = 2;
    } else {
        throw ArgError("unknown sweep axis: '" + fs.axis +
                       "' (expected p | rho | a-radius | truncation)");
    }

    if (fs.format == "csv") {
        write_out(fs.out, csv.str());
    } else {
        json doc;
        doc["axis"] = fs.axis;
        doc["rows"] = rows;
        doc["version"] = kVersion;
        write_out(fs.out, doc.dump(2) + "\n");
    }
    return rc;
}

int cmd_verify(const FlagSet& fs) {
    const std::vector<CriterionResult> res = run_acceptance(fs.filter);
    if (res.empty()) throw ArgError("--filter matched no acceptance criteria: " + fs.filter);
    std::ostringstream text;
    json arr = json::array();
    int failed = 0;
    for (const auto& c : res) {
        if (!c.pass) ++failed;
        text << (c.pass ? "PASS" : "FAIL") << "  " << c.id << "  " << c.name << "  -- "
             << c.detail << "\n";
        json cj;
        cj["id"] = c.id;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["detail"] = c.detail;
        arr.push_back(cj);
    }
    text << (failed == 0 ? std::string("all criteria passed")
                         : std::to_string(failed) + " criteria failed")
         << " (" << res.size() << " run)\n";
    json summary;
    summary["criteria"] = arr;
    summary["run"] = res.size();
    summary["failed"] = failed;
    summary["version"] = kVersion;

    const std::string payload = fs.format == "json" ? summary.dump(2) + "\n" : text.str();
    write_out(fs.out, payload);
    if (!fs.out.empty()) std::cout << text.str();  // human echo next to the file report
    return failed == 0 ? 0 : 1;
}

int cmd_corpus_list(const FlagSet& fs) {
    std::ostringstream text;
    json arr = json::array();
    for (const auto& e : corpus_list()) {
        if (!fs.filter.empty() && e.name.find(fs.filter) == std::string::npos) continue;
        json ej;
        ej["name"] = e.name;
        ej["summary"] = e.summary;
        ej["facts"] = e.facts.size();
        ej["has_map"] = e.has_map;
        ej["has_analytic"] = static_cast<bool>(e.analytic);
        arr.push_back(ej);
        text << e.name << "  (" << e.facts.size() << " facts)  " << e.summary << "\n";
    }
    write_out(fs.out, fs.format == "csv" ? text.str() : arr.dump(2) + "\n");
    return 0;
}

int cmd_corpus_export(const FlagSet& fs) {
    if (fs.corpus.empty()) throw ArgError("--corpus is required for export");
    const CorpusEntry e = corpus_lookup(fs.corpus);
    json j;
    if (e.has_map) {
        j["h_prime"] = expr_to_json(e.map.h_prime);
        j["w"] = expr_to_json(e.map.w);
    } else if (e.analytic) {
        j["h_prime"] = expr_to_json(derivative(e.analytic));
        j["w"] = expr_to_json(constant(0.0));
    } else {
        throw NotApplicable("entry '" + e.name + "' is an envelope family without a map");
    }
    if (e.analytic) j["h"] = expr_to_json(e.analytic);
    write_out(fs.out, j.dump(2) + "\n");
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    const auto t0 = std::chrono::steady_clock::now();
    CLI::App app{"weighted-integral and Schwarzian functionals of harmonic mappings on the "
                 "unit disk"};
    app.require_subcommand(1);

    FlagSet fe, fsw, fv, fcl, fcx;
    CLI::App* eval = app.add_subcommand("eval", "evaluate one functional on one map");
    add_flags(eval, fe);
    CLI::App* sweep =
        app.add_subcommand("sweep", "sweep one axis, one report row per axis value");
    add_flags(sweep, fsw);
    sweep->add_option("axis", fsw.axis, "axis: p | rho | a-radius | truncation");
    sweep->add_option("--values", fsw.values, "comma-separated axis values");
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance criteria suite");
    add_flags(verify, fv);
    CLI::App* corpus = app.add_subcommand("corpus", "list or export the built-in maps");
    corpus->require_subcommand(1);
    CLI::App* clist = corpus->add_subcommand("list", "list corpus entries");
    add_flags(clist, fcl);
    CLI::App* cexport = corpus->add_subcommand("export", "export one entry as map JSON");
    add_flags(cexport, fcx);

    try {
        app.parse(argc, argv);
        int rc = 0;
        if (eval->parsed()) {
            merge_config(fe);
            rc = cmd_eval(fe);
        } else if (sweep->parsed()) {
            merge_config(fsw);
            if (fsw.axis.empty())
                throw ArgError("sweep needs an axis (p | rho | a-radius | truncation)");
            rc = cmd_sweep(fsw);
        } else if (verify->parsed()) {
            merge_config(fv);
            rc = cmd_verify(fv);
        } else if (clist->parsed()) {
            merge_config(fcl);
            rc = cmd_corpus_list(fcl);
        } else if (cexport->parsed()) {
            merge_config(fcx);
            rc = cmd_corpus_export(fcx);
        }
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        std::cerr << "wall_time_s " << dt.count() << "\n";  // stderr: reports stay byte-stable
        return rc;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace hdisk
