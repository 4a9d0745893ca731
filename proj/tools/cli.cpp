#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "autdim/dim_estimator.hpp"
#include "autdim/estimates.hpp"
#include "autdim/flow.hpp"
#include "autdim/gallery.hpp"
#include "autdim/metric.hpp"
#include "autdim/report.hpp"

namespace autdim::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kCommands{"verify-lemmas", "metric",  "flow",    "hausdorff",
                                         "dim-estimate",  "example1", "converge"};

struct Config {
    std::string command;
    std::uint64_t seed = 0;
    std::string out = ".";
    bool plots = false;
    double density = 0.0;  // 0 = command default
    int degree = 0;        // 0 = command default
    double tol = 0.0;      // 0 = command default
    std::string j;
    std::string domain;
    std::string domain2;
    std::string from;
    std::string to;
    double tmax = 0.0;  // 0 = command default
    std::string field;
    std::string family;
};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i".
cplx parse_complex(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw UsageError("empty complex number");
    if (s.back() != 'i') return {parse_real(s), 0.0};
    s.pop_back();
    std::size_t split_at = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split_at = k;
            break;
        }
    auto imag_of = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t);
    };
    if (split_at == std::string::npos) return {0.0, imag_of(s)};
    return {parse_real(s.substr(0, split_at)), imag_of(s.substr(split_at))};
}

CxPoint parse_point(const std::string& s) {
    if (s.empty()) throw UsageError("missing point");
    std::vector<cplx> coords;
    for (const auto& part : split(s, ',')) coords.push_back(parse_complex(part));
    return CxPoint(coords);
}

std::vector<double> params_of(const std::string& s) {
    std::vector<double> v;
    for (const auto& p : split(s, ',')) v.push_back(parse_real(p));
    return v;
}

DomainSpec parse_domain(const std::string& spec) {
    if (spec.empty()) throw UsageError("missing --domain");
    const auto colon = spec.find(':');
    const std::string name = lower(spec.substr(0, colon));
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto need = [&](std::size_t n) {
        auto p = params_of(rest);
        if (p.size() != n) throw UsageError("domain '" + name + "' takes " + std::to_string(n) + " parameter(s)");
        return p;
    };
    if (name == "unitdisk" || name == "disk") return DomainSpec::unit_disk();
    if (name == "uhp" || name == "upperhalfplane") return DomainSpec::upper_half_plane();
    if (name == "strip") return DomainSpec::strip();
    if (name == "annulus") {
        auto p = need(2);
        return DomainSpec::annulus(p[0], p[1]);
    }
    if (name == "ellipse") {
        auto p = need(2);
        return DomainSpec::ellipse(p[0], p[1]);
    }
    if (name == "ball" || name == "ball2") {
        auto p = need(1);
        return DomainSpec::ball(CxPoint(name == "ball" ? 1 : 2), p[0]);
    }
    if (name == "diskminusdisk") {
        const auto parts = split(rest, ',');
        if (parts.size() != 2) throw UsageError("diskminusdisk takes c,rho");
        return DomainSpec::disk_minus_disk(parse_complex(parts[0]), parse_real(parts[1]));
    }
    if (name == "q") return Example1Family::limit().qpart;
    if (name == "d") return Example1Family::limit().product;
    if (name == "qj" || name == "dj") {
        auto p = need(1);
        const auto fam = Example1Family::member(static_cast<int>(p[0]));
        return name == "qj" ? fam.qpart : fam.product;
    }
    throw UsageError("unknown domain '" + spec + "'");
}

std::vector<int> parse_js(const std::string& s) {
    if (s.empty()) throw UsageError("missing --j");
    std::vector<int> out;
    const auto dots = s.find("..");
    if (dots != std::string::npos) {
        const int a = static_cast<int>(parse_real(s.substr(0, dots)));
        const int b = static_cast<int>(parse_real(s.substr(dots + 2)));
        if (b < a) throw UsageError("empty j range");
        for (int j = a; j <= b; ++j) out.push_back(j);
        return out;
    }
    for (const auto& p : split(s, ',')) out.push_back(static_cast<int>(parse_real(p)));
    return out;
}

VectorFieldPoly parse_field(const std::string& s) {
    std::vector<cplx> coeffs;
    for (const auto& p : split(s, ';')) coeffs.push_back(parse_complex(p));
    if (coeffs.empty()) throw UsageError("empty --field");
    return VectorFieldPoly::planar(coeffs);
}

std::string field_text(const VectorFieldPoly& x) {
    std::string s;
    const auto c = x.planar_coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) s += ";";
        s += fmt17(c[k].real()) + (c[k].imag() < 0 ? "" : "+") + fmt17(c[k].imag()) + "i";
    }
    return s;
}

class Output {
public:
    Output(const Config& cfg, std::ostream& out) : cfg_(cfg), out_(out) {
        fs::create_directories(cfg.out);
    }
    void write(const std::string& name, const std::string& content) const {
        std::ofstream f(fs::path(cfg_.out) / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (fs::path(cfg_.out) / name).string());
        f << content;
    }
    void table(const std::string& stem, const Table& t, std::size_t x, const std::string& title, bool log_y) const {
        write(stem + ".csv", to_csv(t));
        if (cfg_.plots) write(stem + ".svg", to_svg(t, x, title, log_y));
    }
    void report(Json body) const {
        Json j;
        j["schemaVersion"] = kSchemaVersion;
        j["command"] = cfg_.command;
        j["seed"] = cfg_.seed;
        for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
        write("report.json", dump_json(j));
    }
    std::ostream& out() const { return out_; }

private:
    const Config& cfg_;
    std::ostream& out_;
};

double or_default(double v, double def) { return v > 0.0 ? v : def; }

int cmd_verify_lemmas(const Config& cfg, const Output& o) {
    const auto reports = run_lemma_battery(cfg.seed);
    Json lemmas = Json::array();
    Table t{{"lemmaId", "status", "samples", "worstMargin", "witness"}, {}};
    bool failed = false;
    for (const auto& r : reports) {
        lemmas.push_back(to_json(r));
        t.rows.push_back({std::string(to_string(r.id)), std::string(to_string(r.status)),
                          static_cast<double>(r.samples), r.worst_margin, r.witness});
        failed = failed || r.status == Status::Failed;
        o.out() << to_string(r.id) << ' ' << to_string(r.status) << " worstMargin=" << fmt17(r.worst_margin) << '\n';
    }
    o.write("lemmas.csv", to_csv(t));
    o.report({{"lemmas", lemmas}, {"failed", failed}});
    return failed ? 1 : 0;
}

int cmd_metric(const Config& cfg, const Output& o) {
    const DomainSpec d = parse_domain(cfg.domain.empty() ? "unitdisk" : cfg.domain);
    const CxPoint from = parse_point(cfg.from);
    const CxPoint to = parse_point(cfg.to);
    if (from.dim() != d.dim() || to.dim() != d.dim()) throw UsageError("point dimension does not match the domain");
    Json body;
    body["domain"] = to_json(d);
    body["from"] = to_json(from);
    body["to"] = to_json(to);
    char buf[64];
    if (d.dim() == 1 && chain_to_disk(d)) {
        const double v = model_caratheodory(d, from[0], to[0]);
        body["distance"] = v;
        body["exact"] = true;
        std::snprintf(buf, sizeof buf, "%.6f", v);
        o.out() << buf << '\n';
    } else if (d.as<shapes::Ball>()) {
        const double v = ball_caratheodory(d, from, to);
        body["distance"] = v;
        body["exact"] = true;
        std::snprintf(buf, sizeof buf, "%.6f", v);
        o.out() << buf << '\n';
    } else {
        ExtremalOptions opts;
        if (cfg.degree > 0) opts.degree = cfg.degree;
        opts.seed = cfg.seed;
        const MetricBounds b = extremal_search(d, from, to, opts);
        body["bounds"] = to_json(b);
        body["exact"] = false;
        if (b.witness) o.write("witness.csv", b.witness->to_csv());
        std::snprintf(buf, sizeof buf, "%.6f %.6f", b.lower, b.upper);
        o.out() << buf << '\n';
    }
    o.report(body);
    return 0;
}

int cmd_flow(const Config& cfg, const Output& o) {
    const DomainSpec d = parse_domain(cfg.domain.empty() ? "unitdisk" : cfg.domain);
    if (d.dim() != 1) throw UsageError("flow supports planar domains");
    const VectorFieldPoly x = parse_field(cfg.field.empty() ? "0;i" : cfg.field);
    const CxPoint z0 = parse_point(cfg.from.empty() ? "0.5" : cfg.from);
    const double tmax = or_default(cfg.tmax, 1.0);
    const double tol = or_default(cfg.tol, 1e-10);
    std::vector<double> times;
    for (int k = 1; k <= 100; ++k) times.push_back(tmax * k / 100.0);

    Json body;
    body["domain"] = to_json(d);
    body["field"] = field_text(x);
    body["from"] = to_json(z0);
    body["tmax"] = tmax;
    body["tol"] = tol;
    Table t{{"t", "re", "im"}, {{0.0, z0[0].real(), z0[0].imag()}}};
    std::optional<double> exit_time;
    CxPoint cur = z0;
    double tcur = 0.0;
    for (double target : times) {
        try {
            cur = flow(x, cur, target - tcur, tol, d);
        } catch (const EscapeError& e) {
            exit_time = tcur + e.t_exit();
            break;
        }
        tcur = target;
        t.rows.push_back({target, cur[0].real(), cur[0].imag()});
    }
    body["exitTime"] = exit_time ? Json(*exit_time) : Json(nullptr);
    if (!exit_time) {
        const GroupAction a = GroupAction::from_field("field", x, tol, d);
        body["groupResidual"] = group_property_residual(a, z0, tmax / 3.0, tmax / 4.0, d);
        body["infinitesimalResidual"] = infinitesimal_residual(a, z0, tmax / 2.0, d);
    }
    o.table("trajectory", t, 0, "flow trajectory", false);
    o.report(body);
    o.out() << "samples=" << t.rows.size() << (exit_time ? " escaped t=" + fmt17(*exit_time) : "") << '\n';
    return 0;
}

int cmd_hausdorff(const Config& cfg, const Output& o) {
    const DomainSpec a = parse_domain(cfg.domain);
    const DomainSpec b = parse_domain(cfg.domain2);
    const double density = or_default(cfg.density, 0.001);
    const double h = hausdorff_distance(a, b, density);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", h);
    o.out() << buf << '\n';
    o.report({{"domain", to_json(a)}, {"domain2", to_json(b)}, {"density", density}, {"hausdorff", h}});
    return 0;
}

int cmd_dim_estimate(const Config& cfg, const Output& o) {
    const int degree = cfg.degree > 0 ? cfg.degree : 2;
    const double tol = or_default(cfg.tol, 1e-8);
    const double density = or_default(cfg.density, 0.02);
    if (!cfg.family.empty()) {
        std::vector<std::pair<double, DomainSpec>> fam;
        DomainSpec limit = DomainSpec::unit_disk();
        const std::string f = lower(cfg.family);
        if (f == "ellipse") {
            for (double e : {0.5, 0.2, 0.1, 0.05}) fam.emplace_back(e, DomainSpec::ellipse(1.0 + e, 1.0));
        } else if (f == "annulus") {
            limit = DomainSpec::annulus(0.3, 1.0);
            for (int j = 3; j <= 6; ++j) fam.emplace_back(j, DomainSpec::annulus(0.3 - std::ldexp(1.0, -j), 1.0));
        } else if (f == "constant") {
            for (int k = 1; k <= 4; ++k) fam.emplace_back(k, DomainSpec::unit_disk());
        } else {
            throw UsageError("unknown --family '" + cfg.family + "' (ellipse, annulus, constant)");
        }
        const SemicontinuityTable st = semicontinuity_experiment(fam, limit, degree, tol, density);
        Table t{{"param", "hausdorff", "dim", "sigma_min", "gapRatio"}, {}};
        for (const auto& m : st.members)
            t.rows.push_back({m.param, m.hausdorff, static_cast<double>(m.dim.estimated_dim),
                              m.dim.singular_values.back(), m.dim.gap_ratio});
        o.table("semicontinuity", t, 0, "semicontinuity: " + f, false);
        o.report({{"family", f}, {"degree", degree}, {"experiment", to_json(st)}});
        for (const auto& m : st.members) o.out() << "param=" << fmt17(m.param) << " dim=" << m.dim.estimated_dim << '\n';
        o.out() << "limit dim=" << st.limit.estimated_dim << " semicontinuity " << (st.holds ? "holds" : "VIOLATED")
                << '\n';
        return st.holds ? 0 : 1;
    }
    const DomainSpec d = parse_domain(cfg.domain.empty() ? "unitdisk" : cfg.domain);
    const DimReport r = aut_dim_estimate(d, degree, tol, density);
    Table t{{"index", "sigma"}, {}};
    for (std::size_t k = 0; k < r.singular_values.size(); ++k)
        t.rows.push_back({static_cast<double>(k + 1), r.singular_values[k]});
    o.table("spectrum", t, 0, "singular values", true);
    o.report({{"domain", to_json(d)}, {"dim", to_json(r)}});
    o.out() << "dim=" << r.estimated_dim << " gapRatio=" << fmt17(r.gap_ratio) << '\n';
    return 0;
}

int cmd_example1(const Config& cfg, const Output& o) {
    const std::vector<int> js = parse_js(cfg.j.empty() ? "3..8" : cfg.j);
    const double density = or_default(cfg.density, 0.001);
    const double t_compact = or_default(cfg.tmax, 8.0 * std::numbers::pi);
    const double t_limit = or_default(cfg.tmax, 50.0);
    const Example1Family lim = Example1Family::limit();
    const CxPoint z0{cplx{-0.5, 0.0}, 0.0};
    Table t{{"j", "hausdorff", "hausdorff_x_2^j", "classification", "minBoundaryDist", "recurrenceGap"}, {}};
    Table orbits{{"j", "t", "z_re", "z_im", "w_re", "w_im"}, {}};
    Json rows = Json::array();
    auto trace = [&](const Table::Cell& label, const OrbitReport& rep) {
        for (std::size_t k = 0; k < rep.times.size(); k += 10)
            orbits.rows.push_back({label, rep.times[k], rep.points[k][0].real(), rep.points[k][0].imag(),
                                   rep.points[k][1].real(), rep.points[k][1].imag()});
    };
    for (int j : js) {
        const Example1Family fam = Example1Family::member(j);
        const double h = hausdorff_distance(fam.qpart, lim.qpart, density);
        const OrbitReport rep = orbit_classifier(fam.product, annulus_rotation_action(fam), z0, t_compact);
        t.rows.push_back({static_cast<double>(j), h, std::ldexp(h, j), std::string(to_string(rep.classification)),
                          rep.min_boundary_dist, rep.recurrence_gap});
        trace(static_cast<double>(j), rep);
        Json row;
        row["j"] = j;
        row["hausdorff"] = h;
        row["orbit"] = to_json(rep);
        rows.push_back(row);
        o.out() << "j=" << j << " hausdorff=" << fmt17(h) << ' ' << to_string(rep.classification) << '\n';
    }
    const OrbitReport lrep = orbit_classifier(lim.product, translation_action(), z0, t_limit);
    t.rows.push_back({std::string("limit"), 0.0, std::string(""), std::string(to_string(lrep.classification)),
                      lrep.min_boundary_dist, lrep.recurrence_gap});
    trace(std::string("limit"), lrep);
    o.out() << "limit " << to_string(lrep.classification) << '\n';
    o.table("example1", t, 0, "Hausdorff gap of Q_j to Q", true);
    o.write("orbits.csv", to_csv(orbits));
    o.report({{"members", rows}, {"limit", {{"orbit", to_json(lrep)}}}});
    return 0;
}

int cmd_converge(const Config& cfg, const Output& o) {
    const std::vector<int> js = parse_js(cfg.j.empty() ? "3..10" : cfg.j);
    const ConvergenceReport r = field_convergence_experiment(js, CxPoint{cplx{-0.5, 0.0}}, 0.1, 0.1);
    Table t{{"j", "supDeviation", "normalizer"}, {}};
    for (std::size_t k = 0; k < r.js.size(); ++k) {
        t.rows.push_back({static_cast<double>(r.js[k]), r.sup_deviations[k], r.normalizers[k]});
        o.out() << "j=" << r.js[k] << " deviation=" << fmt17(r.sup_deviations[k]) << '\n';
    }
    o.table("convergence", t, 0, "normalized generator deviation", true);
    o.report({{"convergence", to_json(r)}});
    return 0;
}

// Pulls flag defaults from a JSON document mirroring the flags.
void apply_config_file(const std::string& path, Config& cfg) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file " + path);
    Json j;
    try {
        j = Json::parse(f);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad config file: ") + e.what());
    }
    auto str = [&](const char* key, std::string& dst) {
        if (!j.contains(key)) return;
        dst = j[key].is_string() ? j[key].get<std::string>() : j[key].dump();
    };
    auto num = [&](const char* key, auto& dst) {
        if (j.contains(key)) dst = j[key].get<std::decay_t<decltype(dst)>>();
    };
    str("command", cfg.command);
    num("seed", cfg.seed);
    str("out", cfg.out);
    num("plots", cfg.plots);
    num("density", cfg.density);
    num("degree", cfg.degree);
    num("tol", cfg.tol);
    str("j", cfg.j);
    str("domain", cfg.domain);
    str("domain2", cfg.domain2);
    str("from", cfg.from);
    str("to", cfg.to);
    num("tmax", cfg.tmax);
    str("field", cfg.field);
    str("family", cfg.family);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    try {
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) apply_config_file(args[i + 1], cfg);
            else if (args[i].rfind("--config=", 0) == 0) apply_config_file(args[i].substr(9), cfg);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    CLI::App app{"Numerical companion for automorphism-group semicontinuity", "autdim"};
    std::string config_path;
    app.add_option("command", cfg.command, "verify-lemmas | metric | flow | hausdorff | dim-estimate | example1 | converge");
    app.add_option("--config", config_path, "JSON file mirroring the flags");
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--out", cfg.out, "output directory");
    app.add_flag("--plots", cfg.plots, "emit SVG line plots");
    app.add_option("--density", cfg.density, "boundary sample spacing");
    app.add_option("--degree", cfg.degree, "polynomial degree cap");
    app.add_option("--tol", cfg.tol, "tolerance");
    app.add_option("--j", cfg.j, "family indices: a..b or a,b,c");
    app.add_option("--domain", cfg.domain, "domain, e.g. unitdisk, ellipse:2,1, annulus:0.3,1, ball2:1, q, qj:5, d, dj:5");
    app.add_option("--domain2", cfg.domain2, "second domain (hausdorff)");
    app.add_option("--from", cfg.from, "point, e.g. 0.5+0.2i or 0.1,0.2i");
    app.add_option("--to", cfg.to, "point");
    app.add_option("--tmax", cfg.tmax, "time horizon");
    app.add_option("--field", cfg.field, "planar field coefficients c0;c1;... (flow)");
    app.add_option("--family", cfg.family, "semicontinuity family for dim-estimate: ellipse, annulus, constant");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return 2;
    }
    if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end()) {
        err << "usage error: unknown command '" << cfg.command << "'\n" << app.help();
        return 2;
    }

    try {
        const Output o(cfg, out);
        if (cfg.command == "verify-lemmas") return cmd_verify_lemmas(cfg, o);
        if (cfg.command == "metric") return cmd_metric(cfg, o);
        if (cfg.command == "flow") return cmd_flow(cfg, o);
        if (cfg.command == "hausdorff") return cmd_hausdorff(cfg, o);
        if (cfg.command == "dim-estimate") return cmd_dim_estimate(cfg, o);
        if (cfg.command == "example1") return cmd_example1(cfg, o);
        return cmd_converge(cfg, o);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace autdim::cli
