#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "bianchi/hecke.hpp"
#include "bianchi/lseries.hpp"
#include "bianchi/verify.hpp"

using namespace bianchi;

namespace {

struct Common {
    long disc = -8;
    std::string level = "w";
    unsigned prec = 128;
    std::uint64_t seed = 1;
    unsigned samples = 25;
    std::string config;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--disc", c.disc, "field discriminant (negative)");
    cmd->add_option("--N", c.level, "level generator, e.g. 'w' or 'sqrt-2'");
    cmd->add_option("--prec", c.prec, "working precision in bits");
    cmd->add_option("--seed", c.seed, "RNG seed");
    cmd->add_option("--samples", c.samples, "sample count for randomized suites");
    cmd->add_option("--config", c.config, "JSON config file, overrides flags");
}

// config file wins over command-line flags
void apply_config(Common& c) {
    if (c.config.empty()) return;
    std::ifstream in(c.config);
    if (!in) throw config_error("cannot open config file: " + c.config);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw config_error("config file is not valid JSON");
    if (j.contains("disc")) c.disc = j["disc"].get<long>();
    if (j.contains("N")) c.level = j["N"].get<std::string>();
    if (j.contains("prec")) c.prec = j["prec"].get<unsigned>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples")) c.samples = j["samples"].get<unsigned>();
}

// accept "sqrt-2" style aliases for the level generator
std::string normalize_level(long disc, const std::string& lit) {
    if (lit.rfind("sqrt-", 0) == 0) {
        long k = std::stol(lit.substr(5));
        OrderSpec ord = order_from_disc(disc);
        if (ord.d() != k || ord.t0() != 0)
            throw config_error("sqrt-" + std::to_string(k) + " is not omega for disc " +
                               std::to_string(disc));
        return "w";
    }
    return lit;
}

void validate(const Common& c) {
    if (c.prec < 96 || c.prec > 8192)
        throw config_error("precision must be 96..8192 bits (suite tolerances assume >= 96)");
    if (c.samples == 0) throw config_error("samples must be positive");
}

struct Session {
    OrderSpec ord;
    SeriesParams params;
    Lattice lat;
    LatticeConstants lc;

    explicit Session(const Common& c)
        : ord(order_from_disc(c.disc)),
          params(SeriesParams::defaults()),
          lat(Lattice::standard(ord)),
          lc(cached_constants(lat, params)) {}
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json value_report(const Complex& v, const Real& budget) {
    Json j;
    j["value"] = complex_json(v);
    j["error_budget"] = to_decimal_string(budget);
    return j;
}

SuiteOptions suite_options(const Common& c, std::int64_t height, std::int64_t max_c_norm) {
    SuiteOptions o;
    o.disc = c.disc;
    o.n_gen = normalize_level(c.disc, c.level);
    o.prec_bits = c.prec;
    o.samples = c.samples;
    o.seed = c.seed;
    o.height = height;
    o.max_c_norm = max_c_norm;
    return o;
}

int run_verify(const Common& c, const std::string& suite, std::int64_t height,
               std::int64_t max_c_norm, const std::vector<std::string>& hecke_ps) {
    SuiteOptions opts = suite_options(c, height, max_c_norm);
    std::vector<SuiteReport> reports;
    auto want = [&](const std::string& name) { return suite == "all" || suite == name; };
    if (want("cocycle-relation")) reports.push_back(run_cocycle_relation(opts));
    if (want("homomorphism")) reports.push_back(run_homomorphism(opts));
    if (want("transformation")) reports.push_back(run_transformation(opts));
    if (want("internal-consistency")) reports.push_back(run_internal_consistency(opts));
    if (want("hecke")) {
        for (const std::string& p : hecke_ps) reports.push_back(run_hecke(opts, p));
        reports.push_back(run_involution(opts));
    }
    if (want("harmonicity")) reports.push_back(run_harmonicity(opts));
    if (want("distribution")) reports.push_back(run_distribution(opts));
    if (want("integral")) reports.push_back(run_integral_check(opts));
    if (want("lseries")) reports.push_back(run_lseries_closed(opts));
    if (want("integrality")) reports.push_back(run_integrality(opts));
    if (reports.empty()) throw config_error("unknown suite: " + suite);

    Json out;
    out["reports"] = Json::array();
    bool pass = true;
    for (const auto& r : reports) {
        out["reports"].push_back(r.to_json());
        pass = pass && r.pass;
    }
    out["pass"] = pass;
    emit(out);
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic Dedekind sums, Eisenstein cocycles and L-values over "
                 "imaginary quadratic orders"};
    app.require_subcommand(1);
    Common c;

    auto* series = app.add_subcommand("series", "evaluate a Kronecker-Eisenstein series E_k");
    int series_k = 2;
    std::string series_x = "0,0";
    series->add_option("--k", series_k, "weight, 0, 1 or 2")->check(CLI::Range(0, 2));
    series->add_option("--x", series_x, "argument as 're,im'");
    add_common(series, c);

    auto* ded = app.add_subcommand("dedekind", "evaluate an elliptic Dedekind sum D(a,c;p,q)");
    std::string ded_a = "1", ded_c = "w", ded_p = "0,0", ded_q = "0,0";
    ded->add_option("--a", ded_a, "numerator, quadint literal");
    ded->add_option("--c", ded_c, "denominator, quadint literal");
    ded->add_option("--p", ded_p, "shift p as 're,im'");
    ded->add_option("--q", ded_q, "shift q as 're,im'");
    add_common(ded, c);

    auto* coc = app.add_subcommand("cocycle", "evaluate Phi(A)(p,q) or Phi_N(A)(p,q)");
    std::string coc_matrix, coc_p = "0,0", coc_q = "0,0";
    bool coc_smoothed = false;
    coc->add_option("--matrix", coc_matrix, "entries a,b,c,d as quadint literals")->required();
    coc->add_option("--p", coc_p, "argument p as 're,im'");
    coc->add_option("--q", coc_q, "argument q as 're,im'");
    coc->add_flag("--smoothed", coc_smoothed, "evaluate the level cocycle Phi_N");
    add_common(coc, c);

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string ver_suite;
    std::int64_t ver_height = 3, ver_max_c = 200;
    std::vector<std::string> ver_ps;
    ver->add_option("suite", ver_suite,
                    "cocycle-relation|homomorphism|transformation|internal-consistency|"
                    "hecke|harmonicity|distribution|integral|lseries|integrality|all")
        ->required();
    ver->add_option("--height", ver_height, "entry-height bound for sampled matrices");
    ver->add_option("--max-c-norm", ver_max_c, "norm bound on the lower-left entry");
    ver->add_option("--p", ver_ps, "Hecke primes as quadint literals (default w, 1+w)");
    add_common(ver, c);

    auto* lv = app.add_subcommand("lvalue", "L-values attached to a loxodromic matrix");
    std::string lv_mode, lv_matrix, lv_s = "2", lv_p = "0,0", lv_q = "0,0";
    double lv_radius = 6, lv_tol = 1e-4;
    unsigned lv_nodes = 256;
    lv->add_option("mode", lv_mode, "direct|closed|check-integral")->required();
    lv->add_option("--matrix", lv_matrix, "entries a,b,c,d as quadint literals")->required();
    lv->add_option("--s", lv_s, "s parameter (direct: Re(s) >= 1.6; check-integral: real)");
    lv->add_option("--p", lv_p, "argument p as 're,im'");
    lv->add_option("--q", lv_q, "argument q as 're,im'");
    lv->add_option("--radius", lv_radius, "orbit truncation radius");
    lv->add_option("--nodes", lv_nodes, "quadrature panels for check-integral");
    lv->add_option("--tol", lv_tol, "pass threshold for check-integral");
    add_common(lv, c);

    auto* ca = app.add_subcommand("cache", "constants cache maintenance");
    std::string ca_action;
    ca->add_option("action", ca_action, "warm|clear|info")->required();
    add_common(ca, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        apply_config(c);
        validate(c);
        ScopedPrecision sp(c.prec);

        if (series->parsed()) {
            Session s(c);
            Complex x = parse_complex(series_x);
            Complex v = e_k(series_k, x, s.lc, s.params);
            emit(value_report(v, s.params.target_error));
            return 0;
        }
        if (ded->parsed()) {
            Session s(c);
            QuadInt a = parse_quadint(ded_a, s.ord), cc = parse_quadint(ded_c, s.ord);
            Complex v = d_sum_pq(a, cc, parse_complex(ded_p), parse_complex(ded_q), s.lc,
                                 s.params);
            emit(value_report(v, s.params.target_error));
            return 0;
        }
        if (coc->parsed()) {
            Session s(c);
            Mat2 A = parse_matrix(coc_matrix, s.ord);
            Complex p = parse_complex(coc_p), q = parse_complex(coc_q);
            CocycleValue v =
                coc_smoothed
                    ? phi_n(A, Level(parse_quadint(normalize_level(c.disc, c.level), s.ord)),
                            p, q, s.lc, s.params)
                    : phi_pq(A, p, q, s.lc, s.params);
            Json j = value_report(v.value, v.error_budget);
            j["branch"] = v.branch == CocycleValue::Branch::c_nonzero ? "c_nonzero" : "c_zero";
            emit(j);
            return 0;
        }
        if (ver->parsed()) {
            if (ver_ps.empty()) {
                if (order_from_disc(c.disc).d() != 2 &&
                    (ver_suite == "hecke" || ver_suite == "all"))
                    throw config_error("specify --p: default Hecke primes assume disc -8");
                ver_ps = {"w", "1+w"};
            }
            return run_verify(c, ver_suite, ver_height, ver_max_c, ver_ps);
        }
        if (lv->parsed()) {
            Session s(c);
            Mat2 A = parse_matrix(lv_matrix, s.ord);
            QuadInt nq = parse_quadint(normalize_level(c.disc, c.level), s.ord);
            Complex p = parse_complex(lv_p), q = parse_complex(lv_q);
            if (lv_mode == "direct") {
                auto r = l_direct(A, nq, parse_complex(lv_s), p, q, Real(lv_radius), s.lat,
                                  s.params);
                Json j = value_report(r.value, r.tail_estimate);
                j["theta"] = r.gd.theta;
                emit(j);
                return 0;
            }
            if (lv_mode == "closed") {
                auto r = l_closed_s1(A, nq, p, q, s.lc, s.params);
                Json j;
                j["l_value"] = complex_json(r.l_value);
                j["phi_value"] = complex_json(r.phi_value);
                j["alpha"] = complex_json(r.gd.alpha);
                j["eps"] = complex_json(r.gd.eps);
                j["theta"] = r.gd.theta;
                j["error_budget"] = to_decimal_string(s.params.target_error);
                emit(j);
                return 0;
            }
            if (lv_mode == "check-integral") {
                Real resid = integral_check(A, nq, Real(lv_s), p, q, Real(lv_radius),
                                            lv_nodes, s.lat, s.params);
                Json j;
                j["relative_residual"] = to_decimal_string(resid);
                j["tolerance"] = lv_tol;
                bool pass = resid < Real(lv_tol);
                j["pass"] = pass;
                emit(j);
                return pass ? 0 : 1;
            }
            throw config_error("unknown lvalue mode: " + lv_mode);
        }
        if (ca->parsed()) {
            Json j;
            if (ca_action == "clear") {
                j["removed"] = clear_cache();
            } else if (ca_action == "warm") {
                Session s(c);  // populates through cached_constants
                CacheOutcome st;
                cached_constants(s.lat, s.params, &st);
                j["hit"] = st.hit;
                j["path"] = st.path;
            } else if (ca_action == "info") {
                j["directory"] = cache_directory();
                int count = 0;
                std::error_code ec;
                for (const auto& e :
                     std::filesystem::directory_iterator(cache_directory(), ec))
                    if (e.path().extension() == ".json") ++count;
                j["entries"] = count;
            } else {
                throw config_error("unknown cache action: " + ca_action);
            }
            emit(j);
            return 0;
        }
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
