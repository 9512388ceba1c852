// Command-line front end: structure validation, dimension tables, derivative
// evaluation, identity and series suites, dispersion sampling, Fock checks.
//
// Exit codes: 0 all requested checks passed, 1 check failure, 2 usage error,
// 3 I/O or parse error.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "qmink/calculus.hpp"
#include "qmink/engine.hpp"
#include "qmink/errors.hpp"
#include "qmink/exterior.hpp"
#include "qmink/fock.hpp"
#include "qmink/identities.hpp"
#include "qmink/operators.hpp"
#include "qmink/structure.hpp"
#include "qmink/waves.hpp"

namespace {

using nlohmann::json;
using namespace qmink;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Output {
    bool as_json = false;
    json j = json::object();

    void line(const std::string& text) {
        if (!as_json) std::cout << text << "\n";
    }
    void flush() {
        if (as_json) std::cout << j.dump(2) << "\n";
    }
};

int emit_report(Output& out, const ValidationReport& rep, const std::string& kind) {
    json checks = json::array();
    std::size_t passed = 0, counted = 0;
    for (const auto& c : rep.checks) {
        std::string status = c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL");
        out.line(status + "  " + c.name + (c.witness.empty() ? "" : ("  [" + c.witness + "]")));
        checks.push_back({{"name", c.name}, {"status", status}, {"witness", c.witness}});
        if (!c.skipped) {
            ++counted;
            if (c.pass) ++passed;
        }
    }
    out.j["kind"] = kind;
    out.j["checks"] = checks;
    out.j["passed"] = passed;
    out.j["total"] = counted;
    out.line(std::to_string(passed) + "/" + std::to_string(counted) + " checks passed");
    out.flush();
    return rep.all_pass() ? kExitOk : kExitCheckFailure;
}

struct GridAxis {
    double lo = 0, hi = 0;
    int steps = 1;
};

std::vector<GridAxis> parse_grid(const std::string& spec, int n) {
    std::vector<GridAxis> axes;
    std::string cur;
    std::vector<std::string> parts;
    for (char c : spec) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (static_cast<int>(parts.size()) != n)
        throw CLI::ValidationError("--grid needs " + std::to_string(n) +
                                   " comma-separated axes for this structure");
    for (const std::string& p : parts) {
        GridAxis ax;
        auto c1 = p.find(':');
        if (c1 == std::string::npos) {
            ax.lo = ax.hi = std::stod(p);
            ax.steps = 1;
        } else {
            auto c2 = p.find(':', c1 + 1);
            if (c2 == std::string::npos)
                throw CLI::ValidationError("grid axis '" + p + "' must be value or lo:hi:steps");
            ax.lo = std::stod(p.substr(0, c1));
            ax.hi = std::stod(p.substr(c1 + 1, c2 - c1 - 1));
            ax.steps = std::stoi(p.substr(c2 + 1));
            if (ax.steps < 1) throw CLI::ValidationError("grid axis needs at least one step");
        }
        axes.push_back(ax);
    }
    return axes;
}

std::vector<std::vector<double>> grid_points(const std::vector<GridAxis>& axes) {
    std::vector<std::vector<double>> pts{{}};
    for (const GridAxis& ax : axes) {
        std::vector<std::vector<double>> next;
        for (int k = 0; k < ax.steps; ++k) {
            double v = (ax.steps == 1) ? ax.lo
                                       : ax.lo + (ax.hi - ax.lo) * k / double(ax.steps - 1);
            for (const auto& p : pts) {
                auto q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        }
        pts = std::move(next);
    }
    return pts;
}

GammaSet gammas_from_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open gamma file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid gamma JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("gammas")) j = j["gammas"];
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw ParseError("gamma file must hold " + std::to_string(n) + " matrices");
    GammaSet gs;
    gs.dim = static_cast<int>(j[0].size());
    for (const auto& mj : j) {
        QMatrix m(gs.dim, gs.dim);
        for (int r = 0; r < gs.dim; ++r)
            for (int c = 0; c < gs.dim; ++c) m.at(r, c) = Scalar::parse(mj[r][c].get<std::string>());
        gs.gamma.push_back(m);
    }
    return gs;
}

QMatrix braid_from_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open braid file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid braid JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("b")) j = j["b"];
    const std::size_t n2 = static_cast<std::size_t>(n) * n;
    if (!j.is_array() || j.size() != n2) throw ParseError("braid matrix must be N^2 x N^2");
    QMatrix b(n2, n2);
    for (std::size_t r = 0; r < n2; ++r)
        for (std::size_t c = 0; c < n2; ++c) b.at(r, c) = Scalar::parse(j[r][c].get<std::string>());
    return b;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact covariant differential calculus on quantum coordinate algebras"};
    app.require_subcommand(1);

    bool as_json = false;
    std::uint64_t seed = 42;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--seed", seed, "seed for randomized property suites")->capture_default_str();

    std::string path, poly_text, grid_spec, out_csv, gamma_path, braid_path;
    int gen_index = 0, max_degree = 5, nmax = -1, slots = 3;
    double mass = 0.0;
    bool dump = false, no_star = false, emit_gnuplot = false;

    auto* validate_cmd = app.add_subcommand("validate", "run the structure consistency checks");
    validate_cmd->add_option("structure", path)->required();
    validate_cmd->add_flag("--dump", dump, "reprint the parsed structure as JSON");
    validate_cmd->add_flag("--no-star", no_star, "omit the star-related checks");

    auto* dims_cmd = app.add_subcommand("dims", "antisymmetrizer rank table");
    dims_cmd->add_option("structure", path)->required();
    dims_cmd->add_option("--max-degree", max_degree, "largest form degree")->capture_default_str();

    auto* derive_cmd = app.add_subcommand("derive", "apply a partial derivative");
    derive_cmd->add_option("structure", path)->required();
    derive_cmd->add_option("poly", poly_text, "polynomial in text syntax")->required();
    derive_cmd->add_option("index", gen_index, "derivative index")->required();

    auto* ident_cmd = app.add_subcommand("identities", "run the operator identity suite");
    ident_cmd->add_option("structure", path)->required();
    ident_cmd->add_option("--gammas", gamma_path, "JSON file with gamma matrices");

    auto* disp_cmd = app.add_subcommand("dispersion", "sample the dispersion relation");
    disp_cmd->add_option("structure", path)->required();
    disp_cmd->add_option("--grid", grid_spec, "per-axis lo:hi:steps or a constant")->required();
    disp_cmd->add_option("--mass", mass, "mass parameter M")->capture_default_str();
    disp_cmd->add_option("--out", out_csv, "output CSV path")->required();
    disp_cmd->add_flag("--emit-gnuplot", emit_gnuplot, "write a companion plot script");

    auto* series_cmd = app.add_subcommand("verify-series", "plane-wave series checks");
    series_cmd->add_option("structure", path)->required();
    series_cmd->add_option("--nmax", nmax, "highest power checked (defaults per case)");

    auto* fock_cmd = app.add_subcommand("fock-check", "braided Fock-space invariants");
    fock_cmd->add_option("structure", path)->required();
    fock_cmd->add_option("--braid", braid_path, "JSON file with a generator braid matrix");
    fock_cmd->add_option("-n,--slots", slots, "tensor slots")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    Output out;
    out.as_json = as_json;

    try {
        StructureData sd = load_structure(path);
        out.j["structure"] = path;

        if (validate_cmd->parsed()) {
            if (dump) {
                std::cout << dump_structure(sd) << "\n";
                return kExitOk;
            }
            return emit_report(out, validate(sd, !no_star), "validate");
        }

        if (dims_cmd->parsed()) {
            out.line("degree  dim(N^n)  rank");
            json rows = json::array();
            for (int d = 0; d <= max_degree; ++d) {
                Antisymmetrizer an = build_antisymmetrizer(sd, d);
                out.line(std::to_string(d) + "  " + std::to_string(an.dim) + "  " +
                         std::to_string(an.rank));
                rows.push_back({{"degree", d}, {"dim", an.dim}, {"rank", an.rank}});
            }
            out.j["kind"] = "dims";
            out.j["table"] = rows;
            out.flush();
            return kExitOk;
        }

        if (derive_cmd->parsed()) {
            if (gen_index < 0 || gen_index >= sd.n)
                throw CLI::ValidationError("derivative index out of range");
            NCPoly p = NCPoly::parse(poly_text, sd.n);
            if (p.degree() > sd.degree_cutoff)
                throw CutoffError("polynomial degree exceeds the structure's cutoff");
            StructureData clamped = sd;
            clamped.degree_cutoff = std::max(2, p.degree());
            NormalFormEngine eng(clamped);
            Calculus calc(eng); // aborts with a gate diagnostic when ill-defined
            NCPoly d = calc.partial(gen_index, p);
            out.line(d.str());
            out.j["kind"] = "derive";
            out.j["result"] = d.str();
            out.flush();
            return kExitOk;
        }

        if (ident_cmd->parsed()) {
            std::optional<GammaSet> gs;
            if (!gamma_path.empty()) gs = gammas_from_file(gamma_path, sd.n);
            else gs = default_gammas(sd);
            IdentitySuiteOptions opts;
            opts.seed = seed;
            return emit_report(out, identity_suite(sd, gs, opts), "identities");
        }

        if (series_cmd->parsed()) {
            ValidationReport rep;
            bool any = false;
            if (sd.is_z_zero()) {
                any = true;
                int nm = (nmax > 0) ? nmax : std::min(4, sd.degree_cutoff / 2);
                for (auto& c : verify_z0_series(sd, nm).checks) rep.checks.push_back(c);
            }
            if (sd.is_r_flip()) {
                any = true;
                int nm = (nmax > 0) ? nmax : std::min(6, sd.degree_cutoff);
                for (auto& c : verify_u_algebra(sd, nm).checks) rep.checks.push_back(c);
            }
            if (!any) {
                out.line("no applicable series check (Z != 0 and R != tau)");
                out.flush();
                return kExitCheckFailure;
            }
            return emit_report(out, rep, "verify-series");
        }

        if (disp_cmd->parsed()) {
            auto axes = parse_grid(grid_spec, sd.n);
            auto pts = grid_points(axes);
            DispersionModel model = make_dispersion_model(sd, mass);

            struct Row {
                double m2 = 0;
                std::complex<double> prop{0, 0};
                bool pole = false;
                std::string error;
            };
            std::vector<Row> rows(pts.size());
            auto eval_range = [&](std::size_t lo, std::size_t hi) {
                for (std::size_t k = lo; k < hi; ++k) {
                    try {
                        rows[k].m2 = mass_squared(model, pts[k]);
                        try {
                            rows[k].prop = propagator(model, pts[k]);
                        } catch (const PoleError&) {
                            rows[k].pole = true;
                        }
                    } catch (const std::exception& e) {
                        rows[k].error = e.what();
                    }
                }
            };
            // pure per-point evaluation; output order stays deterministic
            unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(),
                                                  pts.size() > 64 ? 8 : 1);
            if (workers > 1) {
                std::vector<std::thread> pool;
                std::size_t chunk = (pts.size() + workers - 1) / workers;
                for (unsigned w = 0; w < workers; ++w) {
                    std::size_t lo = w * chunk;
                    std::size_t hi = std::min(pts.size(), lo + chunk);
                    if (lo < hi) pool.emplace_back(eval_range, lo, hi);
                }
                for (auto& t : pool) t.join();
            } else {
                eval_range(0, pts.size());
            }
            for (const Row& r : rows)
                if (!r.error.empty()) throw RealityError(r.error);

            std::ofstream csv(out_csv);
            if (!csv) throw ParseError("cannot open output file '" + out_csv + "'");
            for (int a = 0; a < sd.n; ++a) csv << "p" << a << ",";
            csv << "m2,re_prop,im_prop\n";
            for (std::size_t k = 0; k < pts.size(); ++k) {
                for (double v : pts[k]) csv << fmt17(v) << ",";
                csv << fmt17(rows[k].m2) << ",";
                if (rows[k].pole) csv << "nan,nan\n";
                else csv << fmt17(rows[k].prop.real()) << "," << fmt17(rows[k].prop.imag()) << "\n";
            }
            csv.close();
            if (emit_gnuplot) {
                std::ofstream gp(out_csv + ".gp");
                gp << "set datafile separator ','\n"
                   << "set key autotitle columnhead\n"
                   << "plot '" << out_csv << "' using 1:" << (sd.n + 1)
                   << " with points title 'm2'\n";
            }
            out.line("wrote " + std::to_string(pts.size()) + " rows to " + out_csv);
            out.j["kind"] = "dispersion";
            out.j["rows"] = pts.size();
            out.j["out"] = out_csv;
            out.flush();
            return kExitOk;
        }

        if (fock_cmd->parsed()) {
            StructureData clamped = sd;
            clamped.degree_cutoff = std::min(sd.degree_cutoff, 6);
            NormalFormEngine eng(clamped);
            BraidOperator braid = braid_path.empty()
                                      ? BraidOperator::flip(eng)
                                      : BraidOperator::from_matrix(
                                            eng, braid_from_file(braid_path, sd.n));
            std::vector<std::pair<std::string, ParticleOp>> ops;
            ops.emplace_back("multiply_by_x0", [&eng](const NCPoly& a) {
                return eng.multiply(NCPoly::generator(0), a);
            });
            std::optional<Calculus> calc;
            try {
                calc.emplace(eng);
            } catch (const GateError&) {
                // no calculus on this structure; the multiplication operator
                // still exercises the lift
            }
            if (calc)
                ops.emplace_back("partial_0",
                                 [&calc](const NCPoly& a) { return calc->partial(0, a); });
            return emit_report(out, fock_suite(eng, braid, slots, seed, ops), "fock-check");
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SingularMetricError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitUsage;
}
