#include "qmink/structure.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qmink/errors.hpp"

namespace qmink {

bool StructureData::is_r_flip() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Scalar want((i == l && j == k) ? 1 : 0);
                    if (R(i, j, k, l) != want) return false;
                }
    return true;
}

bool StructureData::is_z_zero() const { return z.is_zero(); }

bool StructureData::is_t_zero() const {
    for (const auto& s : t)
        if (!s.is_zero()) return false;
    return true;
}

bool StructureData::is_g_real_symmetric() const {
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!G(a, b).is_real()) return false;
            if (G(a, b) != G(b, a)) return false;
        }
    return true;
}

bool StructureData::operator==(const StructureData& o) const {
    bool base = n == o.n && r == o.r && z == o.z && t == o.t && g == o.g &&
                degree_cutoff == o.degree_cutoff;
    if (!base) return false;
    if (gammas.has_value() != o.gammas.has_value()) return false;
    if (gammas && !(*gammas == *o.gammas)) return false;
    if (f_tilde.has_value() != o.f_tilde.has_value()) return false;
    if (f_tilde && !(*f_tilde == *o.f_tilde)) return false;
    return true;
}

bool ValidationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass && !c.skipped) return false;
    return true;
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

using nlohmann::json;

QMatrix parse_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& what) {
    if (!j.is_array() || j.size() != rows)
        throw ParseError(what + ": expected " + std::to_string(rows) + " rows");
    QMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = j[r];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(what + ": row " + std::to_string(r) + " must have " +
                             std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!row[c].is_string())
                throw ParseError(what + ": entries must be complex literal strings");
            m.at(r, c) = Scalar::parse(row[c].get<std::string>());
        }
    }
    return m;
}

json dump_matrix(const QMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
        rows.push_back(row);
    }
    return rows;
}

} // namespace

StructureData parse_structure(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("structure file must be a JSON object");
    StructureData sd;
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw ParseError("missing integer field 'n'");
    sd.n = j["n"].get<int>();
    if (sd.n <= 0) throw ParseError("'n' must be positive");
    std::size_t n = static_cast<std::size_t>(sd.n);
    if (!j.contains("r") || !j.contains("z") || !j.contains("t") || !j.contains("g"))
        throw ParseError("structure file needs fields r, z, t, g");
    sd.r = parse_matrix(j["r"], n * n, n * n, "r");
    sd.z = parse_matrix(j["z"], n * n, n, "z");
    if (!j["t"].is_array() || j["t"].size() != n * n)
        throw ParseError("t: expected " + std::to_string(n * n) + " entries");
    sd.t.resize(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
        if (!j["t"][k].is_string()) throw ParseError("t: entries must be complex literal strings");
        sd.t[k] = Scalar::parse(j["t"][k].get<std::string>());
    }
    sd.g = parse_matrix(j["g"], n, n, "g");
    sd.g_inv = sd.g.inverse(); // throws SingularMetricError on degenerate input
    if (j.contains("gammas")) {
        const json& gs = j["gammas"];
        if (!gs.is_array() || gs.size() != n)
            throw ParseError("gammas: expected " + std::to_string(n) + " matrices");
        std::vector<QMatrix> mats;
        std::size_t d = gs[0].is_array() ? gs[0].size() : 0;
        if (d == 0) throw ParseError("gammas: matrices must be non-empty");
        for (std::size_t a = 0; a < n; ++a)
            mats.push_back(parse_matrix(gs[a], d, d, "gammas[" + std::to_string(a) + "]"));
        sd.gammas = std::move(mats);
    }
    if (j.contains("f_tilde"))
        sd.f_tilde = parse_matrix(j["f_tilde"], n * n * n, n, "f_tilde");
    if (j.contains("degree_cutoff")) {
        if (!j["degree_cutoff"].is_number_integer())
            throw ParseError("degree_cutoff must be an integer");
        sd.degree_cutoff = j["degree_cutoff"].get<int>();
        if (sd.degree_cutoff <= 0) throw ParseError("degree_cutoff must be positive");
    }
    return sd;
}

StructureData load_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open structure file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_structure(buf.str());
}

std::string dump_structure(const StructureData& sd) {
    json j;
    j["n"] = sd.n;
    j["r"] = dump_matrix(sd.r);
    j["z"] = dump_matrix(sd.z);
    json t = json::array();
    for (const auto& s : sd.t) t.push_back(s.str());
    j["t"] = t;
    j["g"] = dump_matrix(sd.g);
    if (sd.gammas) {
        json gs = json::array();
        for (const auto& m : *sd.gammas) gs.push_back(dump_matrix(m));
        j["gammas"] = gs;
    }
    if (sd.f_tilde) j["f_tilde"] = dump_matrix(*sd.f_tilde);
    j["degree_cutoff"] = sd.degree_cutoff;
    return j.dump(2);
}

namespace {

std::string pair_name(int n, std::size_t flat) {
    return "(" + std::to_string(flat / n) + "," + std::to_string(flat % n) + ")";
}

ValidationCheck check_matrix_zero(const std::string& name, const QMatrix& m,
                                  int n, bool pair_rows) {
    ValidationCheck c{name, true, ""};
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t col = 0; col < m.cols(); ++col)
            if (!m.at(r, col).is_zero()) {
                c.pass = false;
                std::string rname = pair_rows ? pair_name(n, r) : std::to_string(r);
                c.witness = "residual " + m.at(r, col).str() + " at row " + rname + ", col " +
                            std::to_string(col);
                return c;
            }
    return c;
}

} // namespace

ValidationReport validate(const StructureData& sd, bool with_star) {
    ValidationReport report;
    const int n = sd.n;
    const std::size_t n2 = static_cast<std::size_t>(n) * n;

    // (a) R^2 = 1
    {
        QMatrix r2 = sd.r * sd.r - QMatrix::identity(n2);
        report.checks.push_back(check_matrix_zero("r_squared_identity", r2, n, true));
    }
    // (b) RT = -T
    {
        ValidationCheck c{"rt_antisymmetry", true, ""};
        std::vector<Scalar> rt = sd.r.apply(sd.t);
        for (std::size_t k = 0; k < n2; ++k) {
            Scalar res = rt[k] + sd.t[k];
            if (!res.is_zero()) {
                c.pass = false;
                c.witness = "residual " + res.str() + " at " + pair_name(n, k);
                break;
            }
        }
        report.checks.push_back(c);
    }
    // (c) A3 (Z x 1 - 1 x Z) T = 0
    {
        QMatrix id_n2 = QMatrix::identity(n2);
        QMatrix r1 = kron(sd.r, QMatrix::identity(n));
        QMatrix r2 = kron(QMatrix::identity(n), sd.r);
        QMatrix a3 = kron(id_n2, QMatrix::identity(n));
        a3 -= r1;
        a3 -= r2;
        a3 += r1 * r2;
        a3 += r2 * r1;
        a3 -= r1 * r2 * r1;
        QMatrix zo = kron(sd.z, QMatrix::identity(n)) - kron(QMatrix::identity(n), sd.z);
        std::vector<Scalar> v = a3.apply(zo.apply(sd.t));
        ValidationCheck c{"a3_zt_condition", true, ""};
        for (std::size_t k = 0; k < v.size(); ++k)
            if (!v[k].is_zero()) {
                c.pass = false;
                std::size_t i = k / n2, rest = k % n2;
                c.witness = "residual " + v[k].str() + " at (" + std::to_string(i) + "," +
                            std::to_string(rest / n) + "," + std::to_string(rest % n) + ")";
                break;
            }
        report.checks.push_back(c);
    }
    // (d) Rg = g, g viewed as a vector in C^{N^2}
    {
        std::vector<Scalar> gvec(n2);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) gvec[a * n + b] = sd.G(a, b);
        std::vector<Scalar> rg = sd.r.apply(gvec);
        ValidationCheck c{"metric_r_invariance", true, ""};
        for (std::size_t k = 0; k < n2; ++k) {
            Scalar res = rg[k] - gvec[k];
            if (!res.is_zero()) {
                c.pass = false;
                c.witness = "residual " + res.str() + " at " + pair_name(n, k);
                break;
            }
        }
        report.checks.push_back(c);
    }
    if (with_star) {
        // (e) g~ = g where g~^{ij} = conj(g^{ji})
        ValidationCheck c{"metric_hermitian", true, ""};
        for (int i = 0; i < n && c.pass; ++i)
            for (int j = 0; j < n; ++j) {
                Scalar res = sd.G(j, i).conj() - sd.G(i, j);
                if (!res.is_zero()) {
                    c.pass = false;
                    c.witness = "residual " + res.str() + " at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")";
                    break;
                }
            }
        report.checks.push_back(c);
        // (f) Z^{kl}_r g^{rj} = -Z^{kj}_s g^{ls}, only where R = tau
        if (sd.is_r_flip()) {
            ValidationCheck f{"z_metric_compatibility", true, ""};
            for (int k = 0; k < n && f.pass; ++k)
                for (int l = 0; l < n && f.pass; ++l)
                    for (int j = 0; j < n; ++j) {
                        Scalar lhs, rhs;
                        for (int r = 0; r < n; ++r) lhs += sd.Z(k, l, r) * sd.G(r, j);
                        for (int s = 0; s < n; ++s) rhs += sd.Z(k, j, s) * sd.G(l, s);
                        Scalar res = lhs + rhs;
                        if (!res.is_zero()) {
                            f.pass = false;
                            f.witness = "residual " + res.str() + " at (k,l,j)=(" +
                                        std::to_string(k) + "," + std::to_string(l) + "," +
                                        std::to_string(j) + ")";
                            break;
                        }
                    }
            report.checks.push_back(f);
        }
    }
    if (sd.f_tilde)
        report.checks.push_back(check_matrix_zero("f_tilde_zero", *sd.f_tilde, n, false));
    return report;
}

namespace {

void require(const StructureData& sd, std::initializer_list<const char*> names) {
    ValidationReport rep = validate(sd, /*with_star=*/false);
    for (const char* name : names) {
        const ValidationCheck* c = rep.find(name);
        if (c && !c->pass)
            throw GateError(std::string("structure check '") + name + "' failed: " + c->witness);
    }
    if (const ValidationCheck* f = rep.find("f_tilde_zero"); f && !f->pass)
        throw GateError("supplied f_tilde tensor is not zero: " + f->witness);
}

} // namespace

void require_algebra_gates(const StructureData& sd) {
    require(sd, {"r_squared_identity", "rt_antisymmetry", "a3_zt_condition"});
}

void require_metric_gates(const StructureData& sd) {
    require(sd, {"r_squared_identity", "rt_antisymmetry", "a3_zt_condition",
                 "metric_r_invariance"});
}

} // namespace qmink
