#include "antieig/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace antieig {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("malformed JSON");
    return j;
}

Complex entry_to_complex(const json& e) {
    if (e.is_number()) return Complex(e.get<double>(), 0.0);
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return Complex(e[0].get<double>(), e[1].get<double>());
    throw InputError("matrix entry must be a number or an [re, im] pair");
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw InputError("matrix JSON needs rows, cols, entries");
    int rows = j["rows"].get<int>();
    int cols = j["cols"].get<int>();
    if (rows <= 0 || cols <= 0) throw InputError("matrix dimensions must be positive");
    const json& rowsj = j["entries"];
    if (!rowsj.is_array() || static_cast<int>(rowsj.size()) != rows)
        throw InputError("entries must hold exactly rows rows");
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = rowsj[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw InputError("each row must hold exactly cols entries");
        for (int k = 0; k < cols; ++k) m(i, k) = entry_to_complex(row[k]);
    }
    require_finite(m, "matrix");
    return m;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string complex_pair(Complex z) {
    return "[" + fmt_double(z.real()) + "," + fmt_double(z.imag()) + "]";
}

std::string complex_list(const ComplexVector& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += complex_pair(v[i]);
    }
    return s + "]";
}

std::string real_list(const RealVector& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += fmt_double(v[i]);
    }
    return s + "]";
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

ComplexMatrix parse_complex_matrix(const std::string& text) {
    return matrix_from_json(parse_text(text));
}

RealMatrix parse_real_matrix(const std::string& text) {
    ComplexMatrix m = parse_complex_matrix(text);
    if (!is_real_entried(m)) throw InputError("expected a real matrix");
    return real_part(m);
}

ComplexMatrix load_complex_matrix(const std::string& path) {
    return parse_complex_matrix(read_file(path));
}

RealMatrix load_real_matrix(const std::string& path) {
    return parse_real_matrix(read_file(path));
}

OUOperatorSpec parse_ou_spec(const std::string& text) {
    json j = parse_text(text);
    if (!j.is_object() || !j.contains("A") || !j.contains("B") || !j.contains("S") ||
        !j.contains("d"))
        throw InputError("operator spec JSON needs A, B, S, d");
    ComplexMatrix A = matrix_from_json(j["A"]);
    ComplexMatrix B = matrix_from_json(j["B"]);
    ComplexMatrix Sc = matrix_from_json(j["S"]);
    if (!is_real_entried(Sc)) throw InputError("S must be a real matrix");
    int d = j["d"].get<int>();
    return make_ou_spec(A, B, real_part(Sc), d);
}

OUOperatorSpec load_ou_spec(const std::string& path) { return parse_ou_spec(read_file(path)); }

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string dump_matrix(const ComplexMatrix& m) {
    std::string s = "{\"rows\":" + std::to_string(m.rows) + ",\"cols\":" + std::to_string(m.cols) +
                    ",\"entries\":[";
    for (int i = 0; i < m.rows; ++i) {
        if (i) s += ",";
        s += "[";
        for (int j = 0; j < m.cols; ++j) {
            if (j) s += ",";
            s += complex_pair(m(i, j));
        }
        s += "]";
    }
    return s + "]}";
}

std::string dump_matrix(const RealMatrix& m) {
    std::string s = "{\"rows\":" + std::to_string(m.rows) + ",\"cols\":" + std::to_string(m.cols) +
                    ",\"entries\":[";
    for (int i = 0; i < m.rows; ++i) {
        if (i) s += ",";
        s += "[";
        for (int j = 0; j < m.cols; ++j) {
            if (j) s += ",";
            s += fmt_double(m(i, j));
        }
        s += "]";
    }
    return s + "]}";
}

std::string dump_antieigen_result(const AntieigenResult& r) {
    return std::string("{\"mu1\":") + fmt_double(r.mu1) + ",\"angle_rad\":" +
           fmt_double(r.angle_rad) + ",\"method\":\"" + to_string(r.method) + "\",\"witness\":" +
           complex_list(r.antieigenvector) + "}";
}

std::string dump_dissipativity_report(const DissipativityReport& r) {
    return std::string("{\"p\":") + fmt_double(r.p) + ",\"b\":" + fmt_double(r.b) +
           ",\"gamma_best\":" + fmt_double(r.gamma_best) + ",\"witness_w\":" +
           complex_list(r.witness_w) + ",\"threshold\":" + fmt_double(r.threshold) + ",\"mu1\":" +
           fmt_double(r.mu1) + ",\"margin\":" + fmt_double(r.margin) + ",\"verdict\":" +
           bool_str(r.verdict) + ",\"accretivity_constant\":" +
           fmt_double(r.accretivity_constant) + ",\"tol_decide\":" + fmt_double(r.tol_decide) +
           "}";
}

std::string dump_equivalence_result(const EquivalenceResult& r) {
    return std::string("{\"verdict_dissipativity\":") + bool_str(r.verdict_dissipativity) +
           ",\"verdict_antieigen\":" + bool_str(r.verdict_antieigen) + ",\"agree\":" +
           bool_str(r.agree) + ",\"margin\":" + fmt_double(r.margin) + ",\"gamma_best\":" +
           fmt_double(r.gamma) + ",\"threshold\":" + fmt_double(r.threshold) + ",\"mu1\":" +
           fmt_double(r.mu1) + ",\"invertible\":" + bool_str(r.invertible) +
           ",\"boundary_indeterminate\":" + bool_str(r.indeterminate) + ",\"decision_band\":" +
           fmt_double(r.decision_band) + "}";
}

std::string dump_p_range(const PRange& r) {
    std::string s = "{\"empty\":";
    s += bool_str(r.empty);
    s += ",\"p_lower\":";
    s += r.empty ? "null" : fmt_double(r.p_lower);
    s += ",\"p_upper\":";
    s += (r.empty || r.upper_unbounded) ? "null" : fmt_double(r.p_upper);
    s += ",\"upper_unbounded\":";
    s += bool_str(!r.empty && r.upper_unbounded);
    s += ",\"mu1\":";
    s += fmt_double(r.mu1);
    return s + "}";
}

std::string dump_two_vector_result(const TwoVectorResult& r) {
    return std::string("{\"min_found\":") + fmt_double(r.min_found) + ",\"witness_w\":" +
           complex_list(r.witness_w) + ",\"witness_z\":" + complex_list(r.witness_z) + "}";
}

std::string dump_lagrange_trace(const LagrangeTrace& t) {
    return std::string("{\"w\":") + real_list(t.w) + ",\"q\":" + fmt_double(t.q) + ",\"r\":" +
           fmt_double(t.r) + ",\"alpha\":" + fmt_double(t.alpha) + ",\"beta\":" +
           fmt_double(t.beta) + ",\"multiplier_mu\":" + fmt_double(t.multiplier_mu) +
           ",\"z_star\":" + real_list(t.z_star) + ",\"f_at_star\":" + fmt_double(t.f_at_star) +
           ",\"stationarity_residual\":" + fmt_double(t.stationarity_residual) + "}";
}

std::string dump_mass_check(const MassCheckResult& r) {
    return std::string("{\"deviation\":") + fmt_double(r.deviation) + ",\"computed\":" +
           dump_matrix(r.computed) + ",\"expected\":" + dump_matrix(r.expected) + "}";
}

std::string dump_resolvent_probe(const ResolventProbeResult& r) {
    return std::string("{\"ratio\":") + fmt_double(r.ratio) + ",\"bound\":" +
           fmt_double(r.bound) + ",\"tail\":" + fmt_double(r.tail) + "}";
}

}  // namespace antieig
