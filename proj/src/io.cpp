#include "covmaps/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace covmaps {

namespace {

std::string indexed(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

double number_from_json(const Json& j, const std::string& field) {
    if (!j.is_number()) throw InputError(field + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw InputError(field + ": non-finite value");
    return x;
}

const Json& member(const Json& j, const char* key, const std::string& field) {
    if (!j.is_object()) throw InputError(field + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw InputError(field + "." + key + ": missing");
    return *it;
}

std::string format_real(const Json& j) {
    if (!j.is_number()) return j.dump();
    const double x = j.get<double>();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

Complex complex_from_json(const Json& j, const std::string& field) {
    if (j.is_number()) return {number_from_json(j, field), 0.0};
    if (!j.is_array() || j.size() != 2) throw InputError(field + ": expected [re, im] pair");
    return {number_from_json(j[0], field + "[0]"), number_from_json(j[1], field + "[1]")};
}

Matrix matrix_from_json(const Json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) throw InputError(field + ": expected a non-empty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) throw InputError(indexed(field, 0) + ": expected a non-empty row");
    const std::size_t cols = j[0].size();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string row_field = indexed(field, i);
        if (!j[i].is_array() || j[i].size() != cols)
            throw InputError(row_field + ": expected a row of " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                complex_from_json(j[i][k], indexed(row_field, k));
    }
    return m;
}

Json map_to_json(const MapMatrix& m) {
    Json out = Json::object();
    out["n"] = m.n();
    out["basis"] = m.tag() == BasisTag::frobenius ? "frobenius" : "canonical";
    out["c"] = matrix_to_json(m.coefficients());
    return out;
}

MapMatrix map_from_json(const Json& j, const std::string& field) {
    const Json& jn = member(j, "n", field);
    if (!jn.is_number_integer()) throw InputError(field + ".n: expected an integer");
    const int n = jn.get<int>();
    if (n < 2 || n > 64) throw InputError(field + ".n: dimension must be in [2, 64]");

    BasisTag tag = BasisTag::frobenius;
    if (const auto it = j.find("basis"); it != j.end()) {
        if (!it->is_string()) throw InputError(field + ".basis: expected a string");
        const std::string name = it->get<std::string>();
        if (name == "canonical")
            tag = BasisTag::canonical;
        else if (name != "frobenius")
            throw InputError(field + ".basis: expected \"frobenius\" or \"canonical\", got \"" + name + "\"");
    }

    const Matrix c = matrix_from_json(member(j, "c", field), field + ".c");
    if (c.rows() != n * n || c.cols() != n * n)
        throw InputError(field + ".c: expected " + std::to_string(n * n) + "x" + std::to_string(n * n) +
                         " coefficients, got " + std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
    return MapMatrix(n, tag, c);
}

MapDocument map_document_from_json(const Json& j) {
    MapDocument doc{map_from_json(j, "map"), std::nullopt, std::nullopt};
    if (const auto it = j.find("certificate"); it != j.end()) {
        if (!it->is_object()) throw InputError("map.certificate: expected an object");
        if (it->contains("cp")) doc.cp = map_from_json((*it)["cp"], "map.certificate.cp");
        if (it->contains("cocp")) doc.cocp = map_from_json((*it)["cocp"], "map.certificate.cocp");
        for (const auto* part : {&doc.cp, &doc.cocp})
            if (*part && (*part)->n() != doc.map.n())
                throw InputError("map.certificate: summand dimension differs from map.n");
    }
    return doc;
}

Generator generator_from_json(const Json& j) {
    const Matrix h = matrix_from_json(member(j, "H", "generator"), "generator.H");
    if (h.rows() != h.cols() || h.rows() < 2) throw InputError("generator.H: expected a square matrix, n >= 2");
    if (max_abs(h - h.adjoint()) > 1e-13) throw InputError("generator.H: not Hermitian");
    const int n = static_cast<int>(h.rows());
    auto part = [&](const char* key) {
        if (!j.contains(key)) return MapMatrix::zero(n);
        MapMatrix m = map_from_json(j[key], std::string("generator.") + key);
        if (m.n() != n) throw InputError(std::string("generator.") + key + ".n: does not match H");
        return m;
    };
    const MapMatrix cp = part("phi_cp");
    const MapMatrix cocp = part("phi_cocp");
    if (!is_cp(cp)) throw InputError("generator.phi_cp: map is not completely positive");
    if (!is_cocp(cocp)) throw InputError("generator.phi_cocp: map is not completely copositive");
    return build_generator(h, decomposable_certificate(cp, cocp));
}

DensityMatrix density_from_json(const Json& j) {
    const bool wrapped = j.is_object();
    const Matrix rho = wrapped ? matrix_from_json(member(j, "rho", "rho0"), "rho0.rho") : matrix_from_json(j, "rho0");
    try {
        return DensityMatrix(rho);
    } catch (const Error& e) {
        throw InputError(std::string(wrapped ? "rho0.rho" : "rho0") + ": " + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json_file(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": malformed JSON (" + e.what() + ")");
    }
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// --- report --------------------------------------------------------------------

void Report::verdict(const std::string& name, bool value, double residual_value, double tolerance) {
    verdicts_[name] = value;
    residuals_[name] = residual_value;
    tolerances_[name] = tolerance;
}

void Report::residual(const std::string& name, double value) { residuals_[name] = value; }

void Report::artifact(const std::string& name, Json value) { artifacts_[name] = std::move(value); }

bool Report::passed() const {
    for (const auto& [name, v] : verdicts_.items())
        if (!v.get<bool>()) return false;
    return true;
}

Json Report::to_json() const {
    Json out = Json::object();
    out["command"] = command_;
    out["inputs_digest"] = digest_;
    out["verdicts"] = verdicts_;
    out["residuals"] = residuals_;
    out["tolerances"] = tolerances_;
    out["artifacts"] = artifacts_;
    return out;
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << command_ << "  (inputs " << digest_ << ")\n";
    for (const auto& [name, v] : verdicts_.items()) {
        out << "  " << (v.get<bool>() ? "PASS " : "FAIL ") << name << "  residual "
            << format_real(residuals_[name]) << "  tol " << format_real(tolerances_[name])
            << "\n";
    }
    for (const auto& [name, v] : residuals_.items()) {
        if (verdicts_.contains(name)) continue;
        out << "  " << name << " = " << format_real(v) << "\n";
    }
    for (const auto& [name, v] : artifacts_.items()) {
        if (v.is_primitive())
            out << "  " << name << ": " << v.dump() << "\n";
        else
            out << "  " << name << ": <" << v.size() << " entries, see --json>\n";
    }
    return out.str();
}

}  // namespace covmaps
