#include "obliq/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace obliq {

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

std::string format_complex(const Complex& z) {
    const double re = z.real();
    const double im = z.imag();
    std::string out = fmt17(re);
    if (std::signbit(im) && !std::isnan(im)) {
        out += "-" + fmt17(-im);
    } else {
        out += "+" + fmt17(im);
    }
    out += "i";
    return out;
}

Complex parse_complex(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw IoError("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I' && s.back() != 'j' && s.back() != 'J') {
        // Pure real.
        size_t used = 0;
        const double re = std::stod(s, &used);
        if (trim(s.substr(used)).size() != 0) {
            throw IoError("trailing characters in complex literal: " + text);
        }
        return Complex(re, 0.0);
    }
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last +/- that is not a leading sign or exponent sign.
    size_t split = std::string::npos;
    for (size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if (c != '+' && c != '-') continue;
        const char prev = body[i - 1];
        if (prev == 'e' || prev == 'E') continue;
        split = i;
        break;
    }
    if (split == std::string::npos) {
        // Pure imaginary: "i", "-i", "2.5i", ...
        std::string imag_text = body;
        if (imag_text.empty() || imag_text == "+") return Complex(0.0, 1.0);
        if (imag_text == "-") return Complex(0.0, -1.0);
        return Complex(0.0, std::stod(imag_text));
    }
    const std::string re_text = body.substr(0, split);
    std::string im_text = body.substr(split);
    if (im_text == "+") im_text = "1";
    if (im_text == "-") im_text = "-1";
    try {
        return Complex(std::stod(re_text), std::stod(im_text));
    } catch (const std::exception&) {
        throw IoError("malformed complex literal: " + text);
    }
}

std::uint64_t fnv1a(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 14695981039346656037ULL;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    char out[32];
    std::snprintf(out, sizeof(out), "%016llx",
                  static_cast<unsigned long long>(fnv1a(bytes.data(), bytes.size())));
    return out;
}

std::string gram_hash(const Matrix& gram) {
    std::string canon;
    canon += std::to_string(gram.rows()) + "x" + std::to_string(gram.cols()) + ";";
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
        for (Eigen::Index i = 0; i < gram.rows(); ++i) {
            canon += format_complex(gram(i, j));
            canon += ",";
        }
    }
    char out[32];
    std::snprintf(out, sizeof(out), "%016llx",
                  static_cast<unsigned long long>(fnv1a(canon.data(), canon.size())));
    return out;
}

Matrix read_matrix_market(std::istream& in) {
    std::string banner;
    if (!std::getline(in, banner)) throw IoError("empty MatrixMarket stream");
    std::istringstream head(banner);
    std::string tag, object, format, field, symmetry;
    head >> tag >> object >> format >> field >> symmetry;
    if (tag != "%%MatrixMarket" || lower(object) != "matrix") {
        throw IoError("not a MatrixMarket matrix: " + banner);
    }
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (format != "array" && format != "coordinate") {
        throw IoError("unsupported MatrixMarket format: " + format);
    }
    if (field != "real" && field != "complex" && field != "integer") {
        throw IoError("unsupported MatrixMarket field: " + field);
    }
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "hermitian") {
        throw IoError("unsupported MatrixMarket symmetry: " + symmetry);
    }

    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (!t.empty() && t[0] != '%') break;
    }
    std::istringstream sizes(line);
    Eigen::Index rows = 0, cols = 0;
    long long nnz = 0;
    sizes >> rows >> cols;
    if (format == "coordinate") sizes >> nnz;
    if (rows <= 0 || cols <= 0) throw IoError("bad MatrixMarket size line");

    Matrix a = Matrix::Zero(rows, cols);
    auto read_value = [&](std::istream& src) -> Complex {
        double re = 0.0, im = 0.0;
        if (!(src >> re)) throw IoError("truncated MatrixMarket data");
        if (field == "complex") {
            if (!(src >> im)) throw IoError("truncated MatrixMarket data");
        }
        return Complex(re, im);
    };

    if (format == "array") {
        // Column-major; symmetric/hermitian files carry the lower triangle.
        for (Eigen::Index j = 0; j < cols; ++j) {
            const Eigen::Index start = symmetry == "general" ? 0 : j;
            for (Eigen::Index i = start; i < rows; ++i) {
                a(i, j) = read_value(in);
            }
        }
    } else {
        for (long long e = 0; e < nnz; ++e) {
            Eigen::Index i = 0, j = 0;
            if (!(in >> i >> j)) throw IoError("truncated MatrixMarket data");
            if (i < 1 || i > rows || j < 1 || j > cols) {
                throw IoError("MatrixMarket index out of range");
            }
            a(i - 1, j - 1) = read_value(in);
        }
    }
    if (symmetry != "general") {
        for (Eigen::Index j = 0; j < cols; ++j) {
            for (Eigen::Index i = j + 1; i < rows; ++i) {
                a(j, i) = symmetry == "hermitian" ? std::conj(a(i, j)) : a(i, j);
            }
        }
    }
    return a;
}

Matrix read_csv_matrix(std::istream& in) {
    std::vector<std::vector<Complex>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<Complex> row;
        std::string cell;
        std::istringstream cells(line);
        while (std::getline(cells, cell, ',')) {
            row.push_back(parse_complex(cell));
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw IoError("ragged CSV matrix");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("empty CSV matrix");
    Matrix a(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            a(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    }
    return a;
}

Matrix read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    const std::string name = lower(path);
    if (ends_with(name, ".mtx") || ends_with(name, ".mm")) {
        return read_matrix_market(in);
    }
    if (ends_with(name, ".csv")) {
        return read_csv_matrix(in);
    }
    throw IoError("unknown matrix format for " + path +
                  " (expected .mtx, .mm, or .csv)");
}

void write_matrix_market(std::ostream& out, const Matrix& a) {
    out << "%%MatrixMarket matrix array complex general\n";
    out << a.rows() << " " << a.cols() << "\n";
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            out << fmt17(a(i, j).real()) << " " << fmt17(a(i, j).imag()) << "\n";
        }
    }
}

void write_csv_matrix(std::ostream& out, const Matrix& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (j > 0) out << ",";
            out << format_complex(a(i, j));
        }
        out << "\n";
    }
}

void write_matrix(const std::string& path, const Matrix& a) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    const std::string name = lower(path);
    if (ends_with(name, ".mtx") || ends_with(name, ".mm")) {
        write_matrix_market(out, a);
    } else if (ends_with(name, ".csv")) {
        write_csv_matrix(out, a);
    } else {
        throw IoError("unknown matrix format for " + path);
    }
}

Json complex_vector_json(const ColVec& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(format_complex(v(i)));
    }
    return arr;
}

Json real_vector_json(const RealVec& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Json subspace_header_json(const Subspace& s) {
    Json j;
    j["schema"] = "obliq/1";
    j["label"] = s.space()->label();
    j["dim"] = s.ambient_dim();
    j["k"] = s.dim();
    j["gram_hash"] = gram_hash(s.space()->gram());
    return j;
}

Json trig_field_json(const TrigField& field) {
    Json components = Json::array();
    for (const TrigTensor& comp : field.components) {
        Json terms = Json::array();
        for (const auto& [key, coeff] : comp.terms()) {
            Json factors = Json::array();
            for (const TrigFactor& f : key) {
                factors.push_back(Json::array(
                    {f.kind == TrigFactor::Sin ? "sin" : "cos", f.k}));
            }
            Json term;
            term["factors"] = std::move(factors);
            term["coeff"] = coeff;
            terms.push_back(std::move(term));
        }
        components.push_back(std::move(terms));
    }
    Json j;
    j["dims"] = field.dims;
    j["components"] = std::move(components);
    return j;
}

TrigField trig_field_from_json(const Json& j) {
    if (!j.contains("dims") || !j.contains("components")) {
        throw IoError("trig field JSON needs 'dims' and 'components'");
    }
    TrigField field;
    field.dims = j["dims"].get<int>();
    for (const Json& terms : j["components"]) {
        TrigTensor comp(field.dims);
        for (const Json& term : terms) {
            TrigKey key;
            for (const Json& factor : term.at("factors")) {
                const std::string kind = factor.at(0).get<std::string>();
                const int k = factor.at(1).get<int>();
                if (kind == "sin") {
                    if (k < 1) throw IoError("sin factor needs k >= 1");
                    key.push_back(TrigFactor{TrigFactor::Sin, k});
                } else if (kind == "cos") {
                    if (k < 0) throw IoError("cos factor needs k >= 0");
                    key.push_back(TrigFactor{TrigFactor::Cos, k});
                } else {
                    throw IoError("unknown factor kind '" + kind + "'");
                }
            }
            if (key.size() != static_cast<size_t>(field.dims)) {
                throw IoError("factor count does not match dims");
            }
            comp.add_term(key, term.at("coeff").get<double>());
        }
        field.components.push_back(std::move(comp));
    }
    return field;
}

Json inclination_report_json(const InclinationReport& rep) {
    Json j;
    j["c"] = rep.c;
    j["q_dim"] = rep.q_dim;
    j["angles"] = rep.angles;
    j["containment"] = to_string(rep.containment);
    j["near_degenerate"] = rep.near_degenerate;
    j["dim_l_reduced"] = rep.l_reduced.dim();
    j["dim_m_reduced"] = rep.m_reduced.dim();
    j["u_top"] = complex_vector_json(rep.u_top.coeffs);
    j["v_top"] = complex_vector_json(rep.v_top.coeffs);
    return j;
}

Json decomposition_json(const Decomposition& d, const BoundsReport& bounds) {
    Json j;
    j["c"] = d.c;
    j["a1"] = d.a1;
    j["a2"] = d.a2;
    j["A1"] = d.A1;
    j["A2"] = d.A2;
    j["residual"] = d.residual;
    j["x"] = complex_vector_json(d.x.coeffs);
    j["y_hat"] = complex_vector_json(d.y_hat.coeffs);
    j["xl_hat"] = complex_vector_json(d.xl_hat.coeffs);
    j["xm_hat"] = complex_vector_json(d.xm_hat.coeffs);
    j["xl"] = complex_vector_json(d.xl.coeffs);
    j["xm"] = complex_vector_json(d.xm.coeffs);
    Json b;
    b["x_norm"] = bounds.x_norm;
    b["y_hat_slack"] = bounds.y_hat_slack;
    b["xl_hat_slack"] = bounds.xl_hat_slack;
    b["xm_hat_slack"] = bounds.xm_hat_slack;
    b["xl_slack"] = bounds.xl_slack;
    b["xm_slack"] = bounds.xm_slack;
    b["ok"] = bounds.ok;
    j["bounds"] = std::move(b);
    return j;
}

Json extension_report_json(const ExtensionReport& ext) {
    Json j;
    j["c"] = ext.c;
    j["norm_f_l"] = ext.norm_f_l;
    j["norm_f_tilde"] = ext.norm_f_tilde;
    j["bound"] = ext.bound;
    j["on_l_error"] = ext.on_l_error;
    j["on_m_error"] = ext.on_m_error;
    j["riesz"] = complex_vector_json(ext.f.riesz.coeffs);
    j["riesz_tilde"] = complex_vector_json(ext.f_tilde.riesz.coeffs);
    return j;
}

Json probe_table_json(const ProbeTable& table) {
    Json rows = Json::array();
    for (const ProbeRow& r : table.rows) {
        Json row;
        row["t"] = r.t;
        row["c"] = r.c;
        row["bound"] = r.bound;
        row["attained_norm"] = r.attained_norm;
        row["pair_gap"] = r.pair_gap;
        rows.push_back(std::move(row));
    }
    Json j;
    j["completed"] = table.completed;
    j["rows"] = std::move(rows);
    return j;
}

void probe_table_csv(std::ostream& out, const ProbeTable& table) {
    out << "t,c,bound,attained_norm,pair_gap\n";
    for (const ProbeRow& r : table.rows) {
        out << fmt17(r.t) << "," << fmt17(r.c) << "," << fmt17(r.bound) << ","
            << fmt17(r.attained_norm) << "," << fmt17(r.pair_gap) << "\n";
    }
}

} // namespace obliq
