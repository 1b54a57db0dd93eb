#include "okvalid/io.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "okvalid/error.hpp"

namespace okvalid {

using nlohmann::json;

namespace {

json num(double x) { return format_double(x); }

double get_num(const json& j, const char* key) {
    if (!j.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
    const json& v = j.at(key);
    if (v.is_string()) return parse_double(v.get<std::string>());
    if (v.is_number()) return v.get<double>();
    throw DomainError(std::string("field '") + key + "' is not a number");
}

std::vector<double> get_num_array(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw DomainError(std::string("missing array '") + key + "'");
    }
    std::vector<double> out;
    for (const json& v : j.at(key)) {
        if (v.is_string()) {
            out.push_back(parse_double(v.get<std::string>()));
        } else if (v.is_number()) {
            out.push_back(v.get<double>());
        } else {
            throw DomainError(std::string("array '") + key + "' holds a non-number");
        }
    }
    return out;
}

json params_json(const ModelParams& p) {
    json f = json::array();
    for (double c : p.f.coeffs()) f.push_back(num(c));
    return json{{"lambda", num(p.lambda)}, {"sigma", num(p.sigma)}, {"mu", num(p.mu)}, {"f_coeffs", f}};
}

ModelParams params_from(const json& j) {
    ModelParams p;
    p.lambda = get_num(j, "lambda");
    p.sigma = get_num(j, "sigma");
    p.mu = get_num(j, "mu");
    p.f = Polynomial(get_num_array(j, "f_coeffs"));
    return p;
}

json content_json(const SolutionFile& s) {
    json ext = json::array();
    for (int i = 0; i < s.u.dim(); ++i) ext.push_back(s.u.extent(i));
    json coeffs = json::array();
    for (double c : s.u.coeffs()) coeffs.push_back(num(c));
    return json{{"dim", s.u.dim()}, {"extent", ext}, {"params", params_json(s.params)}, {"coeffs", coeffs}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << text << '\n';
    if (!out) throw DomainError("write to '" + path + "' failed");
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& s) {
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    if (s == "nan") return std::nan("");
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw DomainError("bad number '" + s + "'");
    }
    return v;
}

std::string solution_to_json(const SolutionFile& s) {
    json j = content_json(s);
    j["format_version"] = kFormatVersion;
    j["meta"] = json{{"created", s.created},
                     {"tool_version", s.toolVersion},
                     {"residual_float", num(s.residualFloat)}};
    return j.dump(2);
}

SolutionFile solution_from_json(const std::string& text) {
    const json j = parse_json(text);
    try {
        SolutionFile s;
        if (j.value("format_version", 0) != kFormatVersion) throw DomainError("unsupported solution format_version");
        const int dim = j.at("dim").get<int>();
        const auto ext_j = j.at("extent");
        if (!ext_j.is_array() || static_cast<int>(ext_j.size()) != dim) {
            throw DomainError("extent must list one entry per dimension");
        }
        std::array<int, kMaxDim> ext{1, 1, 1};
        for (int i = 0; i < dim; ++i) ext[i] = ext_j[i].get<int>();
        s.params = params_from(j.at("params"));
        s.u = PointSeries(dim, ext);
        const std::vector<double> coeffs = get_num_array(j, "coeffs");
        if (coeffs.size() != s.u.size()) throw DomainError("coeffs length does not match extent");
        for (std::size_t i = 0; i < coeffs.size(); ++i) s.u[i] = coeffs[i];
        if (s.u[0] != 0) throw DomainError("solution coefficient of the mean mode must be 0");
        if (j.contains("meta")) {
            const json& m = j.at("meta");
            s.created = m.value("created", "");
            s.toolVersion = m.value("tool_version", "");
            if (m.contains("residual_float")) s.residualFloat = get_num(m, "residual_float");
        }
        return s;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed solution file: ") + e.what());
    }
}

void write_solution(const std::string& path, const SolutionFile& s) {
    write_file(path, solution_to_json(s));
}

SolutionFile read_solution(const std::string& path) { return solution_from_json(read_file(path)); }

std::string solution_hash(const SolutionFile& s) {
    const std::string text = content_json(s).dump();
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 computation failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    }
    return hex.str();
}

std::string certificate_to_json(const Certificate& c) {
    json j;
    j["format_version"] = kFormatVersion;
    j["params"] = params_json(c.params);
    j["parameter"] = std::string(to_string(c.which));
    j["dim"] = c.dim;
    j["N"] = c.N;
    j["rho"] = num(c.rho);
    j["KN"] = num(c.KN);
    j["tau"] = num(c.tau);
    j["K"] = num(c.K);
    j["defect"] = num(c.defect);
    j["qSup"] = num(c.qSup);
    j["qH2"] = num(c.qH2);
    j["L1"] = num(c.L1);
    j["L2"] = num(c.L2);
    j["L3"] = num(c.L3);
    j["L4"] = num(c.L4);
    j["CmBar"] = num(c.cmbar);
    j["ellX"] = num(c.ellX);
    j["ellAlpha"] = num(c.ellAlpha);
    j["deltaAlpha"] = num(c.deltaAlpha);
    j["deltaX"] = num(c.deltaX);
    j["uniquenessX"] = num(c.uniquenessX);
    j["bracket"] = num(c.bracket);
    j["valid"] = c.valid;
    j["point_only"] = c.pointOnly;
    j["stage"] = std::string(to_string(c.stage));
    j["message"] = c.message;
    j["suggested_N"] = c.suggestedN ? json(*c.suggestedN) : json(nullptr);
    j["box_rounds"] = c.boxRounds;
    j["lipschitz_mapping"] = "L1=M1, L2=M2, L3=M3, L4=M4";
    j["provenance"] = json{{"tool_version", c.provenance}, {"basis_ordering", c.basisOrdering}};
    j["solution_hash"] = c.solutionHash;
    return j.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
    const json j = parse_json(text);
    try {
        Certificate c;
        if (j.value("format_version", 0) != kFormatVersion) throw DomainError("unsupported certificate format_version");
        c.params = params_from(j.at("params"));
        c.which = parameter_from_string(j.at("parameter").get<std::string>());
        c.dim = j.at("dim").get<int>();
        c.N = j.at("N").get<int>();
        c.rho = get_num(j, "rho");
        c.KN = get_num(j, "KN");
        c.tau = get_num(j, "tau");
        c.K = get_num(j, "K");
        c.defect = get_num(j, "defect");
        c.qSup = get_num(j, "qSup");
        c.qH2 = get_num(j, "qH2");
        c.L1 = get_num(j, "L1");
        c.L2 = get_num(j, "L2");
        c.L3 = get_num(j, "L3");
        c.L4 = get_num(j, "L4");
        c.cmbar = get_num(j, "CmBar");
        c.ellX = get_num(j, "ellX");
        c.ellAlpha = get_num(j, "ellAlpha");
        c.deltaAlpha = get_num(j, "deltaAlpha");
        c.deltaX = get_num(j, "deltaX");
        c.uniquenessX = get_num(j, "uniquenessX");
        c.bracket = get_num(j, "bracket");
        c.valid = j.at("valid").get<bool>();
        c.pointOnly = j.at("point_only").get<bool>();
        c.stage = stage_from_string(j.at("stage").get<std::string>());
        c.message = j.value("message", "");
        if (j.contains("suggested_N") && !j.at("suggested_N").is_null()) {
            c.suggestedN = j.at("suggested_N").get<int>();
        }
        c.boxRounds = j.value("box_rounds", 0);
        const json& prov = j.at("provenance");
        c.provenance = prov.value("tool_version", "");
        c.basisOrdering = prov.value("basis_ordering", "");
        c.solutionHash = j.value("solution_hash", "");
        return c;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed certificate file: ") + e.what());
    }
}

void write_certificate(const std::string& path, const Certificate& c) {
    write_file(path, certificate_to_json(c));
}

Certificate read_certificate(const std::string& path) {
    return certificate_from_json(read_file(path));
}

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

}  // namespace okvalid
