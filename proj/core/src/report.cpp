#include "sisio/report.hpp"

#include <json.hpp>

#include "sisio/error.hpp"

namespace sisio {

using nlohmann::json;

namespace {

json matrix_json(const Matrix& a) {
    json rows = json::array();
    for (Index i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from(const json& j) {
    const auto rows = static_cast<Index>(j.size());
    const auto cols = rows == 0 ? Index{0} : static_cast<Index>(j[0].size());
    Matrix a(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index k = 0; k < cols; ++k) a(i, k) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
    return a;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

Verdict verdict_from(const std::string& s) {
    if (s == "holds") return Verdict::Holds;
    if (s == "fails") return Verdict::Fails;
    if (s == "structurally-infeasible") return Verdict::StructurallyInfeasible;
    throw Error(ErrorKind::Config, "unknown verdict '" + s + "'");
}

Condition condition_from(const std::string& s) {
    if (s == "i") return Condition::I;
    if (s == "ii") return Condition::II;
    if (s == "iii") return Condition::III;
    throw Error(ErrorKind::Config, "unknown condition '" + s + "'");
}

json to_json(const StabilityCertificate& c) {
    json j;
    j["condition"] = to_string(c.condition);
    j["verdict"] = to_string(c.verdict);
    j["proof_verdict"] = to_string(c.proof_verdict);
    j["L"] = c.contraction;
    j["L_fd"] = c.lipschitz_fd;
    j["L_gd"] = c.lipschitz_gd;
    j["norm_K"] = c.norm_k;
    j["lambda_max_KtK"] = c.lambda_max_ktk;
    j["F"] = c.f_coefficient;
    j["K"] = matrix_json(c.k);
    j["assembled"] = matrix_json(c.assembled);
    j["assembled_lambda_max"] = c.assembled_lambda_max;
    j["P"] = c.P ? matrix_json(*c.P) : json(nullptr);
    j["Gamma"] = c.Gamma ? matrix_json(*c.Gamma) : json(nullptr);
    j["worst_block_eigenvalue"] = c.worst_block_eigenvalue;
    j["diagnostics"] = c.diagnostics;
    return j;
}

StabilityCertificate certificate_from(const json& j) {
    StabilityCertificate c;
    c.condition = condition_from(j.at("condition").get<std::string>());
    c.verdict = verdict_from(j.at("verdict").get<std::string>());
    c.proof_verdict = verdict_from(j.at("proof_verdict").get<std::string>());
    c.contraction = j.at("L").get<double>();
    c.lipschitz_fd = j.at("L_fd").get<double>();
    c.lipschitz_gd = j.at("L_gd").get<double>();
    c.norm_k = j.at("norm_K").get<double>();
    c.lambda_max_ktk = j.at("lambda_max_KtK").get<double>();
    c.f_coefficient = j.at("F").get<double>();
    c.k = matrix_from(j.at("K"));
    c.assembled = matrix_from(j.at("assembled"));
    c.assembled_lambda_max = j.at("assembled_lambda_max").get<double>();
    if (!j.at("P").is_null()) c.P = matrix_from(j.at("P"));
    if (!j.at("Gamma").is_null()) c.Gamma = matrix_from(j.at("Gamma"));
    c.worst_block_eigenvalue = j.at("worst_block_eigenvalue").get<double>();
    c.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    return c;
}

json to_json(const WidthLimits& w) {
    json j;
    j["converges"] = w.converges;
    j["recursion_limit_x"] = optional_json(w.recursion_x);
    j["recursion_limit_d"] = optional_json(w.recursion_d);
    j["closed_form_limit_x"] = optional_json(w.closed_form_x);
    j["closed_form_limit_d"] = optional_json(w.closed_form_d);
    j["delta_P0"] = optional_json(w.delta_p0);
    j["uniform_x"] = optional_json(w.uniform_x);
    j["uniform_d"] = optional_json(w.uniform_d);
    j["diagnostics"] = w.diagnostics;
    return j;
}

WidthLimits limits_from(const json& j) {
    WidthLimits w;
    w.converges = j.at("converges").get<bool>();
    w.recursion_x = optional_from(j.at("recursion_limit_x"));
    w.recursion_d = optional_from(j.at("recursion_limit_d"));
    w.closed_form_x = optional_from(j.at("closed_form_limit_x"));
    w.closed_form_d = optional_from(j.at("closed_form_limit_d"));
    w.delta_p0 = optional_from(j.at("delta_P0"));
    w.uniform_x = optional_from(j.at("uniform_x"));
    w.uniform_d = optional_from(j.at("uniform_d"));
    w.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    return w;
}

json to_json(const CertificationReport& r) {
    json j;
    j["L_f"] = r.lipschitz_f;
    j["L_g"] = r.lipschitz_g;
    j["L_fd"] = r.lipschitz_fd;
    j["L_gd"] = r.lipschitz_gd;
    j["C_f"] = matrix_json(r.correction_f);
    j["C_g"] = matrix_json(r.correction_g);
    j["norm_delta_z"] = r.norm_dz;
    j["delta_x0"] = r.delta_x0;
    j["certificates"] = json::array({to_json(r.condition_i), to_json(r.condition_ii), to_json(r.condition_iii)});
    j["width_limits"] = to_json(r.limits);
    return j;
}

} // namespace

CertificationReport certify(const SystemModel& model, const IntervalVector& x0,
                            const std::optional<LyapunovCandidate>& candidate) {
    CertificationReport r;
    r.lipschitz_f = model.lipschitz_f();
    r.lipschitz_g = model.lipschitz_g();
    r.lipschitz_fd = model.lipschitz_fd();
    r.lipschitz_gd = model.lipschitz_gd();
    r.correction_f = model.f_decomposition().correction();
    r.correction_g = model.g_decomposition().correction();
    r.norm_dz = model.delta_z().norm();
    r.delta_x0 = width(x0);

    const StabilityInputs in = stability_inputs(model);
    r.condition_i = check_condition_i(in);
    r.condition_ii = check_condition_ii(in);
    r.condition_iii = check_condition_iii(in, candidate);

    std::optional<Matrix> p;
    if (r.condition_iii.proof_verdict == Verdict::Holds) p = r.condition_iii.P;
    r.limits = width_limits(width_limit_inputs(model), x0.extent(), p);
    return r;
}

std::string report_to_json(const CertificationReport& report, int indent) { return to_json(report).dump(indent); }

std::string certificate_to_json(const StabilityCertificate& cert, int indent) { return to_json(cert).dump(indent); }

StabilityCertificate certificate_from_json(const std::string& text) {
    try {
        return certificate_from(json::parse(text));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Config, std::string("malformed certificate: ") + e.what());
    }
}

CertificationReport report_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        CertificationReport r;
        r.lipschitz_f = j.at("L_f").get<double>();
        r.lipschitz_g = j.at("L_g").get<double>();
        r.lipschitz_fd = j.at("L_fd").get<double>();
        r.lipschitz_gd = j.at("L_gd").get<double>();
        r.correction_f = matrix_from(j.at("C_f"));
        r.correction_g = matrix_from(j.at("C_g"));
        r.norm_dz = j.at("norm_delta_z").get<double>();
        r.delta_x0 = j.at("delta_x0").get<double>();
        const json& certs = j.at("certificates");
        r.condition_i = certificate_from(certs.at(0));
        r.condition_ii = certificate_from(certs.at(1));
        r.condition_iii = certificate_from(certs.at(2));
        r.limits = limits_from(j.at("width_limits"));
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Config, std::string("malformed report: ") + e.what());
    }
}

} // namespace sisio
