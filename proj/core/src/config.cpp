#include "sisio/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sisio/error.hpp"

namespace sisio {

using nlohmann::json;

const char* to_string(NoiseMode mode) noexcept {
    return mode == NoiseMode::Uniform ? "uniform" : "extremal";
}

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

const json& section(const json& doc, const char* name) {
    if (!doc.contains(name)) config_error(std::string("missing section '") + name + "'");
    return doc.at(name);
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) config_error(where + " must be a number");
    return j.get<double>();
}

Vector vector_of(const json& j, std::size_t size, const std::string& where) {
    if (!j.is_array() || j.size() != size) {
        config_error(where + " must be an array of " + std::to_string(size) + " numbers");
    }
    Vector v(static_cast<Index>(size));
    for (std::size_t i = 0; i < size; ++i) v[static_cast<Index>(i)] = number(j[i], where);
    return v;
}

Matrix matrix_of(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
    Matrix a(static_cast<Index>(rows), static_cast<Index>(cols));
    if (rows * cols == 0) {
        if (j.is_array() && (j.empty() || j.size() == rows)) return a;
        config_error(where + " must be empty");
    }
    if (!j.is_array()) config_error(where + " must be an array");
    if (j.size() == rows && j[0].is_array()) {
        for (std::size_t r = 0; r < rows; ++r) {
            if (!j[r].is_array() || j[r].size() != cols) {
                config_error(where + " row " + std::to_string(r + 1) + " must have " + std::to_string(cols) + " entries");
            }
            for (std::size_t c = 0; c < cols; ++c)
                a(static_cast<Index>(r), static_cast<Index>(c)) = number(j[r][c], where);
        }
        return a;
    }
    if (j.size() != rows * cols) {
        config_error(where + " must be " + std::to_string(rows) + "x" + std::to_string(cols) + " (row-major)");
    }
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            a(static_cast<Index>(r), static_cast<Index>(c)) = number(j[r * cols + c], where);
    return a;
}

std::vector<std::string> strings_of(const json& j, std::size_t size, const std::string& where) {
    if (!j.is_array() || j.size() != size) {
        config_error(where + " must be an array of " + std::to_string(size) + " expressions");
    }
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) config_error(where + " entries must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::size_t dimension(const json& dims, const char* name) {
    if (!dims.contains(name) || !dims.at(name).is_number_integer() || dims.at(name).get<long long>() < 0) {
        config_error(std::string("dimensions.") + name + " must be a nonnegative integer");
    }
    return dims.at(name).get<std::size_t>();
}

JacobianBounds bounds_of(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
    JacobianBounds b{matrix_of(section(j, "low"), rows, cols, where + ".low"),
                     matrix_of(section(j, "high"), rows, cols, where + ".high")};
    if ((b.low.array() > b.high.array()).any()) config_error(where + ": low exceeds high");
    return b;
}

} // namespace

Config parse_config_document(const json& doc);

Config parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        config_error(std::string("malformed JSON: ") + e.what());
    }
    try {
        return parse_config_document(doc);
    } catch (const json::exception& e) {
        config_error(std::string("invalid config value: ") + e.what());
    }
}

Config parse_config_document(const json& doc) {
    Config cfg;
    ModelSpec& m = cfg.model;
    const json& dims = section(doc, "dimensions");
    m.n = dimension(dims, "n");
    m.m = dimension(dims, "m");
    m.l = dimension(dims, "l");
    m.p = dimension(dims, "p");

    const json& dyn = section(doc, "dynamics");
    m.f = strings_of(section(dyn, "f"), m.n, "dynamics.f");
    m.g = strings_of(section(dyn, "g"), m.l, "dynamics.g");

    const json& mats = section(doc, "matrices");
    m.B = matrix_of(section(mats, "B"), m.n, m.m, "matrices.B");
    m.D = matrix_of(section(mats, "D"), m.l, m.m, "matrices.D");
    m.G = matrix_of(section(mats, "G"), m.n, m.p, "matrices.G");
    m.H = matrix_of(section(mats, "H"), m.l, m.p, "matrices.H");

    const json& noise = section(doc, "noise");
    m.w_lo = vector_of(section(noise, "w_lo"), m.n, "noise.w_lo");
    m.w_hi = vector_of(section(noise, "w_hi"), m.n, "noise.w_hi");
    m.v_lo = vector_of(section(noise, "v_lo"), m.l, "noise.v_lo");
    m.v_hi = vector_of(section(noise, "v_hi"), m.l, "noise.v_hi");

    const json& dom = section(doc, "domain");
    try {
        m.domain = IntervalVector(vector_of(section(dom, "lo"), m.n, "domain.lo"),
                                  vector_of(section(dom, "hi"), m.n, "domain.hi"));
        const json& init = section(doc, "initial");
        cfg.x0 = IntervalVector(vector_of(section(init, "x0_lo"), m.n, "initial.x0_lo"),
                                vector_of(section(init, "x0_hi"), m.n, "initial.x0_hi"));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Config) throw;
        config_error(e.what());
    }

    if (doc.contains("jacobian_bounds")) {
        const json& jb = doc.at("jacobian_bounds");
        if (jb.contains("f")) m.f_bounds = bounds_of(jb.at("f"), m.n, m.n, "jacobian_bounds.f");
        if (jb.contains("g")) m.g_bounds = bounds_of(jb.at("g"), m.l, m.n, "jacobian_bounds.g");
    }
    if (doc.contains("grid")) {
        const json& grid = doc.at("grid");
        if (grid.contains("points_per_axis")) m.grid.points_per_axis = grid.at("points_per_axis").get<int>();
        if (grid.contains("relative_margin")) m.grid.relative_margin = number(grid.at("relative_margin"), "grid.relative_margin");
        if (grid.contains("absolute_margin")) m.grid.absolute_margin = number(grid.at("absolute_margin"), "grid.absolute_margin");
    }

    const json& sc = section(doc, "scenario");
    cfg.scenario.u = strings_of(section(sc, "u"), m.m, "scenario.u");
    cfg.scenario.d = strings_of(section(sc, "d"), m.p, "scenario.d");
    if (sc.contains("horizon")) cfg.scenario.horizon = sc.at("horizon").get<std::size_t>();
    if (sc.contains("seed")) cfg.scenario.seed = sc.at("seed").get<std::uint64_t>();
    if (sc.contains("noise_mode")) {
        const auto mode = sc.at("noise_mode").get<std::string>();
        if (mode == "uniform") {
            cfg.scenario.noise_mode = NoiseMode::Uniform;
        } else if (mode == "extremal") {
            cfg.scenario.noise_mode = NoiseMode::Extremal;
        } else {
            config_error("scenario.noise_mode must be 'uniform' or 'extremal'");
        }
    }
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config file " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

} // namespace sisio
