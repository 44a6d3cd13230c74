#include "sisio/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sisio/error.hpp"

namespace sisio {

TraceDims dims_of(const SystemModel& model) { return TraceDims{model.n(), model.m(), model.l(), model.p()}; }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void columns(std::string& out, const char* prefix, std::size_t count) {
    for (std::size_t i = 1; i <= count; ++i) {
        out += ',';
        out += prefix;
        out += std::to_string(i);
    }
}

void values(std::ostream& out, const Vector& v) {
    for (Index i = 0; i < v.size(); ++i) out << ',' << format_double(v[i]);
}

void truth_fields(std::ostream& out, const TruthTrace& t, std::size_t k) {
    out << k;
    values(out, t.x[k]);
    values(out, t.d[k]);
    values(out, t.y[k]);
    values(out, t.u[k]);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    return out;
}

} // namespace

std::string truth_header(const TraceDims& d) {
    std::string h = "k";
    columns(h, "x_true_", d.n);
    columns(h, "d_true_", d.p);
    columns(h, "y_", d.l);
    columns(h, "u_", d.m);
    return h;
}

std::string trace_header(const TraceDims& d) {
    std::string h = truth_header(d);
    columns(h, "x_lo_", d.n);
    columns(h, "x_hi_", d.n);
    columns(h, "d_lo_", d.p);
    columns(h, "d_hi_", d.p);
    h += ",width_x,width_d,delta_x,delta_d,err_x,err_d,contained";
    return h;
}

void write_truth_csv(std::ostream& out, const TruthTrace& truth, const TraceDims& dims) {
    out << truth_header(dims) << '\n';
    for (std::size_t k = 0; k < truth.size(); ++k) {
        truth_fields(out, truth, k);
        out << '\n';
    }
}

void write_trace_csv(std::ostream& out, const TracePair& pair, const TraceDims& dims) {
    out << trace_header(dims) << '\n';
    for (const auto& row : pair.rows) {
        truth_fields(out, pair.truth, row.k);
        const auto& s = row.estimate;
        values(out, s.x.lo());
        values(out, s.x.hi());
        values(out, s.d.lo());
        values(out, s.d.hi());
        out << ',' << format_double(row.width_x) << ',' << format_double(row.width_d) << ','
            << format_double(s.delta_x) << ',' << format_double(s.delta_d) << ',' << format_double(row.err_x) << ','
            << format_double(row.err_d) << ',' << (row.contained() ? 1 : 0) << '\n';
    }
}

TruthTrace read_truth_csv(std::istream& in, const TraceDims& dims) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::Io, "truth CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string expected = truth_header(dims);
    // Accept a full trace file too: its header starts with the truth columns.
    if (line.compare(0, expected.size(), expected) != 0 ||
        (line.size() > expected.size() && line[expected.size()] != ',')) {
        throw Error(ErrorKind::Io, "truth CSV header mismatch; expected '" + expected + "'");
    }
    const std::size_t width = 1 + dims.n + dims.p + dims.l + dims.m;

    TruthTrace t;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> fields;
        const char* p = line.data();
        const char* end = p + line.size();
        while (p <= end && fields.size() < width) {
            const char* comma = std::find(p, end, ',');
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(p, comma, v);
            if (ec != std::errc() || ptr != comma) {
                throw Error(ErrorKind::Io, "malformed number on truth CSV line " + std::to_string(line_no));
            }
            fields.push_back(v);
            p = comma + 1;
        }
        if (fields.size() != width) {
            throw Error(ErrorKind::Io, "truth CSV line " + std::to_string(line_no) + " has too few columns");
        }
        if (static_cast<std::size_t>(fields[0]) != t.size()) {
            throw Error(ErrorKind::Io, "truth CSV rows must be consecutive from k = 0");
        }
        std::size_t at = 1;
        auto take = [&](std::size_t count) {
            Vector v(static_cast<Index>(count));
            for (std::size_t i = 0; i < count; ++i) v[static_cast<Index>(i)] = fields[at++];
            return v;
        };
        t.x.push_back(take(dims.n));
        t.d.push_back(take(dims.p));
        t.y.push_back(take(dims.l));
        t.u.push_back(take(dims.m));
    }
    return t;
}

void write_truth_csv(const std::filesystem::path& path, const TruthTrace& truth, const TraceDims& dims) {
    auto out = open_for_write(path);
    write_truth_csv(out, truth, dims);
}

void write_trace_csv(const std::filesystem::path& path, const TracePair& pair, const TraceDims& dims) {
    auto out = open_for_write(path);
    write_trace_csv(out, pair, dims);
}

TruthTrace read_truth_csv(const std::filesystem::path& path, const TraceDims& dims) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    return read_truth_csv(in, dims);
}

} // namespace sisio
