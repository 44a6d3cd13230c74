#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sisio/simulate.hpp"

namespace sisio {

struct TraceDims {
    std::size_t n = 0, m = 0, l = 0, p = 0;
};

[[nodiscard]] TraceDims dims_of(const SystemModel& model);

// k,x_true_1..n,d_true_1..p,y_1..l,u_1..m
[[nodiscard]] std::string truth_header(const TraceDims& dims);
// truth columns, then x_lo/x_hi/d_lo/d_hi, width_x, width_d, delta_x,
// delta_d, err_x, err_d, contained
[[nodiscard]] std::string trace_header(const TraceDims& dims);

// Values are written with 17 significant digits so that reading a file back
// reproduces every double exactly.
void write_truth_csv(std::ostream& out, const TruthTrace& truth, const TraceDims& dims);
void write_trace_csv(std::ostream& out, const TracePair& pair, const TraceDims& dims);

[[nodiscard]] TruthTrace read_truth_csv(std::istream& in, const TraceDims& dims);

void write_truth_csv(const std::filesystem::path& path, const TruthTrace& truth, const TraceDims& dims);
void write_trace_csv(const std::filesystem::path& path, const TracePair& pair, const TraceDims& dims);
[[nodiscard]] TruthTrace read_truth_csv(const std::filesystem::path& path, const TraceDims& dims);

[[nodiscard]] std::string format_double(double v);

} // namespace sisio
