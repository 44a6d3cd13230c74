#pragma once

#include <optional>
#include <string>

#include "sisio/model.hpp"
#include "sisio/stability.hpp"

namespace sisio {

struct CertificationReport {
    double lipschitz_f = 0.0;
    double lipschitz_g = 0.0;
    double lipschitz_fd = 0.0;
    double lipschitz_gd = 0.0;
    Matrix correction_f;
    Matrix correction_g;
    double norm_dz = 0.0;
    double delta_x0 = 0.0;
    StabilityCertificate condition_i;
    StabilityCertificate condition_ii;
    StabilityCertificate condition_iii;
    WidthLimits limits;
};

// Runs every certificate and the width-limit computation for `model`, with
// the initial box x0. A candidate (P, Gamma) replaces the scalar search for
// condition (iii).
[[nodiscard]] CertificationReport certify(const SystemModel& model, const IntervalVector& x0,
                                          const std::optional<LyapunovCandidate>& candidate = std::nullopt);

[[nodiscard]] std::string report_to_json(const CertificationReport& report, int indent = 2);
[[nodiscard]] CertificationReport report_from_json(const std::string& text);

[[nodiscard]] std::string certificate_to_json(const StabilityCertificate& cert, int indent = 2);
[[nodiscard]] StabilityCertificate certificate_from_json(const std::string& text);

} // namespace sisio
