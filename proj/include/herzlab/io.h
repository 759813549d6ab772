/**
 * @file io.h
 * @brief On-disk formats: field CSV + JSON header, multiplier / trajectory /
 *        breakdown CSV tables, and JSON check reports.
 *
 * Field layout (documented contract):
 *   <base>.json : {"dim": n, "halfwidth": X, "points_per_axis": N}
 *   <base>.csv  : header "index,re,im", one row per flattened sample
 *                 (row-major for dim = 2).
 */
#pragma once

#include <string>
#include <vector>

#include "herzlab/verify.h"

namespace herzlab {

void write_field(const SampledField& f, const std::string& base_path);
SampledField read_field(const std::string& base_path);

/// Columns: bin, xi_abs, m_0..m_jmax.
void write_multiplier_csv(const DyadicSystem& sys, const std::string& path);

/// Columns: level, annulus, contribution.
void write_breakdown_csv(const KtlBreakdown& b, const std::string& path);

/// Columns: time, norm (norm empty when the trace was not recorded).
void write_trajectory_csv(const Trajectory& tr, const std::string& path);

/// Columns: x, y.
void write_points_csv(const std::vector<std::array<double, 2>>& pts,
                      const std::string& path);

/// Serializes reports (plus the resolved run configuration) to JSON.  The
/// numeric payload is a deterministic function of config + seed; wall-clock
/// data lives in a separate "meta" block.
std::string report_to_json(const std::vector<CheckReport>& reports,
                           const std::string& resolved_config_json,
                           double runtime_sec);

}  // namespace herzlab
