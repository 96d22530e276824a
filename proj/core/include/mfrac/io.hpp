#pragma once

#include <string>
#include <vector>

#include "mfrac/difference.hpp"
#include "mfrac/function.hpp"
#include "mfrac/oracle.hpp"
#include "mfrac/pde.hpp"
#include "mfrac/transform.hpp"

namespace mfrac {

/// 17 significant digits: the shortest format that round-trips every double.
std::string format_g17(double v);

void write_function_csv(const std::string& path, const LogGrid& grid,
                        const std::vector<cplx>& values);  // columns x, re, im
void write_spectrum_csv(const std::string& path, const MellinSpectrum& spec);  // t, re, im
void write_field_csv(const std::string& path, const PdeSolution& sol);        // x, y, w

/// Reads a two- or three-column CSV (x, re[, im]) into a sampled function.
/// The x column must be log-uniform.
MellinFunction read_function_csv(const std::string& path);

/// Convergence report of the strong-derivative estimate as a JSON document
/// with fields h, estimate_norm, successive_diff.
std::string strong_report_json(const StrongDerivativeReport& report);

/// Oracle fixtures: family, op, alpha, c, b, k, x, re, im per row.
std::string oracle_case_csv_row(const OracleCase& oc, cplx value);
void write_oracle_fixture(const std::string& path,
                          const std::vector<std::pair<OracleCase, cplx>>& cases);

}  // namespace mfrac
