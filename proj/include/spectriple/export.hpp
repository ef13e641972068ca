#pragma once

#include <string>

#include <json.hpp>

#include "spectriple/dirac.hpp"
#include "spectriple/homogenize.hpp"

namespace spectriple {

/// {radius, sphere_sizes[], elements[{index, length, normal_form_string, p,
/// p_s{symbol: count}}]}; counts as decimal strings.
nlohmann::ordered_json ball_json(const BallTable& table, const GeodesicCounts& counts);

/// CSV `g_index,length,r_squared_num,r_squared_den,eigenvalue,multiplicity`,
/// one header line, eigenvalues as shortest round-trip decimals.
std::string spectrum_csv(const std::vector<SpectrumRow>& rows);

/// Coordinate-list text: header `dim N`, then `row col num/den` lines in row
/// then column order.
std::string operator_dump(const SparseRatMat& m);

nlohmann::ordered_json classification_json(const ClassificationReport& report);

/// One entry of the diagnostics `checks` array.
nlohmann::ordered_json check_entry(const std::string& name, const std::string& status,
                                   const std::string& margin);

}  // namespace spectriple
