#ifndef CCORR_IO_HPP
#define CCORR_IO_HPP

#include "ccorr/sysid.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ccorr::io {

/// Input that cannot be parsed. Maps to exit status 2 in the CLI.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Locale-independent, 17 significant digits (lossless for doubles).
std::string format_double(double v);

/// Strict locale-independent parse of a whole token; nullopt on failure.
std::optional<double> parse_double(std::string_view token);

/// Experiment config <-> JSON. Every member is written; reading requires the
/// core fields and fills the documented optional switches:
///   clean=false, unit_total_variance=false, average_mode="db",
///   noise.convention="std".
/// Unknown keys are rejected. Throws InputError naming the field.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Parses JSON text, reporting syntax errors with line and column.
nlohmann::json parse_json_text(const std::string& text, const std::string& source_name);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Numeric CSV table. A first line that does not parse as numbers is taken as
/// a header; when `expected_header` is given it must match exactly.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(std::istream& in,
                  const std::string& source_name,
                  const std::vector<std::string>& expected_header = {});

/// Long-format learning curves: iteration,algorithm,sigma,wsnr_db. The sigma
/// column is empty for RLS rows.
void write_wsnr_csv(std::ostream& out, const WsnrTrace& trace);

} // namespace ccorr::io

#endif // CCORR_IO_HPP
