#ifndef HCDIFF_REPORT_HPP
#define HCDIFF_REPORT_HPP

#include "hcdiff/harness.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hcdiff
{

inline constexpr const char* kToolName = "hcdiff";
inline constexpr const char* kToolVersion = "1.0.0";

/// Provenance shared by every output of one command invocation. The hash
/// covers tool version, config echo and RNG id, never the timestamp.
struct RunManifest
{
    std::string command;
    std::string config_echo;
    std::optional<std::string> timestamp;
    /// Files written by the command, as given on the command line. Listed in
    /// the JSON but not hashed, so the hash depends only on what was computed.
    std::vector<std::string> outputs;

    std::string hash() const;
    nlohmann::json to_json() const;
};

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view data);

/// "delta,n,gamma,cross_card,error_l2,error_c,noise_norm,wall_ms" plus one row
/// per record.
std::string experiment_csv(const ExperimentResult& result);

nlohmann::json experiment_json(const ExperimentResult& result, const RunManifest& manifest);

/// Log-log error-versus-delta plot, 600 x 400, with the measured errors and a
/// reference line of the theoretical slope (fitted slope when no theory
/// applies) through the geometric centre of the data.
std::string experiment_svg(const ExperimentResult& result, const RunManifest& manifest);

nlohmann::json radius_json(const RadiusReport& report, const RunManifest& manifest);

/// p as a JSON value: a number, or the string "inf".
nlohmann::json p_to_json(double p);

} // namespace hcdiff

#endif // HCDIFF_REPORT_HPP
