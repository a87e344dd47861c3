#ifndef HCDIFF_CONFIG_HPP
#define HCDIFF_CONFIG_HPP

#include "hcdiff/harness.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace hcdiff
{

/// Reads an experiment config: "[section]" headers and "key = value" lines,
/// '#' or ';' comments. Sections and keys:
///
///   [class]    s, mu
///   [method]   r1, r2, p, metric (l2|c|both), gamma
///   [sweep]    delta_start, delta_stop, count
///   [noise]    mode (sphere|single|off), seed, realizations, support
///   [function] id, epsilon, k_ref, quadrature_order
///   [output]   sup_resolution, timing
///
/// Missing keys keep their defaults. Every unparsable value, unknown key and
/// failed range check is collected into a single ConfigError.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Canonical text of a config in the same format; parsing it back yields an
/// equal config.
std::string echo_config(const ExperimentConfig& config);

MetricSelection parse_metric_selection(std::string_view text);

} // namespace hcdiff

#endif // HCDIFF_CONFIG_HPP
