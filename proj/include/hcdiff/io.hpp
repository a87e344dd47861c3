#ifndef HCDIFF_IO_HPP
#define HCDIFF_IO_HPP

#include "hcdiff/cross.hpp"
#include "hcdiff/spectral.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace hcdiff
{

/// Shortest decimal that reads back to the same double. Integral values keep
/// a trailing ".0"; infinities are written "inf" / "-inf".
std::string format_double(double x);

/// Accepts anything strtod does plus "inf" / "infinity" in any case.
double parse_double(std::string_view text);

/// "# coeffgrid v1" followed by "k\tj\tvalue" lines sorted by (k, j).
void write_coeff_grid(std::ostream& out, const CoeffGrid& c);
std::string coeff_grid_to_string(const CoeffGrid& c);

/// Throws ParameterError with the offending line number on malformed input.
CoeffGrid read_coeff_grid(std::istream& in);
CoeffGrid load_coeff_grid(const std::filesystem::path& path);

/// "# cross v1 n=<n> gamma=<g> r1=<r1> r2=<r2>" followed by "k\tj" lines.
void write_cross(std::ostream& out, const HyperbolicCross& cross);
std::string cross_to_string(const HyperbolicCross& cross);

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view contents);

} // namespace hcdiff

#endif // HCDIFF_IO_HPP
