#include "hcdiff/io.hpp"

#include "hcdiff/error.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hcdiff
{

std::string format_double(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    if (std::isnan(x))
        return "nan";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    std::string s(buf.data(), res.ptr);
    if (s.find_first_of(".eEn") == std::string::npos)
        s += ".0";
    return s;
}

double parse_double(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start])))
        ++start;
    s.erase(0, start);
    std::string lower;
    for (char ch : s)
        lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower == "inf" || lower == "+inf" || lower == "infinity")
        return HUGE_VAL;
    if (lower == "-inf" || lower == "-infinity")
        return -HUGE_VAL;

    double value = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+')
        ++first;
    const auto res = std::from_chars(first, s.data() + s.size(), value);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParameterError("not a number: '" + std::string(text) + "'");
    return value;
}

void write_coeff_grid(std::ostream& out, const CoeffGrid& c)
{
    out << "# coeffgrid v1\n";
    for (const auto& [idx, v] : c)
        out << idx.first << '\t' << idx.second << '\t' << format_double(v) << '\n';
}

std::string coeff_grid_to_string(const CoeffGrid& c)
{
    std::ostringstream out;
    write_coeff_grid(out, c);
    return out.str();
}

namespace
{
int parse_index(std::string_view field, int line_no)
{
    int value = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size() || value < 0)
        throw ParameterError("line " + std::to_string(line_no) + ": bad index '" + std::string(field) + "'");
    return value;
}
} // namespace

CoeffGrid read_coeff_grid(std::istream& in)
{
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line) || line != "# coeffgrid v1")
        throw ParameterError("line 1: expected header '# coeffgrid v1'");
    ++line_no;

    CoeffGrid c;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        const auto t1 = line.find('\t');
        const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string::npos)
            throw ParameterError("line " + std::to_string(line_no) + ": expected k<TAB>j<TAB>value");
        const std::string_view view(line);
        const int k = parse_index(view.substr(0, t1), line_no);
        const int j = parse_index(view.substr(t1 + 1, t2 - t1 - 1), line_no);
        double v = 0.0;
        try
        {
            v = parse_double(view.substr(t2 + 1));
        }
        catch (const ParameterError& e)
        {
            throw ParameterError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!std::isfinite(v))
            throw ParameterError("line " + std::to_string(line_no) + ": value must be finite");
        if (c.contains(k, j))
            throw ParameterError("line " + std::to_string(line_no) + ": duplicate index (" + std::to_string(k) +
                                 ", " + std::to_string(j) + ")");
        c.set(k, j, v);
    }
    return c;
}

CoeffGrid load_coeff_grid(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParameterError("cannot open " + path.string());
    return read_coeff_grid(in);
}

void write_cross(std::ostream& out, const HyperbolicCross& cross)
{
    out << "# cross v1 n=" << format_double(cross.n()) << " gamma=" << format_double(cross.gamma())
        << " r1=" << cross.r1() << " r2=" << cross.r2() << '\n';
    for (const auto& [k, j] : cross.indices())
        out << k << '\t' << j << '\n';
}

std::string cross_to_string(const HyperbolicCross& cross)
{
    std::ostringstream out;
    write_cross(out, cross);
    return out.str();
}

void atomic_write(const std::filesystem::path& path, std::string_view contents)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ParameterError("cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out)
            throw ParameterError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
    {
        std::filesystem::remove(tmp);
        throw ParameterError("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

} // namespace hcdiff
