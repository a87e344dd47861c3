#include "hcdiff/config.hpp"

#include "hcdiff/error.hpp"
#include "hcdiff/io.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hcdiff
{

namespace pt = boost::property_tree;

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
          std::string msg = "invalid configuration";
          for (const auto& p : problems)
              msg += "\n  " + p;
          return msg;
      }()),
      problems_(std::move(problems))
{
}

MetricSelection parse_metric_selection(std::string_view text)
{
    if (text == "l2" || text == "L2")
        return MetricSelection::l2;
    if (text == "c" || text == "C")
        return MetricSelection::c;
    if (text == "both")
        return MetricSelection::both;
    throw ParameterError("unknown metric '" + std::string(text) + "' (expected l2, c or both)");
}

namespace
{
const std::map<std::string, std::set<std::string>>& known_keys()
{
    static const std::map<std::string, std::set<std::string>> keys{
        {"class", {"s", "mu"}},
        {"method", {"r1", "r2", "p", "metric", "gamma"}},
        {"sweep", {"delta_start", "delta_stop", "count"}},
        {"noise", {"mode", "seed", "realizations", "support"}},
        {"function", {"id", "epsilon", "k_ref", "quadrature_order"}},
        {"output", {"sup_resolution", "timing"}},
    };
    return keys;
}

template <class Int>
Int parse_integer(const std::string& text)
{
    Int value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ParameterError("not an integer: '" + text + "'");
    return value;
}

bool parse_bool(const std::string& text)
{
    if (text == "true" || text == "1" || text == "yes" || text == "on")
        return true;
    if (text == "false" || text == "0" || text == "no" || text == "off")
        return false;
    throw ParameterError("not a boolean: '" + text + "'");
}

// "2   ; note" -> "2". A marker only starts a comment after whitespace, so
// values such as "a;b" survive.
std::string strip_inline_comment(const std::string& text)
{
    for (std::size_t i = 1; i < text.size(); ++i)
        if ((text[i] == ';' || text[i] == '#') && std::isspace(static_cast<unsigned char>(text[i - 1])))
        {
            std::size_t end = i;
            while (end > 0 && std::isspace(static_cast<unsigned char>(text[end - 1])))
                --end;
            return text.substr(0, end);
        }
    return text;
}

class Reader
{
  public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    template <class T, class Parse>
    void read(const std::string& section, const std::string& key, T& target, Parse parse)
    {
        const auto node = tree_.get_child_optional(pt::ptree::path_type(section + "." + key, '.'));
        if (!node)
            return;
        try
        {
            target = parse(strip_inline_comment(node->data()));
        }
        catch (const std::exception& e)
        {
            problems_.push_back(section + "." + key + ": " + e.what());
        }
    }

    std::vector<std::string>& problems() { return problems_; }

  private:
    const pt::ptree& tree_;
    std::vector<std::string> problems_;
};
} // namespace

ExperimentConfig parse_experiment_config(std::istream& in)
{
    pt::ptree tree;
    try
    {
        pt::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error& e)
    {
        throw ConfigError({"syntax: line " + std::to_string(e.line()) + ": " + e.message()});
    }

    std::vector<std::string> unknown;
    for (const auto& [section, body] : tree)
    {
        const auto it = known_keys().find(section);
        if (it == known_keys().end())
        {
            unknown.push_back(section + ": unknown section");
            continue;
        }
        if (body.empty() && !body.data().empty())
        {
            unknown.push_back(section + ": key outside any section");
            continue;
        }
        for (const auto& [key, value] : body)
            if (!it->second.count(key))
                unknown.push_back(section + "." + key + ": unknown key");
    }

    ExperimentConfig cfg;
    Reader r(tree);
    auto real = [](const std::string& t) { return parse_double(t); };
    auto integer = [](const std::string& t) { return parse_integer<int>(t); };
    r.read("class", "s", cfg.cls.s, real);
    r.read("class", "mu", cfg.cls.mu, real);
    r.read("method", "r1", cfg.r1, integer);
    r.read("method", "r2", cfg.r2, integer);
    r.read("method", "p", cfg.p, real);
    r.read("method", "metric", cfg.metric, [](const std::string& t) { return parse_metric_selection(t); });
    r.read("method", "gamma", cfg.gamma, [](const std::string& t) -> std::optional<double> {
        if (t.empty() || t == "auto")
            return std::nullopt;
        return parse_double(t);
    });
    r.read("sweep", "delta_start", cfg.delta_start, real);
    r.read("sweep", "delta_stop", cfg.delta_stop, real);
    r.read("sweep", "count", cfg.delta_count, integer);
    r.read("noise", "mode", cfg.noise_mode, [](const std::string& t) {
        const auto mode = parse_noise_mode(t);
        if (!mode)
            throw ParameterError("unknown noise mode '" + t + "' (expected sphere, single or off)");
        return *mode;
    });
    r.read("noise", "seed", cfg.seed, [](const std::string& t) { return parse_integer<std::uint64_t>(t); });
    r.read("noise", "realizations", cfg.realizations, integer);
    r.read("noise", "support", cfg.noise_support, integer);
    r.read("function", "id", cfg.function_id, [](const std::string& t) { return t; });
    r.read("function", "epsilon", cfg.epsilon, real);
    r.read("function", "k_ref", cfg.k_ref, integer);
    r.read("function", "quadrature_order", cfg.quadrature_order, integer);
    r.read("output", "sup_resolution", cfg.sup_resolution, integer);
    r.read("output", "timing", cfg.timing, parse_bool);

    std::vector<std::string> problems = std::move(unknown);
    problems.insert(problems.end(), r.problems().begin(), r.problems().end());
    if (problems.empty())
        for (auto& p : cfg.problems())
            problems.push_back(std::move(p));
    if (!problems.empty())
        throw ConfigError(std::move(problems));
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError({"cannot open config file " + path.string()});
    return parse_experiment_config(in);
}

std::string echo_config(const ExperimentConfig& c)
{
    std::ostringstream out;
    out << "[class]\n"
        << "s = " << format_double(c.cls.s) << "\n"
        << "mu = " << format_double(c.cls.mu) << "\n\n"
        << "[method]\n"
        << "r1 = " << c.r1 << "\n"
        << "r2 = " << c.r2 << "\n"
        << "p = " << format_double(c.p) << "\n"
        << "metric = " << to_string(c.metric) << "\n"
        << "gamma = " << (c.gamma ? format_double(*c.gamma) : std::string("auto")) << "\n\n"
        << "[sweep]\n"
        << "delta_start = " << format_double(c.delta_start) << "\n"
        << "delta_stop = " << format_double(c.delta_stop) << "\n"
        << "count = " << c.delta_count << "\n\n"
        << "[noise]\n"
        << "mode = " << to_string(c.noise_mode) << "\n"
        << "seed = " << c.seed << "\n"
        << "realizations = " << c.realizations << "\n"
        << "support = " << c.noise_support << "\n\n"
        << "[function]\n"
        << "id = " << c.function_id << "\n"
        << "epsilon = " << format_double(c.epsilon) << "\n"
        << "k_ref = " << c.k_ref << "\n"
        << "quadrature_order = " << c.quadrature_order << "\n\n"
        << "[output]\n"
        << "sup_resolution = " << c.sup_resolution << "\n"
        << "timing = " << (c.timing ? "true" : "false") << "\n";
    return out.str();
}

} // namespace hcdiff
