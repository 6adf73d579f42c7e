#include "ccorr/io.hpp"

#include "ccorr/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace ccorr::io {

using nlohmann::json;

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

std::optional<double> parse_double(std::string_view token)
{
    while (!token.empty() && (token.front() == ' ' || token.front() == '\t'))
        token.remove_prefix(1);
    while (!token.empty() && (token.back() == ' ' || token.back() == '\t'))
        token.remove_suffix(1);
    if (!token.empty() && token.front() == '+')
        token.remove_prefix(1);
    if (token.empty())
        return std::nullopt;
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        return std::nullopt;
    return v;
}

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what)
{
    throw InputError("config field '" + field + "': " + what);
}

const json& required(const json& obj, const std::string& key, const std::string& path)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        field_error(path + key, "missing");
    return *it;
}

double as_number(const json& v, const std::string& field)
{
    if (!v.is_number())
        field_error(field, "expected a number");
    return v.get<double>();
}

long long as_integer(const json& v, const std::string& field)
{
    if (!v.is_number_integer())
        field_error(field, "expected an integer");
    return v.get<long long>();
}

bool as_bool(const json& v, const std::string& field)
{
    if (!v.is_boolean())
        field_error(field, "expected true or false");
    return v.get<bool>();
}

Complex as_complex(const json& v, const std::string& field)
{
    if (!v.is_array() || v.size() != 2)
        field_error(field, "expected [re, im]");
    return {as_number(v[0], field + "[0]"), as_number(v[1], field + "[1]")};
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& path)
{
    for (const auto& [key, _] : obj.items())
        if (!known.contains(key))
            field_error(path + key, "unknown field");
}

json complex_to_json(Complex c)
{
    return json::array({c.real(), c.imag()});
}

} // namespace

ExperimentConfig config_from_json(const json& j)
{
    if (!j.is_object())
        throw InputError("config must be a JSON object");
    reject_unknown(j,
                   {"true_weights", "n_iterations", "n_trials", "noise", "sigma_list", "rls_lambda", "reg_delta",
                    "seed", "clean", "unit_total_variance", "average_mode"},
                   "");

    ExperimentConfig cfg;

    const json& weights = required(j, "true_weights", "");
    if (!weights.is_array() || weights.empty())
        field_error("true_weights", "expected a non-empty array of [re, im] pairs");
    for (std::size_t i = 0; i < weights.size(); ++i)
        cfg.true_weights.push_back(as_complex(weights[i], "true_weights[" + std::to_string(i) + "]"));

    const long long iters = as_integer(required(j, "n_iterations", ""), "n_iterations");
    if (iters < 1 || iters > 100'000'000)
        field_error("n_iterations", "must be >= 1");
    cfg.n_iterations = static_cast<int>(iters);

    const long long trials = as_integer(required(j, "n_trials", ""), "n_trials");
    if (trials < 1 || trials > 100'000'000)
        field_error("n_trials", "must be >= 1");
    cfg.n_trials = static_cast<int>(trials);

    const json& noise = required(j, "noise", "");
    if (!noise.is_object())
        field_error("noise", "expected an object");
    reject_unknown(noise, {"components", "convention"}, "noise.");
    const json& comps = required(noise, "components", "noise.");
    if (!comps.is_array() || comps.empty())
        field_error("noise.components", "expected a non-empty array");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string path = "noise.components[" + std::to_string(i) + "].";
        const json& c = comps[i];
        if (!c.is_object())
            field_error(path.substr(0, path.size() - 1), "expected an object");
        reject_unknown(c, {"weight", "mean", "scale"}, path);
        cfg.noise.components.push_back({as_number(required(c, "weight", path), path + "weight"),
                                        as_number(required(c, "mean", path), path + "mean"),
                                        as_number(required(c, "scale", path), path + "scale")});
    }
    if (const auto it = noise.find("convention"); it != noise.end()) {
        if (*it == "std")
            cfg.noise.convention = ScaleConvention::StdDev;
        else if (*it == "variance")
            cfg.noise.convention = ScaleConvention::Variance;
        else
            field_error("noise.convention", "expected \"std\" or \"variance\"");
    }

    const json& sigmas = required(j, "sigma_list", "");
    if (!sigmas.is_array() || sigmas.empty())
        field_error("sigma_list", "expected a non-empty array");
    for (std::size_t i = 0; i < sigmas.size(); ++i)
        cfg.sigma_list.push_back(as_number(sigmas[i], "sigma_list[" + std::to_string(i) + "]"));

    cfg.rls_lambda = as_number(required(j, "rls_lambda", ""), "rls_lambda");
    cfg.reg_delta = as_number(required(j, "reg_delta", ""), "reg_delta");

    const json& seed = required(j, "seed", "");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
        field_error("seed", "expected a non-negative integer");
    cfg.seed = seed.get<std::uint64_t>();

    if (const auto it = j.find("clean"); it != j.end())
        cfg.clean = as_bool(*it, "clean");
    if (const auto it = j.find("unit_total_variance"); it != j.end())
        cfg.unit_total_variance = as_bool(*it, "unit_total_variance");
    if (const auto it = j.find("average_mode"); it != j.end()) {
        if (*it == "db")
            cfg.average_mode = AverageMode::Decibel;
        else if (*it == "linear")
            cfg.average_mode = AverageMode::Linear;
        else
            field_error("average_mode", "expected \"db\" or \"linear\"");
    }

    try {
        cfg.validate();
    } catch (const Error& e) {
        throw InputError(std::string("invalid config: ") + e.what());
    }
    return cfg;
}

json config_to_json(const ExperimentConfig& cfg)
{
    json weights = json::array();
    for (const Complex& w : cfg.true_weights)
        weights.push_back(complex_to_json(w));
    json comps = json::array();
    for (const auto& c : cfg.noise.components)
        comps.push_back({{"weight", c.weight}, {"mean", c.mean}, {"scale", c.scale}});

    return json{
        {"true_weights", weights},
        {"n_iterations", cfg.n_iterations},
        {"n_trials", cfg.n_trials},
        {"noise",
         {{"components", comps},
          {"convention", cfg.noise.convention == ScaleConvention::StdDev ? "std" : "variance"}}},
        {"sigma_list", cfg.sigma_list},
        {"rls_lambda", cfg.rls_lambda},
        {"reg_delta", cfg.reg_delta},
        {"seed", cfg.seed},
        {"clean", cfg.clean},
        {"unit_total_variance", cfg.unit_total_variance},
        {"average_mode", cfg.average_mode == AverageMode::Decibel ? "db" : "linear"},
    };
}

json parse_json_text(const std::string& text, const std::string& source_name)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(source_name + ":" + std::to_string(line) + ":" + std::to_string(col) +
                         ": JSON syntax error: " + e.what());
    }
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const json j = parse_json_text(buf.str(), path.string());
    try {
        return config_from_json(j);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

namespace {

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

} // namespace

CsvTable read_csv(std::istream& in, const std::string& source_name, const std::vector<std::string>& expected_header)
{
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (trim(line).empty())
            continue;
        const auto fields = split_fields(line);
        const std::string where = source_name + ":" + std::to_string(line_no) + ": ";

        std::vector<double> values;
        values.reserve(fields.size());
        bool numeric = true;
        for (const auto& f : fields) {
            const auto v = parse_double(f);
            if (!v) {
                numeric = false;
                break;
            }
            values.push_back(*v);
        }

        if (first && !numeric) {
            for (const auto& f : fields)
                table.header.push_back(trim(f));
            if (!expected_header.empty() && table.header != expected_header) {
                std::string want;
                for (const auto& h : expected_header)
                    want += (want.empty() ? "" : ",") + h;
                throw InputError(where + "unexpected header, expected '" + want + "'");
            }
            width = table.header.size();
            first = false;
            continue;
        }
        first = false;
        if (!numeric)
            throw InputError(where + "malformed numeric row");
        for (double v : values)
            if (!std::isfinite(v))
                throw InputError(where + "non-finite value");
        if (width == 0)
            width = values.size();
        if (values.size() != width)
            throw InputError(where + "expected " + std::to_string(width) + " columns, found " +
                             std::to_string(values.size()));
        table.rows.push_back(std::move(values));
    }
    if (!expected_header.empty() && width != 0 && width != expected_header.size())
        throw InputError(source_name + ": expected " + std::to_string(expected_header.size()) + " columns");
    return table;
}

void write_wsnr_csv(std::ostream& out, const WsnrTrace& trace)
{
    out << "iteration,algorithm,sigma,wsnr_db\n";
    const std::size_t n = trace.n_iterations();
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& s : trace.series) {
            out << std::to_string(i + 1) << ',' << to_string(s.algorithm) << ',';
            if (s.algorithm == Algorithm::Mccc)
                out << format_double(s.sigma);
            out << ',' << format_double(s.wsnr_db[i]) << '\n';
        }
    }
}

} // namespace ccorr::io
