#include "ccorr/cli.hpp"

#include "ccorr/adaptive.hpp"
#include "ccorr/correntropy.hpp"
#include "ccorr/errors.hpp"
#include "ccorr/io.hpp"
#include "ccorr/sysid.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace ccorr::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int exit_code_for(const Error& e)
{
    return e.kind() == ErrorKind::Singularity || e.kind() == ErrorKind::Numeric ? kExitNumeric : kExitInput;
}

void write_text_file(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw io::InputError("cannot write " + path.string());
    f << text;
    if (!f)
        throw io::InputError("failed writing " + path.string());
}

io::CsvTable load_csv(const std::string& path, const std::vector<std::string>& expected_header)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io::InputError("cannot open " + path);
    return io::read_csv(in, path, expected_header);
}

struct IdentifyArgs {
    std::string config;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
};

int cmd_identify(const IdentifyArgs& a, std::ostream& out)
{
    ExperimentConfig cfg = io::load_config(a.config);
    if (a.seed)
        cfg.seed = *a.seed;

    const std::string started = utc_timestamp();
    const WsnrTrace trace = monte_carlo_average(cfg, a.threads);
    const std::string finished = utc_timestamp();

    const fs::path dir(a.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw io::InputError("cannot create output directory " + dir.string() + ": " + ec.message());

    const fs::path csv_path = dir / "wsnr.csv";
    const fs::path manifest_path = dir / "manifest.json";

    std::ostringstream csv;
    io::write_wsnr_csv(csv, trace);
    write_text_file(csv_path, csv.str());

    const json manifest{
        {"tool_version", kToolVersion},
        {"started", started},
        {"finished", finished},
        {"config_echo", io::config_to_json(cfg)},
        {"outputs", json::array({csv_path.string()})},
    };
    write_text_file(manifest_path, manifest.dump(2) + "\n");

    out << "wrote " << csv_path.string() << " and " << manifest_path.string() << "\n";
    return kExitOk;
}

struct CorrentropyArgs {
    std::string input;
    double sigma = 0.0;
    std::string mode;
};

int cmd_correntropy(const CorrentropyArgs& a, std::ostream& out)
{
    if (!(a.sigma > 0.0) || !std::isfinite(a.sigma))
        throw io::InputError("--sigma must be finite and > 0");
    const KernelConfig kernel(a.sigma);

    double value = 0.0;
    if (a.mode == "real") {
        const auto table = load_csv(a.input, {"x", "y"});
        if (table.rows.empty())
            throw io::InputError(a.input + ": no data rows");
        if (table.rows.front().size() != 2)
            throw io::InputError(a.input + ": real mode expects 2 columns x,y");
        std::vector<double> x, y;
        for (const auto& r : table.rows) {
            x.push_back(r[0]);
            y.push_back(r[1]);
        }
        value = correntropy_real(x, y, kernel);
    } else {
        const auto table = load_csv(a.input, {"x_re", "x_im", "y_re", "y_im"});
        if (table.rows.empty())
            throw io::InputError(a.input + ": no data rows");
        if (table.rows.front().size() != 4)
            throw io::InputError(a.input + ": complex mode expects 4 columns x_re,x_im,y_re,y_im");
        std::vector<Complex> c1, c2;
        for (const auto& r : table.rows) {
            c1.emplace_back(r[0], r[1]);
            c2.emplace_back(r[2], r[3]);
        }
        value = complex_correntropy(c1, c2, kernel);
    }
    out << io::format_double(value) << "\n";
    return kExitOk;
}

struct BatchArgs {
    std::string input;
    double sigma = 0.0;
    std::string out_path;
    double reg_delta = 0.0;
    int max_iter = 100;
    double tol = 1e-8;
};

int cmd_batch_solve(const BatchArgs& a, std::ostream& out)
{
    if (!(a.sigma > 0.0) || !std::isfinite(a.sigma))
        throw io::InputError("--sigma must be finite and > 0");
    if (!(a.reg_delta >= 0.0) || !std::isfinite(a.reg_delta))
        throw io::InputError("--reg-delta must be finite and >= 0");
    if (a.max_iter < 1)
        throw io::InputError("--max-iter must be >= 1");
    if (!(a.tol > 0.0) || !std::isfinite(a.tol))
        throw io::InputError("--tol must be finite and > 0");

    const auto table = load_csv(a.input, {});
    if (table.rows.empty())
        throw io::InputError(a.input + ": no data rows");
    const std::size_t width = table.rows.front().size();
    if (width < 4 || width % 2 != 0)
        throw io::InputError(a.input + ": expected interleaved re/im input columns followed by d_re,d_im");
    if (!table.header.empty()) {
        const auto& h = table.header;
        if (h[width - 2] != "d_re" || h[width - 1] != "d_im")
            throw io::InputError(a.input + ": last two header columns must be d_re,d_im");
    }
    const std::size_t taps = width / 2 - 1;
    const std::size_t n = table.rows.size();
    if (n < taps)
        throw io::InputError(a.input + ": " + std::to_string(n) + " samples is fewer than " + std::to_string(taps) +
                             " taps");

    ComplexMatrix X(n, taps);
    std::vector<Complex> d(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto& row = table.rows[r];
        for (std::size_t m = 0; m < taps; ++m)
            X(r, m) = {row[2 * m], row[2 * m + 1]};
        d[r] = {row[width - 2], row[width - 1]};
    }

    SolverOptions opts;
    opts.sigma = a.sigma;
    opts.reg_delta = a.reg_delta;
    opts.max_iter = a.max_iter;
    opts.tol = a.tol;
    const BatchResult result = mccc_batch_fixed_point(X, d, opts);

    json weights = json::array();
    for (const Complex& w : result.weights)
        weights.push_back(json::array({w.real(), w.imag()}));
    const json doc{
        {"weights", weights},
        {"iterations", result.iterations},
        {"converged", result.converged},
        {"sigma", a.sigma},
        {"reg_delta", a.reg_delta},
        {"n_samples", n},
    };
    write_text_file(a.out_path, doc.dump(2) + "\n");
    out << "wrote " << a.out_path << "\n";
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Complex correntropy estimators, MCCC solvers and the system-identification benchmark", "ccorr"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    IdentifyArgs ida;
    auto* identify = app.add_subcommand("identify", "Run the Monte Carlo system-identification experiment");
    identify->add_option("config", ida.config, "Experiment config (JSON)")->required();
    identify->add_option("--out", ida.out_dir, "Output directory for wsnr.csv and manifest.json")->required();
    identify->add_option("--seed", ida.seed, "Override the config seed");
    identify->add_option("--threads", ida.threads, "Worker threads (0 = hardware concurrency)");

    CorrentropyArgs cra;
    auto* corr = app.add_subcommand("correntropy", "Estimate correntropy between paired samples");
    corr->add_option("input", cra.input, "CSV with columns x,y (real) or x_re,x_im,y_re,y_im (complex)")->required();
    corr->add_option("--sigma", cra.sigma, "Kernel size")->required();
    corr->add_option("--mode", cra.mode, "real or complex")->required()->check(CLI::IsMember({"real", "complex"}));

    BatchArgs ba;
    auto* batch = app.add_subcommand("batch-solve", "Fixed-point MCCC fit of linear filter weights");
    batch->add_option("input", ba.input, "CSV: x1_re,x1_im,...,xM_re,xM_im,d_re,d_im")->required();
    batch->add_option("--sigma", ba.sigma, "Kernel size")->required();
    batch->add_option("--out", ba.out_path, "Output JSON file")->required();
    batch->add_option("--reg-delta", ba.reg_delta, "Diagonal regularizer added to the weighted autocorrelation");
    batch->add_option("--max-iter", ba.max_iter, "Maximum fixed-point sweeps");
    batch->add_option("--tol", ba.tol, "Relative weight-change tolerance");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (identify->parsed())
            return cmd_identify(ida, out);
        if (corr->parsed())
            return cmd_correntropy(cra, out);
        return cmd_batch_solve(ba, out);
    } catch (const io::InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

} // namespace ccorr::cli
