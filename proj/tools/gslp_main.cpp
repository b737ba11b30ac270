// gslp: group-sparse lp-minimization grayscale image denoiser.
//
// Subcommands: add-noise, denoise, metrics, bench. Data goes to stdout,
// diagnostics to stderr. All randomness flows from --seed.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gslp/denoise.hpp"
#include "gslp/image.hpp"
#include "gslp/metrics.hpp"

namespace fs = std::filesystem;
using namespace gslp;

namespace {

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Flat `key = value` config files, a subset of TOML: blank lines and
// #-comments are allowed, unknown keys are hard errors.
void apply_config_file(DenoiseConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);

    const std::map<std::string, double*> real_keys = {
        {"p", &cfg.p},       {"c", &cfg.c},          {"lambda", &cfg.lambda},
        {"delta", &cfg.delta}, {"rho", &cfg.rho},    {"epsilon", &cfg.epsilon},
    };
    const std::map<std::string, int*> int_keys = {
        {"patch_side", &cfg.patch_side},   {"stride", &cfg.stride},
        {"window_side", &cfg.window_side}, {"group_size", &cfg.group_size},
        {"gst_iters", &cfg.gst_iters},     {"outer_iters", &cfg.outer_iters},
    };
    const std::map<std::string, bool*> bool_keys = {
        {"use_aps", &cfg.use_aps},
        {"aps_on_estimates", &cfg.aps_on_estimates},
        {"weights_use_input_sigma", &cfg.weights_use_input_sigma},
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");

        try {
            if (const auto it = real_keys.find(key); it != real_keys.end()) {
                std::size_t used = 0;
                *it->second = std::stod(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
            } else if (const auto it2 = int_keys.find(key); it2 != int_keys.end()) {
                std::size_t used = 0;
                *it2->second = std::stoi(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
            } else if (const auto it3 = bool_keys.find(key); it3 != bool_keys.end()) {
                if (value == "true" || value == "1")
                    *it3->second = true;
                else if (value == "false" || value == "0")
                    *it3->second = false;
                else
                    throw std::invalid_argument(value);
            } else {
                throw std::runtime_error("unknown config key: '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("config key '" + key + "' has a malformed value: '" + value + "'");
        } catch (const std::out_of_range&) {
            throw std::runtime_error("config key '" + key + "' has a malformed value: '" + value + "'");
        }
    }
}

const char* target_name(SearchTarget t) { return t == SearchTarget::Theta ? "theta" : "iterate"; }

// ---------------------------------------------------------------------------

struct AddNoiseArgs {
    std::string input, output;
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

int run_add_noise(const AddNoiseArgs& args) {
    const Image img = load_image(args.input);
    const Image noisy = add_gaussian_noise(img, {args.sigma, args.seed});

    double mean = 0.0;
    for (std::size_t i = 0; i < img.size(); ++i) mean += noisy.pixels[i] - img.pixels[i];
    mean /= static_cast<double>(img.size());
    double var = 0.0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        const double d = noisy.pixels[i] - img.pixels[i] - mean;
        var += d * d;
    }
    std::cerr << "empirical_std=" << fmt(std::sqrt(var / static_cast<double>(img.size()))) << "\n";

    save_image(noisy, args.output);
    return 0;
}

struct DenoiseArgs {
    std::string input, output;
    double sigma = 0.0;
    std::string prefilter, config, reference;
    std::uint64_t seed = 0;
    bool no_aps = false;
    int iters = -1;
};

int run_denoise(const DenoiseArgs& args) {
    DenoiseConfig cfg = DenoiseConfig::defaults_for_sigma(args.sigma);
    if (!args.config.empty()) apply_config_file(cfg, args.config);
    if (args.iters > 0) cfg.outer_iters = args.iters;
    if (args.no_aps) cfg.use_aps = false;
    cfg.validate();

    const Image noisy = load_image(args.input);

    Image theta;
    if (!cfg.use_aps) {
        theta = Image(noisy.width, noisy.height, 0.0);  // never read
    } else if (!args.prefilter.empty()) {
        theta = load_image(args.prefilter);
        if (!theta.same_size(noisy)) throw std::runtime_error("pre-filtered image dimension mismatch");
    } else {
        std::cerr << "no --prefilter given; bootstrapping a search reference from the noisy input\n";
        theta = bootstrap_prefilter(noisy, cfg);
    }

    std::optional<Image> reference;
    if (!args.reference.empty()) {
        reference = load_image(args.reference);
        if (!reference->same_size(noisy)) throw std::runtime_error("reference image dimension mismatch");
    }

    std::cout << "iter\tsigma\tsearch";
    if (reference) std::cout << "\tpsnr\tssim";
    std::cout << "\n";

    const Image out = denoise(noisy, theta, cfg, [&](const IterationInfo& info) {
        std::cout << info.t << "\t" << fmt(info.sigma_t) << "\t" << target_name(info.target);
        if (reference)
            std::cout << "\t" << fmt(psnr(*reference, info.estimate)) << "\t"
                      << fmt(ssim(*reference, info.estimate));
        std::cout << "\n";
    });

    save_image(out, args.output);
    return 0;
}

struct MetricsArgs {
    std::string reference, test;
};

int run_metrics(const MetricsArgs& args) {
    const Image ref = load_image(args.reference);
    const Image tst = load_image(args.test);
    std::cout << "psnr=" << fmt(psnr(ref, tst)) << " ssim=" << fmt(ssim(ref, tst)) << "\n";
    return 0;
}

struct BenchArgs {
    std::string dir, prefilter_dir;
    std::string sigmas = "20,30,40,50";
    std::uint64_t seed = 0;
};

std::vector<double> parse_sigmas(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string tok = trim(csv.substr(pos, comma == std::string::npos ? csv.size() - pos : comma - pos));
        if (!tok.empty()) out.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::runtime_error("no sigma values given");
    return out;
}

int run_bench(const BenchArgs& args) {
    std::vector<fs::path> images;
    for (const auto& entry : fs::directory_iterator(args.dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == ".pgm" || ext == ".png") images.push_back(entry.path());
    }
    if (images.empty()) throw std::runtime_error("no .pgm or .png images in directory: " + args.dir);
    std::sort(images.begin(), images.end());

    const std::vector<double> sigmas = parse_sigmas(args.sigmas);

    std::cout << "image\tsigma\tpsnr_noisy\tpsnr\tssim\tseconds\n";
    std::uint64_t task = 0;
    for (const double sigma : sigmas) {
        double sum_noisy = 0.0, sum_psnr = 0.0, sum_ssim = 0.0, sum_secs = 0.0;
        for (const fs::path& path : images) {
            const Image clean = load_image(path.string());
            // one deterministic noise stream per (sigma, image) task
            const Image noisy = add_gaussian_noise(clean, {sigma, args.seed + task});
            ++task;

            const DenoiseConfig cfg = DenoiseConfig::defaults_for_sigma(sigma);
            const auto t0 = std::chrono::steady_clock::now();
            Image theta;
            if (!args.prefilter_dir.empty()) {
                const fs::path cand = fs::path(args.prefilter_dir) / path.filename();
                if (!fs::exists(cand))
                    throw std::runtime_error("missing pre-filtered image: " + cand.string());
                theta = load_image(cand.string());
            } else {
                theta = bootstrap_prefilter(noisy, cfg);
            }
            const Image out = denoise(noisy, theta, cfg);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

            const double p_noisy = psnr(clean, noisy);
            const double p_out = psnr(clean, out);
            const double s_out = ssim(clean, out);
            sum_noisy += p_noisy;
            sum_psnr += p_out;
            sum_ssim += s_out;
            sum_secs += secs;
            std::cout << path.stem().string() << "\t" << fmt(sigma) << "\t" << fmt(p_noisy) << "\t"
                      << fmt(p_out) << "\t" << fmt(s_out) << "\t" << fmt(secs) << "\n";
        }
        const double n = static_cast<double>(images.size());
        std::cout << "average\t" << fmt(sigma) << "\t" << fmt(sum_noisy / n) << "\t" << fmt(sum_psnr / n)
                  << "\t" << fmt(sum_ssim / n) << "\t" << fmt(sum_secs / n) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gslp: group-sparse lp-minimization grayscale image denoiser"};
    app.require_subcommand(1);

    AddNoiseArgs noise_args;
    auto* noise_cmd = app.add_subcommand("add-noise", "Add seeded Gaussian noise to an image");
    noise_cmd->add_option("--input", noise_args.input, "input image (.pgm/.png)")->required();
    noise_cmd->add_option("--output", noise_args.output, "output image (.pgm/.png)")->required();
    noise_cmd->add_option("--sigma", noise_args.sigma, "noise standard deviation")->required();
    noise_cmd->add_option("--seed", noise_args.seed, "random seed")->required();

    DenoiseArgs den_args;
    auto* den_cmd = app.add_subcommand("denoise", "Denoise a grayscale image");
    den_cmd->add_option("--input", den_args.input, "noisy input image")->required();
    den_cmd->add_option("--output", den_args.output, "denoised output image")->required();
    den_cmd->add_option("--sigma", den_args.sigma, "noise standard deviation of the input")->required();
    den_cmd->add_option("--prefilter", den_args.prefilter, "pre-filtered image used as search reference");
    den_cmd->add_option("--config", den_args.config, "key = value parameter overrides");
    den_cmd->add_option("--seed", den_args.seed, "random seed (reserved; denoising itself is deterministic)");
    den_cmd->add_option("--iters", den_args.iters, "outer iteration count override");
    den_cmd->add_option("--reference", den_args.reference, "clean image; adds per-iteration psnr/ssim");
    den_cmd->add_flag("--no-aps", den_args.no_aps, "always search on the regularized iterate");

    MetricsArgs met_args;
    auto* met_cmd = app.add_subcommand("metrics", "Print PSNR and SSIM between two images");
    met_cmd->add_option("--reference", met_args.reference, "reference image")->required();
    met_cmd->add_option("--test", met_args.test, "test image")->required();

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Noise + denoise + score a directory of images");
    bench_cmd->add_option("--dir", bench_args.dir, "directory of clean images")->required();
    bench_cmd->add_option("--sigmas", bench_args.sigmas, "comma-separated noise levels")->required();
    bench_cmd->add_option("--seed", bench_args.seed, "random seed")->required();
    bench_cmd->add_option("--prefilter-dir", bench_args.prefilter_dir,
                          "directory of pre-filtered images (same filenames)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (noise_cmd->parsed()) return run_add_noise(noise_args);
        if (den_cmd->parsed()) return run_denoise(den_args);
        if (met_cmd->parsed()) return run_metrics(met_args);
        if (bench_cmd->parsed()) return run_bench(bench_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
