#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geofill/baselines.hpp"
#include "geofill/core.hpp"
#include "geofill/exact_oracle.hpp"
#include "geofill/geodesic_filter.hpp"
#include "geofill/io_formats.hpp"
#include "geofill/metrics.hpp"
#include "geofill/sampling.hpp"

namespace {

using namespace geofill;

// flag-level misuse that CLI11 cannot catch itself; maps to exit code 1
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// accepts "0.25" or "1/4"
double parse_density(const std::string& text) {
    auto bad = [&]() -> double {
        throw UsageError("density '" + text + "' must be a fraction like 1/9 or a decimal in (0,1]");
    };
    double v = 0.0;
    auto slash = text.find('/');
    char* end = nullptr;
    if (slash == std::string::npos) {
        v = std::strtod(text.c_str(), &end);
        if (text.empty() || end != text.c_str() + text.size()) return bad();
    } else {
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        double n = std::strtod(num.c_str(), &end);
        if (num.empty() || end != num.c_str() + num.size()) return bad();
        double d = std::strtod(den.c_str(), &end);
        if (den.empty() || end != den.c_str() + den.size() || d == 0.0) return bad();
        v = n / d;
    }
    if (!(v > 0.0) || !(v <= 1.0)) return bad();
    return v;
}

std::vector<std::string> split_list(const std::string& text, const char* what) {
    std::vector<std::string> out;
    std::string piece;
    std::istringstream in(text);
    while (std::getline(in, piece, ',')) {
        if (piece.empty())
            throw UsageError(std::string("empty entry in ") + what + " list '" + text + "'");
        out.push_back(piece);
    }
    if (out.empty()) throw UsageError(std::string(what) + " list must not be empty");
    return out;
}

ImageGrid read_field(const std::string& path) {
    if (ends_with(path, ".pfm")) return read_pfm(path);
    if (ends_with(path, ".flo")) return read_flo(path);
    throw IoError(path + ": field files must end in .pfm or .flo");
}

void write_field(const std::string& path, const ImageGrid& grid) {
    if (grid.channels == 1) write_pfm(path, grid);
    else if (grid.channels == 2) write_flo(path, grid);
    else throw DomainError("only 1-channel (.pfm) and 2-channel (.flo) fields can be written");
}

// mask PGM: any nonzero gray marks an evaluated pixel
ImageGrid read_mask(const std::string& path) {
    ImageGrid m = read_image(path);
    if (m.channels != 1) throw IoError(path + ": mask must be a grayscale PGM");
    for (double& v : m.data) v = (v != 0.0) ? 1.0 : 0.0;
    m.value_scale = 0.0;
    return m;
}

ImageGrid run_method(const std::string& method, const SparseField& sparse,
                     const ImageGrid& guidance, const FilterParams& params) {
    if (method == "geodesic") return interpolate(sparse, guidance, params);
    if (method == "bilateral") return bilateral_interpolate(sparse, guidance, params);
    if (method == "nw") return nadaraya_watson(sparse, params);
    if (method == "exact") return exact_filter(sparse, guidance, params);
    throw UsageError("unknown method '" + method + "' (geodesic|bilateral|nw|exact)");
}

SamplingMode parse_mode(const std::string& mode) {
    if (mode == "edges") return SamplingMode::edge_threshold;
    if (mode == "patchmax") return SamplingMode::patch_max;
    if (mode == "regular") return SamplingMode::regular_grid;
    throw UsageError("unknown sampling mode '" + mode + "' (edges|patchmax|regular)");
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(out_path, std::ios::trunc);
    if (!f) throw IoError(out_path + ": cannot open for writing");
    f << text;
    f.flush();
    if (!f.good()) throw IoError(out_path + ": write failed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"densify sparse per-pixel data (disparity, flow) guided by an image"};
    app.require_subcommand(1);

    std::string guidance_path, sparse_path, gt_path, estimate_path, mask_path, out_path;
    std::string method = "geodesic", metric = "rmse", mode = "regular";
    std::string methods_list = "geodesic,bilateral,nw", densities_list;
    std::string density_text = "0.04";
    double sigma_r = 50.0, sigma_s = 100.0;
    unsigned seed = 0;

    CLI::App* c_interp = app.add_subcommand("interpolate", "densify a sparse field");
    c_interp->add_option("--guidance", guidance_path, "guidance image (PGM/PPM)")->required();
    c_interp->add_option("--sparse", sparse_path, "sparse samples (GEOSPARSE)")->required();
    c_interp->add_option("--method", method, "geodesic|bilateral|nw|exact");
    c_interp->add_option("--sigma-r", sigma_r, "range bandwidth");
    c_interp->add_option("--sigma-s", sigma_s, "spatial bandwidth");
    c_interp->add_option("--out", out_path, "output field (.pfm / .flo by channel count)")->required();

    CLI::App* c_sample = app.add_subcommand("sample", "sparsify a dense field");
    c_sample->add_option("--gt", gt_path, "dense field (.pfm / .flo)")->required();
    c_sample->add_option("--guidance", guidance_path, "guidance image (needed by edges/patchmax)");
    c_sample->add_option("--mode", mode, "edges|patchmax|regular");
    c_sample->add_option("--density", density_text, "target known-pixel fraction");
    c_sample->add_option("--out", out_path, "output GEOSPARSE file")->required();

    CLI::App* c_eval = app.add_subcommand("evaluate", "score an estimate against ground truth");
    c_eval->add_option("--estimate", estimate_path)->required();
    c_eval->add_option("--gt", gt_path)->required();
    c_eval->add_option("--mask", mask_path, "PGM mask, nonzero = evaluate");
    c_eval->add_option("--metric", metric, "rmse|epe");
    c_eval->add_option("--out", out_path, "CSV destination (default stdout)");

    CLI::App* c_sweep = app.add_subcommand("sweep", "density sweep, CSV of rmse per method");
    c_sweep->add_option("--gt", gt_path)->required();
    c_sweep->add_option("--guidance", guidance_path)->required();
    c_sweep->add_option("--methods", methods_list, "comma list of methods");
    c_sweep->add_option("--densities", densities_list, "comma list, e.g. 1/4,1/9")->required();
    c_sweep->add_option("--sigma-r", sigma_r);
    c_sweep->add_option("--sigma-s", sigma_s);
    c_sweep->add_option("--out", out_path, "CSV destination (default stdout)");

    CLI::App* c_bench = app.add_subcommand("bench", "timing-only density sweep");
    c_bench->add_option("--guidance", guidance_path)->required();
    c_bench->add_option("--densities", densities_list, "comma list")->required();
    c_bench->add_option("--method", method, "geodesic|bilateral|nw|exact");
    c_bench->add_option("--sigma-r", sigma_r);
    c_bench->add_option("--sigma-s", sigma_s);
    c_bench->add_option("--seed", seed, "synthetic-field seed");
    c_bench->add_option("--out", out_path, "CSV destination (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(c_interp)) {
            ImageGrid guidance = read_image(guidance_path);
            SparseField sparse = read_sparse(sparse_path);
            FilterParams params = derive_params(sigma_r, sigma_s);
            double t0 = now_seconds();
            ImageGrid out = run_method(method, sparse, guidance, params);
            double elapsed = now_seconds() - t0;
            write_field(out_path, out);
            std::printf("elapsed %.6f\n", elapsed);
            return 0;
        }

        if (app.got_subcommand(c_sample)) {
            ImageGrid gt = read_field(gt_path);
            SamplingSpec spec{parse_mode(mode), parse_density(density_text)};
            SparseField sparse;
            if (spec.mode == SamplingMode::regular_grid) {
                sparse = sample_regular(gt, spec.density);
            } else {
                if (guidance_path.empty())
                    throw UsageError("--guidance is required for edges/patchmax sampling");
                ImageGrid guidance = read_image(guidance_path);
                sparse = sample_field(gt, guidance, spec);
            }
            write_sparse(out_path, sparse);
            return 0;
        }

        if (app.got_subcommand(c_eval)) {
            ImageGrid estimate = read_field(estimate_path);
            ImageGrid gt = read_field(gt_path);
            ImageGrid mask;
            bool have_mask = !mask_path.empty();
            if (have_mask) mask = read_mask(mask_path);

            double value = 0.0;
            double t0 = now_seconds();
            if (metric == "rmse") value = rmse(estimate, gt, have_mask ? &mask : nullptr);
            else if (metric == "epe") value = epe(estimate, gt, have_mask ? &mask : nullptr);
            else throw UsageError("unknown metric '" + metric + "' (rmse|epe)");
            double elapsed = now_seconds() - t0;

            char row[160];
            std::snprintf(row, sizeof row, "%s,%.10g,%s,%.6f\n", metric.c_str(), value,
                          have_mask ? "external" : "all", elapsed);
            emit(out_path, std::string("metric,value,mask,elapsed\n") + row);
            return 0;
        }

        if (app.got_subcommand(c_sweep)) {
            ImageGrid gt = read_field(gt_path);
            if (gt.channels != 1)
                throw DomainError("sweep scores with rmse and needs a single-channel gt");
            ImageGrid guidance = read_image(guidance_path);
            FilterParams params = derive_params(sigma_r, sigma_s);
            std::vector<std::string> methods = split_list(methods_list, "methods");
            std::vector<std::string> densities = split_list(densities_list, "densities");

            std::string csv = "method,inv_root_density,rmse,elapsed\n";
            for (const std::string& m : methods) {
                for (const std::string& d : densities) {
                    double rho = parse_density(d);
                    int step = std::max(1, (int)std::llround(1.0 / std::sqrt(rho)));
                    SparseField sparse = sample_regular(gt, rho);
                    double t0 = now_seconds();
                    ImageGrid est = run_method(m, sparse, guidance, params);
                    double elapsed = now_seconds() - t0;
                    double err = rmse(est, gt, nullptr);
                    char row[160];
                    std::snprintf(row, sizeof row, "%s,%d,%.10g,%.6f\n", m.c_str(), step,
                                  err, elapsed);
                    csv += row;
                }
            }
            emit(out_path, csv);
            return 0;
        }

        if (app.got_subcommand(c_bench)) {
            ImageGrid guidance = read_image(guidance_path);
            FilterParams params = derive_params(sigma_r, sigma_s);
            std::vector<std::string> densities = split_list(densities_list, "densities");

            // synthetic scalar field: timing does not care about content
            ImageGrid gt(guidance.width, guidance.height, 1);
            std::mt19937 gen(seed);
            std::uniform_real_distribution<double> dist(1.0, 100.0);
            for (double& v : gt.data) v = dist(gen);

            std::string csv = "method,density,elapsed\n";
            for (const std::string& d : densities) {
                double rho = parse_density(d);
                SparseField sparse = sample_regular(gt, rho);
                double t0 = now_seconds();
                ImageGrid est = run_method(method, sparse, guidance, params);
                double elapsed = now_seconds() - t0;
                (void)est;
                char row[160];
                std::snprintf(row, sizeof row, "%s,%.10g,%.6f\n", method.c_str(), rho, elapsed);
                csv += row;
            }
            emit(out_path, csv);
            return 0;
        }

        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
