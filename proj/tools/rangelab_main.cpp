#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rangelab/experiments.hpp"
#include "rangelab/matrix_io.hpp"
#include "rangelab/plot.hpp"

namespace {

using nlohmann::json;
using namespace rangelab;

void write_report(const std::string& out_dir, const std::string& name, const json& j) {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    std::ofstream f(out_dir + "/" + name);
    f << j.dump(2) << "\n";
}

int cmd_dist(const std::string& matrix_path, double tol) {
    const CMatrix c = load_matrix_json(matrix_path);
    const MinShiftResult res = min_shift_norm(c, tol);
    json j{{"schema", "rangelab-report/1"},
           {"kind", "dist"},
           {"mu_star", {res.mu_star.real(), res.mu_star.imag()}},
           {"R", res.R},
           {"dual_value", res.dual_value},
           {"certificate_ok", res.certificate_ok}};
    std::cout << j.dump(2) << std::endl;
    return 0;
}

int cmd_dilate(const std::string& matrix_path, std::size_t pad, std::uint64_t seed,
               const std::string& out_path) {
    const CMatrix t = load_matrix_json(matrix_path);
    DilationSpec spec;
    spec.t = t;
    spec.pad = pad ? pad : t.rows();
    const CMatrix u = sample_dilation(spec, seed);
    if (!out_path.empty()) save_matrix_json(out_path, u);
    json j{{"schema", "rangelab-report/1"},
           {"kind", "dilate"},
           {"size", u.rows()},
           {"pad", spec.pad},
           {"seed", seed},
           {"unitarity_defect", unitarity_defect(u)},
           {"compression_defect", (u.block(0, 0, t.rows(), t.rows()) - t).max_abs()},
           {"out", out_path}};
    std::cout << j.dump(2) << std::endl;
    return 0;
}

int cmd_plot(const std::string& matrix_path, const std::string& weight_path, std::size_t grid,
             std::size_t samples, std::uint64_t seed, const std::string& out_dir) {
    const CMatrix a = load_matrix_json(matrix_path);
    PlotScene scene;
    scene.region = nr_region(a, grid);
    scene.title = "numerical range (" + std::to_string(a.rows()) + "x" +
                  std::to_string(a.cols()) + ")";
    if (!weight_path.empty()) {
        const CMatrix c = load_matrix_json(weight_path);
        scene.points = wc_sample(c, a, samples, seed);
        scene.title = "weighted range cloud over " + scene.title;
    }
    if (a.rows() == 2) scene.ellipse = ellipse_2x2(a);
    std::filesystem::create_directories(out_dir.empty() ? "." : out_dir);
    const std::string base = (out_dir.empty() ? "." : out_dir) + "/region";
    write_region_csv(base + ".csv", *scene.region);
    write_points_json(base + "_points.json",
                      scene.points.empty() ? scene.region->inner_points : scene.points);
    write_svg(base + ".svg", scene);
    std::cout << "wrote " << base << ".{csv,svg} and " << base << "_points.json" << std::endl;
    return 0;
}

int cmd_verify_main(const std::string& matrix_path, std::size_t dilations,
                    std::vector<std::size_t> pads, std::uint64_t seed, double tol,
                    const std::string& out_dir) {
    const CMatrix c = load_matrix_json(matrix_path);
    if (pads.empty()) pads = {c.rows(), c.rows() + 2};
    try {
        const MainReport report = verify_main(c, dilations, pads, seed, tol);
        const json j = report_to_json(report);
        std::cout << j.dump(2) << std::endl;
        write_report(out_dir, "verify_main.json", j);
        return report.all_pass ? 0 : 1;
    } catch (const RoutedToVerifyKey& e) {
        std::cerr << e.what() << std::endl;
        return 2;
    }
}

int cmd_verify_key(const std::string& matrix_path, const std::string& target_path,
                   std::size_t dilations, std::size_t grid, std::uint64_t seed, double tol,
                   const std::string& out_dir) {
    const CMatrix c = load_matrix_json(matrix_path);
    CMatrix t;
    if (target_path.empty()) {
        t = 0.5 * CMatrix::basis(c.rows(), 0, 1);  // default rank-one nilpotent contraction
    } else {
        t = load_matrix_json(target_path);
    }
    const KeyReport report = verify_key(c, t, dilations, grid, seed, tol);
    const json j = report_to_json(report);
    std::cout << j.dump(2) << std::endl;
    write_report(out_dir, "verify_key.json", j);
    return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rangelab: numerical ranges, unitary dilations, and the scalar-shift distance"};
    app.require_subcommand(1);

    std::string matrix_path, target_path, weight_path, out_path, out_dir;
    std::size_t dilations = 100, grid = 720, pad = 0, samples = 20000;
    std::uint64_t seed = 1;
    double tol = 1e-6;
    std::vector<std::size_t> pads;

    auto* dist = app.add_subcommand("dist", "distance from a matrix to the scalar matrices");
    dist->add_option("--matrix", matrix_path, "matrix JSON file")->required();
    dist->add_option("--tol", tol, "solver tolerance");

    auto* dilate = app.add_subcommand("dilate", "sample a random unitary dilation");
    dilate->add_option("--matrix", matrix_path, "contraction JSON file")->required();
    dilate->add_option("--pad", pad, "pad size k (defaults to the matrix size)");
    dilate->add_option("--seed", seed, "sampling seed");
    dilate->add_option("--out", out_path, "output JSON path for the dilation");

    auto* plot = app.add_subcommand("plot", "export region CSV/JSON/SVG");
    plot->add_option("--matrix", matrix_path, "matrix JSON file")->required();
    plot->add_option("--weight", weight_path, "optional weight matrix for a sampled cloud");
    plot->add_option("--grid", grid, "support grid size");
    plot->add_option("--samples", samples, "cloud sample count");
    plot->add_option("--seed", seed, "sampling seed");
    plot->add_option("--out", out_dir, "output directory");

    auto* vmain = app.add_subcommand("verify-main", "strict dilation gap experiment");
    vmain->add_option("--matrix", matrix_path, "weight matrix JSON file")->required();
    vmain->add_option("--dilations", dilations, "number of sampled dilations");
    vmain->add_option("--pads", pads, "pad sizes to cycle through");
    vmain->add_option("--seed", seed, "sampling seed");
    vmain->add_option("--tol", tol, "certification tolerance");
    vmain->add_option("--out", out_dir, "output directory");

    auto* vkey = app.add_subcommand("verify-key", "intersection identity experiment");
    vkey->add_option("--matrix", matrix_path, "rank-one normal weight JSON file")->required();
    vkey->add_option("--target", target_path, "contraction JSON file (default E12/2)");
    vkey->add_option("--dilations", dilations, "number of sampled dilations");
    vkey->add_option("--grid", grid, "support grid size");
    vkey->add_option("--seed", seed, "sampling seed");
    vkey->add_option("--tol", tol, "containment tolerance");
    vkey->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dist->parsed()) return cmd_dist(matrix_path, tol);
        if (dilate->parsed()) return cmd_dilate(matrix_path, pad, seed, out_path);
        if (plot->parsed()) return cmd_plot(matrix_path, weight_path, grid, samples, seed, out_dir);
        if (vmain->parsed()) return cmd_verify_main(matrix_path, dilations, pads, seed, tol, out_dir);
        if (vkey->parsed())
            return cmd_verify_key(matrix_path, target_path, dilations, grid, seed, tol, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 3;
    }
    return 0;
}
