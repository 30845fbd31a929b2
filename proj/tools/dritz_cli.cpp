#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dritz/experiment.hpp"

namespace {

dritz::ExperimentConfig load_config(const std::string& path,
                                    const std::string& out_override,
                                    const std::string& preset_override) {
    std::string text;
    {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read config: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    if (!preset_override.empty()) {
        // --preset wins over the file; prepend so the file cannot set it twice
        text = "preset = " + preset_override + "\n" + text;
        // drop a file-level preset line if present
        std::istringstream in(text);
        std::string line, rebuilt;
        bool first = true;
        while (std::getline(in, line)) {
            const auto pos = line.find_first_not_of(" \t");
            const bool is_preset =
                !first && pos != std::string::npos &&
                line.compare(pos, 6, "preset") == 0;
            if (!is_preset) rebuilt += line + "\n";
            first = false;
        }
        text = rebuilt;
    }
    dritz::ExperimentConfig cfg = dritz::parse_experiment_config(text);
    if (!out_override.empty()) cfg.out_dir = out_override;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deep Ritz boundary-condition strategy experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir, preset;
    bool force = false;
    int jobs = 1;

    auto* run = app.add_subcommand("run", "execute a sweep from a config file");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory override");
    run->add_option("--preset", preset, "scale preset: paper or desk")
        ->check(CLI::IsMember({"paper", "desk"}));
    run->add_flag("--force", force, "overwrite existing results");
    run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    std::string records_path, summarize_out = ".";
    auto* summarize =
        app.add_subcommand("summarize", "mean/std tables from a records CSV");
    summarize->add_option("--config", records_path, "records CSV")->required();
    summarize->add_option("--out", summarize_out, "output directory");

    std::string plot_input, plot_out = ".";
    auto* plot = app.add_subcommand(
        "plot", "SVG error-bar charts (or monitor line chart) from a CSV");
    plot->add_option("--config", plot_input, "records or monitor CSV")->required();
    plot->add_option("--out", plot_out, "output directory");

    auto* monitor = app.add_subcommand(
        "monitor", "single training run with loss-vs-energy monitoring");
    monitor->add_option("--config", config_path, "config file")->required();
    monitor->add_option("--out", out_dir, "output directory override");
    monitor->add_option("--preset", preset, "scale preset: paper or desk")
        ->check(CLI::IsMember({"paper", "desk"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const auto cfg = load_config(config_path, out_dir, preset);
            const auto records = dritz::cmd_run(cfg, force, jobs);
            std::size_t failed = 0;
            for (const auto& r : records) failed += r.failed ? 1 : 0;
            std::printf("wrote %zu records (%zu failed) to %s/records.csv\n",
                        records.size(), failed, cfg.out_dir.c_str());
            return failed > 0 ? 2 : 0;
        }
        if (summarize->parsed()) {
            const auto s = dritz::cmd_summarize(records_path, summarize_out);
            std::fputs(dritz::summary_to_text(s).c_str(), stdout);
            return 0;
        }
        if (plot->parsed()) {
            dritz::cmd_plot(plot_input, plot_out);
            std::printf("plots written to %s\n", plot_out.c_str());
            return 0;
        }
        if (monitor->parsed()) {
            const auto cfg = load_config(config_path, out_dir, preset);
            const auto s = dritz::cmd_monitor(cfg);
            std::printf("max |loss-energy| = %.6g, final = %.6g (%s)\n",
                        s.max_abs_diff, s.final_abs_diff, cfg.out_dir.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
