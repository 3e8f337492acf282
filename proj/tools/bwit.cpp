// bwit: run witness constructions over catalog series and verify the JSON
// certificates they emit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <bw/document.hpp>
#include <bw/error.hpp>
#include <bw/runner.hpp>
#include <bw/series.hpp>

namespace
{

int do_run(const bw::run_config &cfg, const std::string &out_path)
{
    const auto [doc, code] = bw::run(cfg);
    const auto text = doc.dump(2);
    if (out_path.empty() || out_path == "-") {
        std::cout << text << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return 1;
        }
        out << text << '\n';
    }
    if (code == 2) {
        std::cerr << "exhausted: " << doc["message"].get<std::string>() << '\n';
    } else {
        std::cerr << "ok: " << cfg.construction << " on " << cfg.series << '\n';
    }
    return code;
}

int do_verify(const std::string &path)
{
    const auto res = bw::verify_document(bw::read_document(path));
    switch (res.outcome) {
        case bw::verify_result::status::ok:
            std::cout << "verified: " << path << '\n';
            break;
        case bw::verify_result::status::failed:
            std::cout << "FAILED: " << res.message << '\n';
            break;
        case bw::verify_result::status::exhausted:
            std::cout << "exhaustion record (nothing to verify): " << res.message << '\n';
            break;
    }
    return res.exit_code();
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Witness generators for bounded and unbounded subseries and rearrangements"};
    app.require_subcommand(1);

    bw::run_config cfg;
    std::string out_path;
    bool no_verify = false;
    auto *run = app.add_subcommand("run", "Run a construction and emit a certificate document");
    run->add_option("--series", cfg.series, "Catalog series name")->required();
    run->add_option("--construction", cfg.construction, "Construction to run")
        ->required()
        ->check(CLI::IsMember(bw::construction_names()));
    run->add_option("--m", cfg.m, "Level m of the category constructions");
    run->add_option("--M", cfg.M, "Bound M for ideal-boundedness verdicts");
    run->add_option("--target", cfg.target, "Target norm for grow-subseries");
    run->add_option("--depth", cfg.depth, "Stage count (rearrangement, limsup-subseries, nowhere-dense-rearr)");
    run->add_option("--horizon", cfg.horizon,
                    std::string("Largest series index any search may touch (default from ") + bw::horizon_env_var
                        + " or per-space default)");
    run->add_option("--n", cfg.n, "Pattern length for uniform-bound");
    run->add_option("--alphabet", cfg.alphabet, "Pattern alphabet for uniform-bound")
        ->check(CLI::IsMember({"01", "-101"}));
    run->add_option("--after", cfg.after, "small-norm-block: indices must exceed this");
    run->add_option("--length", cfg.length, "small-norm-block: block length");
    run->add_option("--budget", cfg.budget, "small-norm-block: norm budget");
    run->add_option("--threshold", cfg.threshold, "Interval count needed for i-unbounded evidence");
    run->add_option("--ideal", cfg.ideal, "Ideal for i-bounded")->check(CLI::IsMember({"fin", "density"}));
    run->add_option("--talagrand", cfg.talagrand, "Interval sequence")->check(CLI::IsMember({"geometric", "linear"}));
    run->add_option("--stem", cfg.stem, "Basic open set: comma-separated indices, or a 0-1 word for selections");
    run->add_option("--strategy", cfg.strategy, "Growth strategy")
        ->check(CLI::IsMember({"auto", "greedy-positive", "greedy-negative", "per-coordinate", "exhaustive"}));
    run->add_option("--out", out_path, "Output path (default stdout)");
    run->add_flag("--no-verify", no_verify, "Skip self-verification");

    std::string doc_path;
    auto *verify = app.add_subcommand("verify", "Re-verify a certificate document");
    verify->add_option("document", doc_path, "Path to the JSON document")->required();

    auto *catalog = app.add_subcommand("catalog", "Catalog operations");
    catalog->require_subcommand(1);
    auto *list = catalog->add_subcommand("list", "List catalog series");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        // Help and version requests are successes; usage errors exit 1.
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*run) {
            cfg.verify = !no_verify;
            return do_run(cfg, out_path);
        }
        if (*verify) {
            return do_verify(doc_path);
        }
        if (*list) {
            for (const auto &name : bw::catalog_names()) {
                const auto s = bw::catalog_series(name);
                std::cout << name << '\t' << s.space().describe();
                if (s.flags().liminf_norm_zero) {
                    std::cout << "\tliminf-norm-zero";
                }
                if (s.flags().limsup_norm_infinite) {
                    std::cout << "\tlimsup-norm-infinite";
                }
                std::cout << '\n';
            }
            return 0;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
