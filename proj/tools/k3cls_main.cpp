// Copyright Contributors to the k3cls Project
// SPDX-License-Identifier: Apache-2.0
//
// k3cls - exact-arithmetic toolkit for integral lattices.
//
// Exit codes are a stable contract:
//   0  success
//   1  verification mismatch
//   2  parse error (command line, lattice JSON, dataset)
//   3  precondition violation (indefinite, degenerate, out-of-domain input)
//   4  unknown selector

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "k3cls/classify.hpp"
#include "k3cls/dataset.hpp"
#include "k3cls/discform.hpp"
#include "k3cls/genus.hpp"
#include "k3cls/render.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyMismatch = 1;
constexpr int kParseError = 2;
constexpr int kPrecondition = 3;
constexpr int kUnknownSelector = 4;

// Parsed command-line state shared by the subcommand handlers.
struct RunConfig {
    std::string input_path;
    std::string coinvariant_dir;
    std::string case_filter;
    k3cls::OutputFormat format = k3cls::OutputFormat::text;
    unsigned threads = 1;
    bool special = false;
    bool elements = false;
};

[[noreturn]] void fail(int code, const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(code);
}

k3cls::Lattice load_lattice_or_exit(const std::string& path) {
    try {
        return k3cls::load_lattice_file(path);
    } catch (const std::exception& e) {
        fail(kParseError, e.what());
    }
}

k3cls::ReferenceData load_dataset_or_exit() {
    try {
        return k3cls::load_reference();
    } catch (const std::exception& e) {
        fail(kParseError, e.what());
    }
}

int cmd_lattice_info(const RunConfig& cfg) {
    k3cls::Lattice l = load_lattice_or_exit(cfg.input_path);
    if (l.det() == 0) fail(kPrecondition, "degenerate Gram matrix");

    if (!l.label().empty()) std::cout << "label: " << l.label() << "\n";
    std::cout << "rank: " << l.rank() << "\n";
    std::cout << "det: " << l.det() << "\n";
    auto [plus, minus] = l.signature();
    std::cout << "signature: (" << plus << ", " << minus << ")\n";
    std::cout << "even: " << (l.is_even() ? "yes" : "no") << "\n";

    k3cls::SnfResult s = k3cls::snf(l.gram());
    std::vector<mpz_class> factors;
    for (std::size_t i = 0; i < s.S.rows(); ++i)
        if (s.S(i, i) > 1) factors.push_back(s.S(i, i));
    std::cout << "disc group: ";
    if (factors.empty()) {
        std::cout << "trivial";
    } else {
        for (std::size_t i = 0; i < factors.size(); ++i)
            std::cout << (i ? " x " : "") << "Z/" << factors[i];
    }
    std::cout << "\n";
    return kOk;
}

int cmd_aut(const RunConfig& cfg) {
    k3cls::Lattice l = load_lattice_or_exit(cfg.input_path);
    if (!l.is_positive_definite() && !l.is_negative_definite())
        fail(kPrecondition, "automorphism groups require a definite lattice");
    k3cls::MatrixGroup g =
        k3cls::automorphism_group(l.is_negative_definite() ? l.negated() : l);

    std::cout << "order: " << g.order() << "\n";
    std::cout << "generators: " << g.generators.size() << "\n";
    for (const auto& m : g.generators) std::cout << "  " << m.to_string() << "\n";
    if (cfg.elements) {
        std::cout << "elements:\n";
        for (const auto& m : g.elements) std::cout << "  " << m.to_string() << "\n";
    }
    if (cfg.special) {
        k3cls::MatrixGroup so = k3cls::special_subgroup(g);
        std::cout << "SO order: " << so.order() << "\n";
        auto k = k3cls::dihedral_recognition(so);
        if (k)
            std::cout << "SO: D" << *k << "\n";
        else
            std::cout << "SO: not dihedral\n";
    }
    return kOk;
}

int cmd_genus(const RunConfig& cfg) {
    k3cls::Lattice l = load_lattice_or_exit(cfg.input_path);
    try {
        std::cout << k3cls::genus_symbol(l).to_string() << "\n";
    } catch (const std::invalid_argument& e) {
        fail(kPrecondition, e.what());
    }
    return kOk;
}

int cmd_classify(const RunConfig& cfg) {
    std::vector<k3cls::CaseRecord> records;
    if (!cfg.input_path.empty()) {
        k3cls::Lattice l = load_lattice_or_exit(cfg.input_path);
        try {
            records = k3cls::classify_lattice(l);
        } catch (const std::invalid_argument& e) {
            fail(kPrecondition, e.what());
        }
        for (auto& r : records)
            r.lattice_key = l.label().empty() ? "input" : l.label();
    } else {
        k3cls::ReferenceData ref = load_dataset_or_exit();
        try {
            records = k3cls::run_all(ref, cfg.threads);
        } catch (const std::exception& e) {
            fail(kPrecondition, e.what());
        }
    }

    if (!cfg.case_filter.empty()) {
        std::vector<k3cls::CaseRecord> kept;
        for (const auto& r : records)
            if (cfg.case_filter == std::to_string(r.group_no) || cfg.case_filter == r.label)
                kept.push_back(r);
        if (kept.empty()) fail(kUnknownSelector, "unknown case selector: " + cfg.case_filter);
        records = std::move(kept);
    }
    std::cout << k3cls::render_cases(records, cfg.format);
    return kOk;
}

int cmd_verify(const RunConfig& cfg) {
    k3cls::ReferenceData ref = load_dataset_or_exit();
    k3cls::VerificationReport rep;
    try {
        rep = k3cls::verify_against_reference(ref, cfg.threads);
    } catch (const std::exception& e) {
        fail(kPrecondition, e.what());
    }

    if (!cfg.coinvariant_dir.empty()) {
        namespace fs = std::filesystem;
        if (!fs::is_directory(cfg.coinvariant_dir))
            fail(kParseError, "not a directory: " + cfg.coinvariant_dir);
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(cfg.coinvariant_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.empty())
            rep.notes.push_back("coinvariant check skipped: no .json files in " +
                                cfg.coinvariant_dir);
        for (const auto& p : files) {
            try {
                k3cls::CoinvariantFile file = k3cls::load_coinvariant_file(p.string());
                k3cls::verify_coinvariant_file(ref, file, rep);
            } catch (const std::exception& e) {
                fail(kParseError, std::string(e.what()) + " (" + p.string() + ")");
            }
        }
    }

    std::cout << k3cls::render_verification(rep, cfg.format);
    return rep.ok() ? kOk : kVerifyMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k3cls - exact-arithmetic toolkit for integral lattices"};
    app.require_subcommand(1);
    RunConfig cfg;

    const std::vector<std::string> format_names = {"text", "csv", "md", "json"};
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", cfg.format, "output format")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, k3cls::OutputFormat>{
                    {"text", k3cls::OutputFormat::text},
                    {"csv", k3cls::OutputFormat::csv},
                    {"md", k3cls::OutputFormat::md},
                    {"json", k3cls::OutputFormat::json}},
                CLI::ignore_case));
    };
    auto add_threads = [&](CLI::App* cmd) {
        cmd->add_option("--threads", cfg.threads, "worker thread count (output is identical)")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* info = app.add_subcommand("lattice-info", "print basic invariants of a lattice");
    info->add_option("path", cfg.input_path, "lattice JSON file")->required();

    CLI::App* aut = app.add_subcommand("aut", "orthogonal group of a definite lattice");
    aut->add_option("path", cfg.input_path, "lattice JSON file")->required();
    aut->add_flag("--special", cfg.special, "also print SO data and dihedral recognition");
    aut->add_flag("--elements", cfg.elements, "print the full element list");

    CLI::App* genus = app.add_subcommand("genus", "canonical genus symbol of an even lattice");
    genus->add_option("path", cfg.input_path, "lattice JSON file")->required();

    CLI::App* classify = app.add_subcommand("classify", "emit the classification case table");
    classify->add_option("--case", cfg.case_filter, "filter by group number or case label");
    classify->add_option("--input", cfg.input_path,
                         "classify an external lattice instead of the embedded dataset");
    add_format(classify);
    add_threads(classify);

    CLI::App* verify = app.add_subcommand("verify", "check every computation against the dataset");
    verify->add_option("--with-coinvariants", cfg.coinvariant_dir,
                       "directory of coinvariant-lattice JSON files to check");
    add_format(verify);
    add_threads(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kParseError;
    }

    if (app.got_subcommand(info)) return cmd_lattice_info(cfg);
    if (app.got_subcommand(aut)) return cmd_aut(cfg);
    if (app.got_subcommand(genus)) return cmd_genus(cfg);
    if (app.got_subcommand(classify)) return cmd_classify(cfg);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    return kParseError;  // unreachable with require_subcommand(1)
}
