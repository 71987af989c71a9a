#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "magsq/construct.hpp"
#include "magsq/io.hpp"
#include "magsq/kotzig.hpp"
#include "magsq/latin.hpp"
#include "magsq/oracle.hpp"

namespace {

using namespace magsq;

// exit-code contract: 0 ok, 1 verification failed, 2 invalid input,
// 3 nonexistence, 4 search budget exhausted
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNonexistent = 3;
constexpr int kExitBudget = 4;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw invalid_input("cannot open output file " + out_path);
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw invalid_input("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string report_text(const VerificationReport& rep) {
    std::ostringstream out;
    out << "classification: " << to_string(rep.classification) << "\n";
    out << "bijective: " << (rep.bijective ? "yes" : "no") << "\n";
    if (rep.magic_sum) out << "magic sum: " << format_element(*rep.magic_sum) << "\n";
    if (!rep.magic_sum && !rep.row_sums.empty()) {
        out << "row sum: " << format_element(rep.row_sums[0]) << "\n";
        out << "col sum: " << format_element(rep.col_sums[0]) << "\n";
    }
    if (rep.diag_sum) out << "diagonal: " << format_element(*rep.diag_sum) << "\n";
    if (rep.anti_diag_sum) out << "back diagonal: " << format_element(*rep.anti_diag_sum) << "\n";
    return out.str();
}

std::uint64_t default_budget() {
    if (const char* env = std::getenv("MAGSQ_NODE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 10'000'000;
}

int cmd_construct(const std::string& group, const std::string& format,
                  const std::string& out_path) {
    ConstructResult res = construct_traced(parse_group_literal(group));
    Format fmt = parse_format(format);
    std::string text = serialize(res.square, fmt);
    write_output(text, out_path);
    VerificationReport rep = verify(res.square);
    std::ostream& info = out_path.empty() ? std::cerr : std::cout;
    info << "side " << res.square.rows() << " over " << group_literal(*res.square.group())
         << "; mu=" << format_element(*rep.magic_sum) << "; route=" << res.route << "\n";
    return 0;
}

int cmd_verify(const std::string& path) {
    std::string text = read_file(path);
    GroupArray a = parse(text, sniff_format(text));
    VerificationReport rep = verify(a);
    std::cout << report_text(rep);
    return rep.classification == Classification::magic_square ? 0 : kExitVerifyFailed;
}

int cmd_search(const std::string& group, int side, const std::string& mode,
               std::uint64_t budget, std::uint64_t seed, const std::string& out_path) {
    SearchConfig cfg;
    cfg.group = parse_group_literal(group);
    cfg.side = side;
    if (mode == "find-one")
        cfg.mode = SearchConfig::Mode::find_one;
    else if (mode == "count-all")
        cfg.mode = SearchConfig::Mode::count_all;
    else if (mode == "count-orbits")
        cfg.mode = SearchConfig::Mode::count_orbits;
    else
        throw invalid_input("mode must be find-one, count-all or count-orbits");
    cfg.node_budget = budget;
    cfg.seed = seed;
    SearchResult res = backtrack_search(cfg);
    if (res.budget_exhausted) {
        std::cout << "indeterminate: node budget exhausted after " << res.nodes << " nodes\n";
        return kExitBudget;
    }
    if (cfg.mode == SearchConfig::Mode::count_all) {
        std::cout << "magic squares: " << *res.count << " (" << res.nodes << " nodes)\n";
        return 0;
    }
    if (cfg.mode == SearchConfig::Mode::count_orbits) {
        std::cout << "magic square orbits: " << *res.count << " (" << res.nodes << " nodes)\n";
        return 0;
    }
    if (!res.square) {
        std::cout << "no magic square exists (exhausted " << res.nodes << " nodes)\n";
        return kExitNonexistent;
    }
    write_output(serialize(*res.square, Format::pretty), out_path);
    return 0;
}

int cmd_catalog(int max_side, const std::string& out_path) {
    int lo = 3, hi = max_side;
    std::ostringstream table;
    table << "group;side;route;mu;verified;millis\n";
    int failures = 0, rows = 0;
    for (int n = lo; n <= hi; ++n) {
        for (const auto& moduli : abelian_groups_of_order(static_cast<i64>(n) * n)) {
            GroupPtr g = make_group(moduli);
            auto t0 = std::chrono::steady_clock::now();
            bool ok = false;
            std::string route = "-", mu = "-";
            try {
                ConstructResult res = construct_traced(g);
                VerificationReport rep = verify(res.square);
                ok = rep.classification == Classification::magic_square;
                route = res.route;
                mu = format_element(*rep.magic_sum);
            } catch (const error& e) {
                route = std::string("error: ") + e.what();
            }
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            if (!ok) ++failures;
            ++rows;
            table << group_literal(*g) << ";" << n << ";" << route << ";" << mu << ";"
                  << (ok ? "yes" : "NO") << ";" << ms << "\n";
        }
    }
    write_output(table.str(), out_path);
    std::ostream& info = out_path.empty() ? std::cerr : std::cout;
    info << rows << " groups, " << failures << " failures\n";
    return failures == 0 ? 0 : kExitVerifyFailed;
}

int cmd_latin(i64 q, const std::string& out_path) {
    LatinPair lp = ddmols_prime_power(q);
    std::ostringstream out;
    auto emit = [&](const std::vector<int>& grid, const char* name) {
        out << "# " << name << "\n";
        for (int i = 0; i < lp.side; ++i) {
            for (int j = 0; j < lp.side; ++j)
                out << grid[static_cast<std::size_t>(i) * lp.side + j]
                    << (j + 1 < lp.side ? ";" : "");
            out << "\n";
        }
    };
    out << "# ddmols side " << q << "\n";
    emit(lp.a, "A");
    emit(lp.b, "B");
    write_output(out.str(), out_path);
    return 0;
}

int cmd_kotzig(const std::string& group, int rows, const std::string& out_path) {
    GroupPtr g = parse_group_literal(group);
    KotzigArrayG ka = kotzig_gamma(rows, g);
    std::ostringstream out;
    out << "# group: " << group_literal(*g) << "\n";
    out << "# kotzig rows: " << ka.rows << "\n";
    for (int r = 0; r < ka.rows; ++r) {
        for (i64 c = 0; c < ka.cols(); ++c)
            out << format_element(ka.at(r, c)) << (c + 1 < ka.cols() ? ";" : "");
        out << "\n";
    }
    write_output(out.str(), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"construction and verification of magic squares over finite Abelian groups"};
    app.require_subcommand(1);

    std::string group, format = "pretty", out_path, mode = "find-one", file;
    int side = 0, rows = 0, max_side = 0;
    i64 ddmols_q = 0;
    std::uint64_t budget = default_budget(), seed = 0;

    auto* c_construct = app.add_subcommand("construct", "build a magic square for a group");
    c_construct->add_option("--group", group, "group literal, e.g. 27,3")->required();
    c_construct->add_option("--format", format, "json|csv|latex|pretty");
    c_construct->add_option("--out", out_path, "output file (default stdout)");

    auto* c_verify = app.add_subcommand("verify", "re-check a serialized array");
    c_verify->add_option("file", file, "json or csv file")->required();

    auto* c_search = app.add_subcommand("search", "exhaustive/backtracking oracle");
    c_search->add_option("--group", group)->required();
    c_search->add_option("--side", side)->required();
    c_search->add_option("--mode", mode, "find-one|count-all|count-orbits");
    c_search->add_option("--budget", budget, "node budget");
    c_search->add_option("--seed", seed, "candidate order seed");
    c_search->add_option("--out", out_path);

    auto* c_catalog = app.add_subcommand("catalog", "construct+verify all groups up to a side");
    c_catalog->add_option("--max-side", max_side)->required();
    c_catalog->add_option("--out", out_path);

    auto* c_latin = app.add_subcommand("latin", "doubly diagonal orthogonal Latin pair");
    c_latin->add_option("--ddmols", ddmols_q, "side (prime power >= 4)")->required();
    c_latin->add_option("--out", out_path);

    auto* c_kotzig = app.add_subcommand("kotzig", "Kotzig array over a group");
    c_kotzig->add_option("--group", group)->required();
    c_kotzig->add_option("--rows", rows)->required();
    c_kotzig->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (c_construct->parsed()) return cmd_construct(group, format, out_path);
        if (c_verify->parsed()) return cmd_verify(file);
        if (c_search->parsed()) return cmd_search(group, side, mode, budget, seed, out_path);
        if (c_catalog->parsed()) return cmd_catalog(max_side, out_path);
        if (c_latin->parsed()) return cmd_latin(ddmols_q, out_path);
        if (c_kotzig->parsed()) return cmd_kotzig(group, rows, out_path);
    } catch (const nonexistence& e) {
        std::cerr << "nonexistent: " << e.what() << "\n";
        return kExitNonexistent;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return 0;
}
