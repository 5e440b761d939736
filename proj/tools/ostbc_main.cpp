// Command-line front end. Every subcommand is a thin adapter over the
// library: parse arguments, resolve names or files, call one operation,
// print one of the report forms. Exit codes are the machine contract:
//   0 success, 1 verification failed, 2 bad path, 3 malformed file,
//   4 unknown name. Argument errors exit through the parser's own codes.
#include "CLI11.hpp"
#include "ostbc/ostbc.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

namespace {

using namespace ostbc;

// A bare word is treated as a catalog name; anything with a path flavor
// must exist on disk.
bool looks_like_path(const std::string& s) {
    return s.find('/') != std::string::npos || s.find('.') != std::string::npos;
}

SymbolicCode code_arg(const std::string& arg) {
    try {
        return fixture(arg);
    } catch (const UnknownNameError&) {
        if (std::filesystem::exists(arg)) return load_code(arg);
        if (looks_like_path(arg)) throw BadPathError("no such file: " + arg);
        throw;
    }
}

DispersionFamily family_arg(const std::string& arg) {
    try {
        return seed_family(arg);
    } catch (const UnknownNameError&) {
        if (std::filesystem::exists(arg)) return load_family(arg);
        if (looks_like_path(arg)) throw BadPathError("no such file: " + arg);
        throw;
    }
}

MnSeed mn_arg(const std::string& arg) {
    try {
        return seed_mn(arg);
    } catch (const UnknownNameError&) {
        if (std::filesystem::exists(arg)) return load_mn_seed(arg);
        if (looks_like_path(arg)) throw BadPathError("no such file: " + arg);
        throw;
    }
}

// "2=45" -> rotate symbol 2's constellation by 45 degrees.
std::pair<std::size_t, int> parse_rotation(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
        throw CLI::ValidationError("--rotate expects <symbol>=<degrees>, got '" + spec + "'");
    try {
        std::size_t sym = std::stoul(spec.substr(0, eq));
        int deg = std::stoi(spec.substr(eq + 1));
        return {sym, deg};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--rotate expects <symbol>=<degrees>, got '" + spec + "'");
    }
}

// "6:4:14" -> {6, 10, 14}; endpoint included up to rounding slack.
std::vector<double> parse_snr(const std::string& spec) {
    double start = 0, step = 0, stop = 0;
    char tail = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &start, &step, &stop, &tail) != 3)
        throw CLI::ValidationError("--snr expects start:step:stop, got '" + spec + "'");
    if (step <= 0 || stop < start)
        throw CLI::ValidationError("--snr needs step > 0 and stop >= start");
    std::vector<double> points;
    for (double v = start; v <= stop + 1e-9; v += step) points.push_back(v);
    return points;
}

std::vector<Constellation> constellations_for(const SymbolicCode& code,
                                              const std::vector<std::string>& rotations) {
    std::vector<Constellation> cs(code.k, make_qpsk());
    for (const std::string& spec : rotations) {
        auto [sym, deg] = parse_rotation(spec);
        if (sym < 1 || sym > code.k)
            throw CLI::ValidationError("--rotate symbol index " + std::to_string(sym) +
                                       " out of range for " + std::to_string(code.k) +
                                       " symbols");
        cs[sym - 1] = make_qpsk(deg);
    }
    return cs;
}

std::string joined_labels(const std::vector<Constellation>& cs) {
    std::string out;
    for (std::size_t i = 0; i < cs.size(); ++i) out += (i ? "+" : "") + cs[i].label;
    return out;
}

int cmd_catalog_list() {
    std::printf("families:\n");
    for (const std::string& name : catalog_names()) {
        CatalogEntry entry = seed_catalog(name);
        if (const auto* fam = std::get_if<DispersionFamily>(&entry))
            std::printf("  %-16s order %zu, %zu + %zu matrices, %s entries\n", name.c_str(),
                        fam->order, fam->s(), fam->t(),
                        fam->complex_entries ? "complex" : "real");
    }
    std::printf("expansion seeds:\n");
    for (const std::string& name : catalog_names()) {
        CatalogEntry entry = seed_catalog(name);
        if (const auto* seed = std::get_if<MnSeed>(&entry))
            std::printf("  %-16s %zu + %zu matrices of order 4\n", name.c_str(),
                        seed->m_mats.size(), seed->n_mats.size());
    }
    std::printf("codes:\n");
    for (const std::string& name : fixture_names()) {
        SymbolicCode code = fixture(name);
        std::printf("  %-16s %zux%zu, %zu symbols, rate %s\n", name.c_str(), code.p, code.nt,
                    code.k, rate(code).str().c_str());
    }
    return 0;
}

int cmd_catalog_show(const std::string& name, const std::string& format) {
    const auto codes = fixture_names();
    const bool structured = format == "structured";
    if (std::find(codes.begin(), codes.end(), name) != codes.end()) {
        SymbolicCode code = fixture(name);
        std::cout << (structured ? code_to_json(code).dump(2) + "\n" : code_text(code));
        return 0;
    }
    CatalogEntry entry = seed_catalog(name);
    if (const auto* fam = std::get_if<DispersionFamily>(&entry))
        std::cout << (structured ? family_to_json(*fam).dump(2) + "\n" : family_text(*fam));
    else
        std::cout << (structured ? mn_seed_to_json(std::get<MnSeed>(entry)).dump(2) + "\n"
                                 : mn_seed_text(std::get<MnSeed>(entry)));
    return 0;
}

int cmd_verify(const std::string& target, const std::string& level) {
    VerifyReport rep;
    if (level == "ostbc") {
        rep = verify_ostbc(code_arg(target));
    } else if (level == "aod") {
        rep = verify_aod(family_arg(target));
    } else if (level == "af") {
        rep = verify_af(family_arg(target));
    } else {  // mn-seed: the strict check; relaxed result shown alongside.
        MnSeed seed = mn_arg(target);
        rep = verify_mn_seed(seed, Target::AOD);
        VerifyReport relaxed = verify_mn_seed(seed, Target::AF);
        std::cout << "strict (disjoint + unit entries):\n"
                  << verify_report_text(rep) << "relaxed (amicable only):\n"
                  << verify_report_text(relaxed);
        return rep.passed ? 0 : 1;
    }
    std::cout << verify_report_text(rep);
    return rep.passed ? 0 : 1;
}

int cmd_construct(bool doubling_only, const std::string& input, const std::string& mn,
                  const std::string& out_path) {
    DispersionFamily fam = family_arg(input);
    DispersionFamily result = doubling_only ? construct2(fam) : construct1(fam, mn_arg(mn));
    save_family(result, out_path);
    std::cout << family_text(result) << "wrote " << out_path << "\n";
    return 0;
}

int cmd_metrics(const std::string& code_spec, const std::vector<std::string>& rotations,
                const std::string& format) {
    SymbolicCode code = code_arg(code_spec);
    std::vector<Constellation> cs = constellations_for(code, rotations);
    PowerReport rep = power_report(code, cs);
    if (format == "delimited")
        std::cout << metrics_delimited_single(code.label, joined_labels(cs), rep);
    else
        std::cout << code.label << " [" << joined_labels(cs) << "]\n" << power_report_text(rep);
    return 0;
}

int cmd_tables(int table, const std::string& format) {
    TableReport rep = table_report(table);
    std::cout << (format == "delimited" ? metrics_delimited(rep) : table_text(rep));
    return 0;
}

int cmd_equiv_apply(const std::string& code_spec, const std::string& transform_spec,
                    const std::string& out_path) {
    SymbolicCode code = code_arg(code_spec);
    MonomialTransform tr =
        transform_spec == "appendix" ? appendix_transform() : load_transform(transform_spec);
    SymbolicCode result = apply_transform(code, tr);
    VerifyReport rep = verify_ostbc(result);
    if (!out_path.empty()) save_code(result, out_path);
    std::cout << code_text(result) << verify_report_text(rep);
    if (!out_path.empty()) std::cout << "wrote " << out_path << "\n";
    return rep.passed ? 0 : 1;
}

int cmd_equiv_blocks(const std::string& code_spec) {
    std::cout << block_pattern_text(extract_blocks(code_arg(code_spec)));
    return 0;
}

int cmd_simulate(const std::string& code_spec, const std::string& snr_spec,
                 std::uint64_t trials, std::uint64_t seed, std::size_t n_rx,
                 const std::string& out_path) {
    SymbolicCode code = code_arg(code_spec);
    SimConfig cfg;
    cfg.constellations = std::vector<Constellation>(code.k, make_qpsk());
    cfg.n_rx = n_rx;
    cfg.snr_db = parse_snr(snr_spec);
    cfg.trials = trials;
    cfg.seed = seed;
    BerResult res = run_ber(code, cfg);
    detail::write_text_file(out_path, ber_delimited(res));
    std::cout << ber_text(res) << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthogonal space-time block code toolkit"};
    app.require_subcommand(1);

    // catalog list | catalog show <name> [--format text|structured]
    auto* catalog = app.add_subcommand("catalog", "built-in families, seeds, and codes");
    catalog->require_subcommand(1);
    catalog->add_subcommand("list", "one line per entry");
    auto* show = catalog->add_subcommand("show", "print one entry");
    std::string show_name, show_format = "text";
    show->add_option("name", show_name, "catalog entry")->required();
    show->add_option("--format", show_format)->check(CLI::IsMember({"text", "structured"}));

    // verify <file|name> --level ostbc|aod|af|mn-seed
    auto* verify = app.add_subcommand("verify", "check the defining constraints");
    std::string verify_target, verify_level;
    verify->add_option("target", verify_target, "name or file")->required();
    verify->add_option("--level", verify_level)
        ->required()
        ->check(CLI::IsMember({"ostbc", "aod", "af", "mn-seed"}));

    // construct c1 --input <fam> --mn <seed> --out | construct c2 --input --out
    auto* construct = app.add_subcommand("construct", "expand a family to a larger order");
    construct->require_subcommand(1);
    auto* c1 = construct->add_subcommand("c1", "quadruple the order with an {M, N} seed");
    auto* c2 = construct->add_subcommand("c2", "double the order");
    std::string c_input, c_mn, c_out;
    c1->add_option("--input", c_input, "family name or file")->required();
    c1->add_option("--mn", c_mn, "seed name or file")->required();
    c1->add_option("--out", c_out, "output family file")->required();
    c2->add_option("--input", c_input, "family name or file")->required();
    c2->add_option("--out", c_out, "output family file")->required();

    // metrics --code <name|file> [--rotate s=d]... [--constellation qpsk] --format
    auto* metrics = app.add_subcommand("metrics", "power distribution of one code");
    std::string m_code, m_constellation = "qpsk", m_format = "table";
    std::vector<std::string> m_rotations;
    metrics->add_option("--code", m_code, "code name or file")->required();
    metrics->add_option("--rotate", m_rotations, "<symbol>=<degrees>, repeatable");
    metrics->add_option("--constellation", m_constellation)->check(CLI::IsMember({"qpsk"}));
    metrics->add_option("--format", m_format)->check(CLI::IsMember({"table", "delimited"}));

    // tables --table 1|2 [--format table|delimited]
    auto* tables = app.add_subcommand("tables", "recompute a published power table");
    int t_table = 0;
    std::string t_format = "table";
    tables->add_option("--table", t_table)->required()->check(CLI::IsMember({1, 2}));
    tables->add_option("--format", t_format)->check(CLI::IsMember({"table", "delimited"}));

    // equiv apply --code --transform <file|appendix> [--out] | equiv blocks --code
    auto* equiv = app.add_subcommand("equiv", "monomial transforms and block layout");
    equiv->require_subcommand(1);
    auto* apply = equiv->add_subcommand("apply", "transform a code and re-verify");
    std::string e_code, e_transform, e_out;
    apply->add_option("--code", e_code, "code name or file")->required();
    apply->add_option("--transform", e_transform, "transform file or 'appendix'")->required();
    apply->add_option("--out", e_out, "optional output code file");
    auto* blocks = equiv->add_subcommand("blocks", "classify the 2x2 block layout");
    blocks->add_option("--code", e_code, "code name or file")->required();

    // simulate --code --snr a:b:c --trials N --seed S [--nr n] --out file
    auto* simulate = app.add_subcommand("simulate", "Rayleigh-fading bit error rates");
    std::string s_code, s_snr, s_out;
    std::uint64_t s_trials = 0, s_seed = 0;
    std::size_t s_nr = 1;
    simulate->add_option("--code", s_code, "code name or file")->required();
    simulate->add_option("--snr", s_snr, "start:step:stop in dB")->required();
    simulate->add_option("--trials", s_trials, "codewords per point")->required();
    simulate->add_option("--seed", s_seed, "RNG seed")->required();
    simulate->add_option("--nr", s_nr, "receive antennas");
    simulate->add_option("--out", s_out, "delimited output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (catalog->parsed())
            return show->parsed() ? cmd_catalog_show(show_name, show_format)
                                  : cmd_catalog_list();
        if (verify->parsed()) return cmd_verify(verify_target, verify_level);
        if (construct->parsed()) return cmd_construct(c2->parsed(), c_input, c_mn, c_out);
        if (metrics->parsed()) return cmd_metrics(m_code, m_rotations, m_format);
        if (tables->parsed()) return cmd_tables(t_table, t_format);
        if (equiv->parsed())
            return apply->parsed() ? cmd_equiv_apply(e_code, e_transform, e_out)
                                   : cmd_equiv_blocks(e_code);
        if (simulate->parsed())
            return cmd_simulate(s_code, s_snr, s_trials, s_seed, s_nr, s_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.get_exit_code();
    } catch (const BadPathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MalformedFileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const UnknownNameError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
