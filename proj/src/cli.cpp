#include "zperm/cli.hpp"

#include "zperm/bounds.hpp"
#include "zperm/diagform.hpp"
#include "zperm/groupring.hpp"
#include "zperm/localize.hpp"
#include "zperm/perm.hpp"
#include "zperm/rng.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace zperm::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Machine output goes to --out when given, else to the success stream.
void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << text;
}

Objective parse_objective(const std::string& spec) {
    if (spec == "nnz") return Objective::min_nnz();
    if (spec == "locality") return Objective::min_locality();
    if (spec.rfind("locality:", 0) == 0) {
        const std::string tail = spec.substr(9);
        std::size_t used = 0;
        int m = 0;
        try {
            m = std::stoi(tail, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != tail.size() || m < 0)
            throw CLI::ValidationError("--objective", "locality:<m> needs a nonnegative integer, got " + spec);
        return Objective::fit_locality(m);
    }
    throw CLI::ValidationError("--objective", "expected nnz, locality, or locality:<m>, got " + spec);
}

const char* strategy_name(SearchStrategy s) {
    switch (s) {
        case SearchStrategy::exhaustive: return "exhaustive";
        case SearchStrategy::affine: return "affine";
        case SearchStrategy::anneal: return "anneal";
    }
    return "?";
}

std::vector<BitVector> parse_site_masks(const std::string& list, int n) {
    std::vector<BitVector> js;
    std::istringstream in(list);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        js.emplace_back(n, zstring_to_mask(tok, n));
    }
    if (js.empty()) throw std::invalid_argument("--js: no Z-strings given");
    return js;
}

std::uint64_t env_default_seed() {
    const char* v = std::getenv("ZPERM_SEED");
    if (!v || !*v) return 0;
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("ZPERM_SEED is not an integer: ") + v);
    }
}

struct SubArgs {
    std::string form_path;
    std::string spectrum_path;
    std::string perm_path;
    std::string out_path;
    std::string format = "json";
    std::string objective = "nnz";
    std::string strategy = "exhaustive";
    std::string perms = "all";
    std::string js;
    std::string k_range;
    std::vector<std::string> masses;
    std::uint64_t seed = 0;
    int n = 3;
    int m = 1;
    int m_max = 12;
    int trials = 100;
    int generic_trials = 1;
    AnnealParams anneal;
};

int run_analyze(const SubArgs& a, std::ostream& out) {
    const AnyForm f = parse_form(read_file(a.form_path));
    emit(metrics_to_json(any_form_metrics(f)), a.out_path, out);
    return 0;
}

int run_spectrum(const SubArgs& a, std::ostream& out) {
    const AnyForm f = parse_form(read_file(a.form_path));
    const AnySpectrum s = any_spectrum_of(f);
    emit(a.format == "csv" ? serialize_spectrum_csv(s) : serialize_spectrum_json(s), a.out_path, out);
    return 0;
}

int run_search(const SubArgs& a, std::ostream& out) {
    const AnySpectrum s = parse_spectrum(read_file(a.spectrum_path));
    const Objective obj = parse_objective(a.objective);
    SearchOutcome o;
    if (a.strategy == "exhaustive") {
        o = exhaustive_search(s, obj);
    } else if (a.strategy == "anneal") {
        o = anneal_search(s, obj, a.anneal, a.seed);
    } else {
        const AnyForm f = std::visit([](const auto& sp) { return AnyForm(form_of(sp)); }, s);
        o = affine_localize(f);
        const FormMetrics metrics = any_form_metrics(o.best_form);
        switch (obj.kind) {
            case ObjectiveKind::min_nnz: o.objective_value = metrics.nnz; break;
            case ObjectiveKind::min_locality: o.objective_value = metrics.locality; break;
            case ObjectiveKind::fit_locality:
                o.objective_value = metrics.locality <= obj.m ? 0.0 : metrics.locality;
                break;
        }
    }
    json doc;
    doc["strategy"] = strategy_name(o.strategy);
    doc["objective"] = a.objective;
    doc["objective_value"] = o.objective_value;
    doc["evaluations"] = o.evaluations;
    doc["permutation"] = json::parse(permutation_to_json_text(o.best_perm));
    doc["form"] = json::parse(serialize_form_json(o.best_form));
    emit(doc.dump(2) + "\n", a.out_path, out);
    return 0;
}

int run_check_map(const SubArgs& a, std::ostream& out) {
    const Permutation p = permutation_from_json_text(read_file(a.perm_path));
    const std::vector<BitVector> js = parse_site_masks(a.js, p.n());
    const bool exact = check_local_map(p, js, a.m);
    bool generic = true;
    for (int t = 0; t < a.generic_trials; ++t)
        generic = generic && generic_vector_check(p, js, a.m, mix_seed(a.seed, t));
    json doc;
    doc["n"] = p.n();
    doc["m"] = a.m;
    json names = json::array();
    for (const auto& j : js) names.push_back(mask_to_zstring(p.n(), j.bits));
    doc["js"] = std::move(names);
    doc["exact"] = exact;
    doc["generic"] = generic;
    doc["agree"] = exact == generic;
    emit(doc.dump(2) + "\n", a.out_path, out);
    return 0;
}

int run_verify_lemmas(const SubArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<Permutation> perms;
    if (a.perms == "all") {
        if (a.n > 3)
            throw InfeasibleError("verify-lemmas: enumerating all (2^n)! permutations is infeasible for n > 3");
        std::vector<std::uint32_t> table(std::size_t{1} << a.n);
        for (std::size_t i = 0; i < table.size(); ++i) table[i] = static_cast<std::uint32_t>(i);
        do {
            perms.push_back(Permutation::from_table(table));
        } while (std::next_permutation(table.begin(), table.end()));
    } else if (a.perms.rfind("random:", 0) == 0) {
        const std::string tail = a.perms.substr(7);
        std::size_t used = 0;
        int count = 0;
        try {
            count = std::stoi(tail, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != tail.size() || count < 1)
            throw CLI::ValidationError("--perms", "random:<N> needs a positive integer, got " + a.perms);
        perms.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) perms.push_back(Permutation::random_explicit(a.n, mix_seed(a.seed, i)));
    } else {
        throw CLI::ValidationError("--perms", "expected all or random:<N>, got " + a.perms);
    }

    std::map<std::string, LemmaReport> totals;
    for (const auto& id : lemma_ids()) totals[id].lemma_id = id;
    for (const auto& p : perms) {
        for (auto& r : run_lemma_suite(p, lemma_ids())) {
            LemmaReport& t = totals[r.lemma_id];
            t.instances_checked += r.instances_checked;
            for (auto& v : r.violations) t.violations.push_back(std::move(v));
        }
    }
    std::vector<LemmaReport> reports;
    reports.reserve(totals.size());
    for (const auto& id : lemma_ids()) reports.push_back(totals[id]);

    err << "lemma           permutations  instances  violations  status\n";
    char line[128];
    for (const auto& r : reports) {
        std::snprintf(line, sizeof line, "%-15s %12zu %10lld %11zu  %s\n", r.lemma_id.c_str(),
                      perms.size(), r.instances_checked, r.violations.size(),
                      r.passed() ? "PASS" : "FAIL");
        err << line;
    }
    emit(lemma_reports_to_json(reports), a.out_path, out);
    return 0;
}

int run_bounds(const SubArgs& a, std::ostream& out) {
    std::vector<BoundChain> chains;
    chains.reserve(static_cast<std::size_t>(a.m_max));
    for (int m = 1; m <= a.m_max; ++m) chains.push_back(bound_chain(m));
    emit(bounds_to_csv(chains), a.out_path, out);
    return 0;
}

std::vector<std::pair<std::string, double>> parse_masses(const std::vector<std::string>& specs) {
    if (specs.empty()) return default_cosmic_masses();
    std::vector<std::pair<std::string, double>> masses;
    for (const auto& s : specs) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw CLI::ValidationError("--mass", "expected label=kg, got " + s);
        double kg = 0.0;
        try {
            kg = std::stod(s.substr(eq + 1));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--mass", "expected label=kg, got " + s);
        }
        masses.emplace_back(s.substr(0, eq), kg);
    }
    return masses;
}

int run_cosmic(const SubArgs& a, std::ostream& out) {
    const auto masses = parse_masses(a.masses);
    const CosmicReport rep = cosmic_table(a.m_max, masses);
    std::string text = bounds_to_csv(rep.chains);
    if (!rep.rows.empty()) {
        text += "\n" + cosmic_rows_to_csv(rep.rows);
        for (const auto& row : rep.rows) {
            if (row.label != "solar_mass") continue;
            if (row.first_m_exceeding > 0) {
                const int c = row.first_m_exceeding;
                text += "# note: computed log2(G_m) first exceeds the solar-mass horizon entropy at m=" +
                        std::to_string(c) + " (crossing between m=" + std::to_string(c - 1) +
                        " and m=" + std::to_string(c) + ").\n";
                text += "# note: the documented transition window is m=7 to m=8; the computed crossing is "
                        "reported as-is and the difference flagged rather than tuning constants.\n";
            } else {
                text += "# note: no m <= " + std::to_string(a.m_max) +
                        " exceeds the solar-mass horizon entropy; raise --m-max to locate the crossing.\n";
            }
        }
    }
    emit(text, a.out_path, out);
    return 0;
}

int run_montecarlo(const SubArgs& a, std::ostream& out) {
    int k_min = 0, k_max = 0;
    if (std::sscanf(a.k_range.c_str(), "%d..%d", &k_min, &k_max) != 2)
        throw CLI::ValidationError("--k-range", "expected a..b, got " + a.k_range);
    CurveStrategy strat;
    if (a.strategy == "exhaustive") strat = CurveStrategy::exhaustive;
    else if (a.strategy == "affine") strat = CurveStrategy::affine;
    else if (a.strategy == "affine_anneal") strat = CurveStrategy::affine_anneal;
    else throw CLI::ValidationError("--strategy", "expected exhaustive, affine, or affine_anneal, got " + a.strategy);
    const auto points = localizability_curve(a.n, a.m, k_min, k_max, a.trials, strat, a.seed, a.anneal);
    emit(curve_to_csv(points), a.out_path, out);
    return 0;
}

int run_examples(const SubArgs& a, std::ostream& out) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(a.out_path, ec);
    if (ec) throw std::invalid_argument("cannot create directory " + a.out_path + ": " + ec.message());
    const std::pair<const char*, ExactForm> gallery[] = {
        {"sparse_local.json", example_form_sparse_local()},
        {"sparse_nonlocal.json", example_form_sparse_nonlocal()},
        {"dense.json", example_form_dense()},
    };
    for (const auto& [name, form] : gallery) {
        const fs::path path = fs::path(a.out_path) / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot write " + path.string());
        f << serialize_form_json(AnyForm(form));
        out << path.string() << "\n";
    }
    return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"diagonal-form permutation toolkit: spectrum/coefficient duality, "
                 "locality searches, structural verifiers, and refutation bound tables"};
    app.require_subcommand(1);
    SubArgs a;
    try {
        a.seed = env_default_seed();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    auto* analyze = app.add_subcommand("analyze", "metrics (nnz, locality, entropy, nnz lower bound) of a form file");
    analyze->add_option("--form", a.form_path, "form file (JSON or text)")->required();
    analyze->add_option("--out", a.out_path, "write to file instead of stdout");

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalue table of a form file");
    spectrum->add_option("--form", a.form_path, "form file (JSON or text)")->required();
    spectrum->add_option("--format", a.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    spectrum->add_option("--out", a.out_path, "write to file instead of stdout");

    auto* search = app.add_subcommand("search", "find a permutation minimizing nnz or locality of a spectrum");
    search->add_option("--spectrum", a.spectrum_path, "spectrum file (JSON or CSV)")->required();
    search->add_option("--strategy", a.strategy, "exhaustive, affine, or anneal")
        ->check(CLI::IsMember({"exhaustive", "affine", "anneal"}));
    search->add_option("--objective", a.objective, "nnz, locality, or locality:<m>");
    search->add_option("--seed", a.seed, "RNG seed (default from ZPERM_SEED)");
    search->add_option("--iters", a.anneal.iters, "anneal iterations per restart");
    search->add_option("--restarts", a.anneal.restarts, "anneal restarts");
    search->add_option("--t0", a.anneal.t0, "anneal initial temperature");
    search->add_option("--cooling", a.anneal.cooling, "anneal geometric cooling factor");
    search->add_option("--out", a.out_path, "write to file instead of stdout");

    auto* check_map = app.add_subcommand("check-map", "exact vs generic single-column locality test of a permutation");
    check_map->add_option("--perm", a.perm_path, "permutation file (JSON)")->required();
    check_map->add_option("--js", a.js, "comma-separated Z-strings naming the columns")->required();
    check_map->add_option("--m", a.m, "locality budget")->required();
    check_map->add_option("--generic-trials", a.generic_trials, "random draws for the generic test")
        ->check(CLI::PositiveNumber);
    check_map->add_option("--seed", a.seed, "RNG seed (default from ZPERM_SEED)");
    check_map->add_option("--out", a.out_path, "write to file instead of stdout");

    auto* verify = app.add_subcommand("verify-lemmas", "run the structural verifier suite over permutations");
    verify->add_option("--n", a.n, "sites (1..5)")->check(CLI::Range(1, 5));
    verify->add_option("--perms", a.perms, "all or random:<N>");
    verify->add_option("--seed", a.seed, "RNG seed (default from ZPERM_SEED)");
    verify->add_option("--out", a.out_path, "write JSON to file instead of stdout");

    auto* bounds = app.add_subcommand("bounds", "refutation bound chain A, B, D, E, log2 G as CSV");
    bounds->add_option("--m-max", a.m_max, "largest locality budget m")->check(CLI::Range(1, 64));
    bounds->add_option("--out", a.out_path, "write to file instead of stdout");

    auto* cosmic = app.add_subcommand("cosmic", "bound chain next to horizon entropies; flags the first m exceeding each");
    cosmic->add_option("--m-max", a.m_max, "largest locality budget m")->check(CLI::Range(1, 64));
    cosmic->add_option("--mass", a.masses, "label=kg rows (default: a stock set incl. solar_mass)");
    cosmic->add_option("--out", a.out_path, "write to file instead of stdout");

    auto* montecarlo = app.add_subcommand("montecarlo", "localizability probability curve over random k-term forms");
    montecarlo->add_option("--n", a.n, "sites")->required();
    montecarlo->add_option("--m", a.m, "locality budget")->required();
    montecarlo->add_option("--k-range", a.k_range, "term counts a..b")->required();
    montecarlo->add_option("--trials", a.trials, "trials per k")->check(CLI::PositiveNumber);
    montecarlo->add_option("--strategy", a.strategy, "exhaustive, affine, or affine_anneal");
    montecarlo->add_option("--seed", a.seed, "RNG seed (default from ZPERM_SEED)");
    montecarlo->add_option("--iters", a.anneal.iters, "anneal iterations per restart");
    montecarlo->add_option("--restarts", a.anneal.restarts, "anneal restarts");
    montecarlo->add_option("--out", a.out_path, "write to file instead of stdout");

    auto* examples = app.add_subcommand("examples", "write the worked-example form gallery");
    examples->add_option("--out", a.out_path, "target directory")->required();

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("zperm");
    for (const auto& s : args) argv_storage.push_back(s);
    std::vector<const char*> argv;
    argv.reserve(argv_storage.size());
    for (const auto& s : argv_storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (analyze->parsed()) return run_analyze(a, out);
        if (spectrum->parsed()) return run_spectrum(a, out);
        if (search->parsed()) return run_search(a, out);
        if (check_map->parsed()) return run_check_map(a, out);
        if (verify->parsed()) return run_verify_lemmas(a, out, err);
        if (bounds->parsed()) return run_bounds(a, out);
        if (cosmic->parsed()) return run_cosmic(a, out);
        if (montecarlo->parsed()) return run_montecarlo(a, out);
        if (examples->parsed()) return run_examples(a, out);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 1;
}

int dispatch(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace zperm::cli
