#include "minrank/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "minrank/error.hpp"
#include "minrank/index_coding.hpp"
#include "minrank/linalg.hpp"
#include "minrank/masked.hpp"
#include "minrank/oracle.hpp"
#include "minrank/rng.hpp"
#include "minrank/tree.hpp"

namespace minrank::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Seed stream tags so the solver, verifier and benchmark never share RNG
// sequences even under one user seed.
constexpr std::uint64_t kVerifyStream = 0x7665'7269;
constexpr std::uint64_t kBenchValueStream = 0x6265'6e76;
constexpr std::uint64_t kBenchMaskStream = 0x6265'6e6d;
constexpr std::uint64_t kBenchEngineStream = 0x6265'6e65;

struct CommonOpts {
    unsigned field = 2;
    std::size_t block = 1;
    std::string prune = "inf";
    std::uint64_t seed = 0;
    std::size_t algo1_iters = 100;
    std::size_t trials = 100;
    std::string output = "text";
    unsigned threads = 1;
    bool field_set = false;
    bool block_set = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::format, "cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t parse_prune(const std::string& s) {
    if (s == "inf") return kNoPruning;
    std::uint64_t v = 0;
    try {
        std::size_t used = 0;
        v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw Error(Errc::format, "--prune expects a positive integer or 'inf'");
    }
    if (v < 1) throw Error(Errc::format, "--prune threshold must be >= 1 (or 'inf')");
    return v;
}

TreeConfig tree_config(const CommonOpts& o) {
    TreeConfig cfg;
    cfg.prune_threshold = parse_prune(o.prune);
    cfg.seed = o.seed;
    cfg.algo1_iters = o.algo1_iters;
    cfg.threads = o.threads;
    return cfg;
}

struct Rate {
    std::uint64_t num, den;
    std::string text() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

Rate make_rate(std::uint64_t n, std::uint64_t l) {
    std::uint64_t g = std::gcd(n, l);
    return Rate{n / g, l / g};
}

std::string sym(std::size_t blown_row, std::size_t n) {
    if (n == 1) return "x" + std::to_string(blown_row + 1);
    return "x" + std::to_string(blown_row / n + 1) + "." + std::to_string(blown_row % n + 1);
}

std::string term(std::uint8_t coeff, const std::string& var) {
    return coeff == 1 ? var : std::to_string(unsigned(coeff)) + "*" + var;
}

std::string combination(const std::vector<std::uint8_t>& coeffs, std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += term(coeffs[i], sym(i, n));
    }
    return s.empty() ? "0" : s;
}

std::string decoder_pretty(const IndexCodingProblem& p, const IndexCode& code, std::size_t j) {
    std::size_t n = p.block_length;
    const Decoder& d = code.decoders[j];
    std::size_t want_row = p.receivers[j / n].wants * n + j % n;
    std::string rhs;
    for (std::size_t t = 0; t < d.on_transmissions.size(); ++t) {
        if (d.on_transmissions[t] == 0) continue;
        if (!rhs.empty()) rhs += " + ";
        rhs += term(d.on_transmissions[t], "y" + std::to_string(t + 1));
    }
    for (auto [row, coeff] : d.side_terms) {
        if (!rhs.empty()) rhs += " + ";
        rhs += term(coeff, sym(row, n));
    }
    if (rhs.empty()) rhs = "0";
    return sym(want_row, n) + " = " + rhs;
}

std::vector<std::string> matrix_lines(const std::string& rendered) {
    std::vector<std::string> lines;
    std::istringstream ss(rendered);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

ordered_json stats_json(const TreeStats& s) {
    return ordered_json{{"initial_rank", s.initial_rank},
                        {"branches_created", s.branches_created},
                        {"branches_closed", s.branches_closed},
                        {"branches_eliminated", s.branches_eliminated},
                        {"branches_pruned", s.branches_pruned},
                        {"prune_events", s.prune_events},
                        {"expansions", s.expansions},
                        {"projections", s.projections},
                        {"restarts", s.restarts},
                        {"seed", s.seed},
                        {"wall_ms", s.wall_ms}};
}

std::string stats_text(const TreeStats& s) {
    std::ostringstream ss;
    ss << "initial_rank=" << s.initial_rank << " branches_created=" << s.branches_created
       << " branches_closed=" << s.branches_closed
       << " branches_eliminated=" << s.branches_eliminated
       << " branches_pruned=" << s.branches_pruned << " prune_events=" << s.prune_events
       << " expansions=" << s.expansions << " projections=" << s.projections
       << " restarts=" << s.restarts << " seed=" << s.seed << " wall_ms=" << s.wall_ms;
    return ss.str();
}

void emit(std::ostream& out, const CommonOpts& o, const ordered_json& j,
          const std::string& text) {
    if (o.output == "json")
        out << j.dump(2) << "\n";
    else
        out << text;
}

// ---------------------------------------------------------------- solve ---

int cmd_solve(const std::string& path, const CommonOpts& o, std::ostream& out) {
    IndexCodingProblem p = parse_problem(read_file(path));
    if (o.field_set) p.field = FieldSpec(o.field);
    if (o.block_set) p.block_length = o.block;

    TreeConfig cfg = tree_config(o);
    MaskedMatrix matrix = build_matrix(p);
    CompletionResult res = complete_min_rank(matrix, cfg);

    GFMatrix completed = res.completed;
    std::size_t rank = res.achieved_rank;

    // For vector problems also try the block-diagonal lift of the best
    // scalar solution and keep whichever achieves the lower rank. This
    // guarantees the reported rate never drops below the scalar rate.
    bool lift_evaluated = false, lift_used = false;
    std::size_t search_rank = rank, lift_rank = 0;
    if (p.block_length > 1) {
        lift_evaluated = true;
        IndexCodingProblem base = p;
        base.block_length = 1;
        CompletionResult scalar = complete_min_rank(build_matrix(base), cfg);
        GFMatrix lifted = block_diagonal_lift(scalar.completed, p.block_length);
        lift_rank = p.block_length * scalar.achieved_rank;
        if (lift_rank < rank) {
            completed = std::move(lifted);
            rank = lift_rank;
            lift_used = true;
        }
    }

    IndexCode code = extract_code(completed, p);
    VerifyReport verify = verify_code(code, p, o.trials, derive_seed(o.seed, kVerifyStream));
    Rate rate = make_rate(p.block_length, rank);

    ordered_json j{{"command", "solve"},
                   {"input", path},
                   {"field", p.field.q()},
                   {"block", p.block_length},
                   {"rank", rank},
                   {"rate", {{"num", rate.num}, {"den", rate.den}, {"text", rate.text()}}}};
    if (lift_evaluated)
        j["lift"] = ordered_json{
            {"search_rank", search_rank}, {"lift_rank", lift_rank}, {"used", lift_used}};
    j["completed_matrix"] = matrix_lines(completed.render());

    ordered_json jcode{{"length", code.length}};
    ordered_json cols = ordered_json::array();
    for (std::size_t c : code.chosen_columns) cols.push_back(c + 1);
    jcode["chosen_columns"] = cols;
    jcode["transmissions"] = code.transmissions;
    ordered_json pretty = ordered_json::array();
    for (std::size_t t = 0; t < code.length; ++t)
        pretty.push_back("y" + std::to_string(t + 1) + " = " +
                         combination(code.transmissions[t], p.block_length));
    jcode["pretty"] = pretty;
    j["code"] = jcode;

    ordered_json decoders = ordered_json::array();
    for (std::size_t jj = 0; jj < code.decoders.size(); ++jj) {
        const Receiver& rec = p.receivers[jj / p.block_length];
        ordered_json side = ordered_json::array();
        for (auto [row, coeff] : code.decoders[jj].side_terms)
            side.push_back(ordered_json{{"symbol", sym(row, p.block_length)}, {"coeff", coeff}});
        decoders.push_back(ordered_json{{"receiver", rec.orig_id},
                                        {"wants", sym(rec.wants * p.block_length + jj % p.block_length,
                                                      p.block_length)},
                                        {"on_transmissions", code.decoders[jj].on_transmissions},
                                        {"side_terms", side},
                                        {"pretty", decoder_pretty(p, code, jj)}});
    }
    j["decoders"] = decoders;
    j["verification"] = ordered_json{{"valid", verify.valid},
                                     {"algebraic_ok", verify.algebraic_ok},
                                     {"trials", verify.trials},
                                     {"trial_failures", verify.trial_failures},
                                     {"failures", verify.failures}};
    j["stats"] = stats_json(res.stats);

    std::ostringstream text;
    text << "input: " << path << "\n";
    text << "field: " << unsigned(p.field.q()) << "\n";
    text << "block: " << p.block_length << "\n";
    text << "rank: " << rank << "\n";
    text << "rate: " << rate.text() << "\n";
    if (lift_evaluated)
        text << "lift: search_rank=" << search_rank << " lift_rank=" << lift_rank
             << " used=" << (lift_used ? "yes" : "no") << "\n";
    text << "completed matrix:\n";
    for (const auto& line : matrix_lines(completed.render())) text << "  " << line << "\n";
    text << "code (" << code.length << " transmissions):\n";
    for (const auto& s : pretty) text << "  " << s.get<std::string>() << "\n";
    text << "decoders:\n";
    for (std::size_t jj = 0; jj < code.decoders.size(); ++jj)
        text << "  receiver " << p.receivers[jj / p.block_length].orig_id << ": "
             << decoder_pretty(p, code, jj) << "\n";
    text << "verification: " << (verify.valid ? "valid" : "INVALID") << " (algebraic "
         << (verify.algebraic_ok ? "ok" : "FAILED") << ", " << verify.trials << " trials, "
         << verify.trial_failures << " failures)\n";
    for (const auto& fail : verify.failures) text << "  " << fail << "\n";
    text << "stats: " << stats_text(res.stats) << "\n";

    emit(out, o, j, text.str());
    return verify.valid ? 0 : 5;
}

// ------------------------------------------------------------- complete ---

int cmd_complete(const std::string& path, const CommonOpts& o, std::ostream& out) {
    MaskedMatrix m = MaskedMatrix::parse(read_file(path), FieldSpec(o.field));
    CompletionResult res = complete_min_rank(m, tree_config(o));

    ordered_json j{{"command", "complete"},
                   {"input", path},
                   {"field", o.field},
                   {"rank", res.achieved_rank},
                   {"completed_matrix", matrix_lines(res.completed.render())},
                   {"stats", stats_json(res.stats)}};

    std::ostringstream text;
    text << "input: " << path << "\n";
    text << "field: " << o.field << "\n";
    text << "rank: " << res.achieved_rank << "\n";
    text << "completed matrix:\n";
    for (const auto& line : matrix_lines(res.completed.render())) text << "  " << line << "\n";
    text << "stats: " << stats_text(res.stats) << "\n";

    emit(out, o, j, text.str());
    return 0;
}

// --------------------------------------------------------------- oracle ---

int cmd_oracle(const std::string& path, const CommonOpts& o, std::uint64_t budget,
               bool count_optima, bool naive, std::ostream& out) {
    MaskedMatrix m = MaskedMatrix::parse(read_file(path), FieldSpec(o.field));
    OracleConfig cfg;
    cfg.budget = budget;
    cfg.count_optima = count_optima;
    cfg.naive = naive;
    OracleResult res = oracle_min_rank(m, cfg);

    ordered_json j{{"command", "oracle"},
                   {"input", path},
                   {"field", o.field},
                   {"min_rank", res.min_rank},
                   {"enumerated", res.enumerated},
                   {"witness", matrix_lines(res.witness.render())}};
    if (res.optimum_count) j["optimum_count"] = *res.optimum_count;

    std::ostringstream text;
    text << "input: " << path << "\n";
    text << "field: " << o.field << "\n";
    text << "min rank: " << res.min_rank << "\n";
    text << "enumerated: " << res.enumerated << "\n";
    if (res.optimum_count) text << "optimum count: " << *res.optimum_count << "\n";
    text << "witness:\n";
    for (const auto& line : matrix_lines(res.witness.render())) text << "  " << line << "\n";

    emit(out, o, j, text.str());
    return 0;
}

// --------------------------------------------------------------- verify ---

std::vector<std::vector<std::uint8_t>> parse_code_file(const std::string& textdata,
                                                       const FieldSpec& f) {
    std::vector<std::vector<std::uint8_t>> transmissions;
    std::istringstream ss(textdata);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        std::vector<std::uint8_t> coeffs;
        bool comment = false;
        while (ls >> tok) {
            if (tok[0] == '#') {
                comment = true;
                break;
            }
            int v = -1;
            try {
                std::size_t used = 0;
                v = std::stoi(tok, &used);
                if (used != tok.size()) v = -1;
            } catch (const std::exception&) {
                v = -1;
            }
            if (v < 0)
                throw Error(Errc::format, "code file line " + std::to_string(lineno) +
                                              ": bad coefficient '" + tok + "'");
            if (!f.in_field(unsigned(v)))
                throw Error(Errc::field, "code file line " + std::to_string(lineno) +
                                             ": coefficient " + std::to_string(v) +
                                             " outside GF(" + std::to_string(f.q()) + ")");
            coeffs.push_back(std::uint8_t(v));
        }
        if (!coeffs.empty() && !comment) transmissions.push_back(std::move(coeffs));
        if (!coeffs.empty() && comment)
            throw Error(Errc::format,
                        "code file line " + std::to_string(lineno) + ": trailing comment");
    }
    if (transmissions.empty()) throw Error(Errc::format, "code file declares no transmissions");
    return transmissions;
}

int cmd_verify(const std::string& problem_path, const std::string& code_path,
               const CommonOpts& o, std::ostream& out) {
    IndexCodingProblem p = parse_problem(read_file(problem_path));
    if (o.field_set) p.field = FieldSpec(o.field);
    if (o.block_set) p.block_length = o.block;

    auto transmissions = parse_code_file(read_file(code_path), p.field);
    std::size_t blown_rows = p.message_count * p.block_length;
    for (const auto& t : transmissions)
        if (t.size() != blown_rows)
            throw Error(Errc::dimension,
                        "transmissions must have " + std::to_string(blown_rows) +
                            " coefficients, got " + std::to_string(t.size()));

    DerivedCode derived =
        verify_transmissions(p, transmissions, o.trials, derive_seed(o.seed, kVerifyStream));
    const VerifyReport& rep = derived.report;

    ordered_json j{{"command", "verify"},
                   {"problem", problem_path},
                   {"code_file", code_path},
                   {"field", p.field.q()},
                   {"block", p.block_length},
                   {"transmissions", transmissions.size()},
                   {"valid", rep.valid},
                   {"algebraic_ok", rep.algebraic_ok},
                   {"trials", rep.trials},
                   {"trial_failures", rep.trial_failures},
                   {"failures", rep.failures}};

    std::ostringstream text;
    text << "problem: " << problem_path << "\n";
    text << "code: " << code_path << " (" << transmissions.size() << " transmissions)\n";
    text << "verification: " << (rep.valid ? "valid" : "INVALID") << " (algebraic "
         << (rep.algebraic_ok ? "ok" : "FAILED") << ", " << rep.trials << " trials, "
         << rep.trial_failures << " failures)\n";
    for (const auto& fail : rep.failures) text << "  " << fail << "\n";

    emit(out, o, j, text.str());
    return rep.valid ? 0 : 5;
}

// ---------------------------------------------------------------- bench ---

std::string multiset_text(const std::map<std::size_t, std::size_t>& counts) {
    if (counts.size() == 1 && counts.begin()->second == 1)
        return std::to_string(counts.begin()->first);
    std::string s;
    for (const auto& [value, count] : counts) {
        if (!s.empty()) s += ", ";
        s += std::to_string(count) + " times " + std::to_string(value);
    }
    return s;
}

MaskedMatrix random_instance(std::size_t rows, std::size_t cols, std::size_t erasures,
                             const FieldSpec& f, std::uint64_t value_seed,
                             std::uint64_t mask_seed) {
    MaskedMatrix m(f, rows, cols);
    std::mt19937_64 vgen(value_seed);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.set_value(i, j, std::uint8_t(vgen() % f.q()));

    std::vector<std::size_t> cells(rows * cols);
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = i;
    std::mt19937_64 mgen(mask_seed);
    for (std::size_t i = 0; i < erasures; ++i) {
        std::size_t pick = i + std::size_t(mgen() % (cells.size() - i));
        std::swap(cells[i], cells[pick]);
        m.set_erased(cells[i] / cols, cells[i] % cols);
    }
    return m;
}

int cmd_bench(const CommonOpts& o, const std::string& size, double density, std::size_t tests,
              const std::string& thresholds_arg, std::ostream& out) {
    std::size_t rows = 0, cols = 0;
    {
        auto xpos = size.find('x');
        bool ok = xpos != std::string::npos;
        if (ok) {
            try {
                rows = std::stoul(size.substr(0, xpos));
                cols = std::stoul(size.substr(xpos + 1));
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok || rows < 1 || cols < 1)
            throw Error(Errc::format, "--size expects <rows>x<cols>, e.g. 7x7");
    }
    if (density < 0.0 || density > 1.0)
        throw Error(Errc::format, "--density must lie in [0,1]");
    if (tests < 1) throw Error(Errc::format, "--tests must be >= 1");

    std::vector<std::uint64_t> thresholds;
    std::vector<std::string> threshold_names;
    {
        std::istringstream ss(thresholds_arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            thresholds.push_back(parse_prune(item));
            threshold_names.push_back(item);
        }
        if (thresholds.empty()) throw Error(Errc::format, "--thresholds is empty");
    }

    FieldSpec f(o.field);
    std::size_t erasures = std::size_t(std::llround(density * double(rows * cols)));
    erasures = std::min(erasures, rows * cols);
    long erasure_pct = std::lround(100.0 * double(erasures) / double(rows * cols));

    // All thresholds solve the same instances with the same engine seeds, so
    // the rows of the table are directly comparable.
    std::vector<MaskedMatrix> instances;
    for (std::size_t i = 0; i < tests; ++i) {
        MaskedMatrix m = random_instance(
            rows, cols, erasures, f, derive_seed(o.seed, kBenchValueStream + 2 * i),
            derive_seed(o.seed, kBenchMaskStream + 2 * i + 1));
        if (o.block > 1) m = m.blow_up(o.block);  // pattern semantics: only for 0/1/X
        instances.push_back(std::move(m));
    }

    ordered_json jrows = ordered_json::array();
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"n", "size", "erasure", "initial-rank", "threshold", "tests",
                     "achieved-rank", "avg-runtime"});

    for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
        std::map<std::size_t, std::size_t> initial_counts, achieved_counts;
        double total_ms = 0.0;
        ordered_json jinstances = ordered_json::array();
        for (std::size_t i = 0; i < tests; ++i) {
            TreeConfig cfg;
            cfg.prune_threshold = thresholds[ti];
            cfg.seed = derive_seed(o.seed, kBenchEngineStream + i);
            cfg.algo1_iters = o.algo1_iters;
            cfg.threads = o.threads;
            CompletionResult res = complete_min_rank(instances[i], cfg);

            bool sound = MaskedMatrix::from_gf(res.completed).agrees_with_mask(instances[i]) &&
                         mat_rank(res.completed) == res.achieved_rank;
            initial_counts[res.stats.initial_rank] += 1;
            achieved_counts[res.achieved_rank] += 1;
            total_ms += double(res.stats.wall_ms);
            jinstances.push_back(ordered_json{{"index", i},
                                              {"engine_seed", cfg.seed},
                                              {"initial_rank", res.stats.initial_rank},
                                              {"achieved_rank", res.achieved_rank},
                                              {"sound", sound},
                                              {"wall_ms", res.stats.wall_ms}});
        }

        ordered_json jinitial = ordered_json::object();
        for (const auto& [v, c] : initial_counts) jinitial[std::to_string(v)] = c;
        ordered_json jachieved = ordered_json::object();
        for (const auto& [v, c] : achieved_counts) jachieved[std::to_string(v)] = c;
        jrows.push_back(ordered_json{{"threshold", threshold_names[ti]},
                                     {"tests", tests},
                                     {"initial_ranks", jinitial},
                                     {"achieved_ranks", jachieved},
                                     {"instances", jinstances},
                                     {"avg_wall_ms", total_ms / double(tests)}});

        std::ostringstream avg;
        avg << std::fixed << std::setprecision(2) << total_ms / double(tests) << " ms";
        cells.push_back({std::to_string(o.block), std::to_string(rows) + "x" + std::to_string(cols),
                         std::to_string(erasure_pct) + "%", multiset_text(initial_counts),
                         threshold_names[ti], std::to_string(tests),
                         multiset_text(achieved_counts), avg.str()});
    }

    std::ostringstream table;
    std::vector<std::size_t> widths(cells[0].size(), 0);
    for (const auto& row : cells)
        for (std::size_t k = 0; k < row.size(); ++k) widths[k] = std::max(widths[k], row[k].size());
    for (const auto& row : cells) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            table << std::left << std::setw(int(widths[k])) << row[k];
            if (k + 1 < row.size()) table << "  ";
        }
        table << "\n";
    }

    ordered_json j{{"command", "bench"},
                   {"size", std::to_string(rows) + "x" + std::to_string(cols)},
                   {"field", o.field},
                   {"block", o.block},
                   {"density", density},
                   {"erasures", erasures},
                   {"tests", tests},
                   {"seed", o.seed},
                   {"rows", jrows}};

    emit(out, o, j, table.str());
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"minimum-rank matrix completion over GF(q) and linear index code design"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string solve_file, complete_file, oracle_file, verify_problem, verify_code_path;
    std::uint64_t budget = std::uint64_t(1) << 24;
    bool count_optima = false, naive = false;
    std::string bench_size = "7x7", bench_thresholds = "inf,2000,500";
    double bench_density = 0.59;
    std::size_t bench_tests = 10;

    auto add_common = [&](CLI::App* sub, bool with_engine) {
        auto* fopt = sub->add_option("--field", o.field, "field modulus q (prime)");
        fopt->each([&](const std::string&) { o.field_set = true; });
        auto* bopt = sub->add_option("--block", o.block, "block length n");
        bopt->each([&](const std::string&) { o.block_set = true; });
        sub->add_option("--seed", o.seed, "RNG seed");
        sub->add_option("--output", o.output, "report format: text|json")
            ->check(CLI::IsMember({"text", "json"}));
        if (with_engine) {
            sub->add_option("--prune", o.prune, "live-branch threshold or 'inf'");
            sub->add_option("--algo1-iters", o.algo1_iters,
                            "stall limit for the sub-matrix search");
            sub->add_option("--threads", o.threads, "projection worker threads");
        }
    };

    auto* solve = app.add_subcommand("solve", "design an index code from a problem file");
    solve->add_option("problem", solve_file, "problem file")->required();
    add_common(solve, true);
    solve->add_option("--trials", o.trials, "verification trials");

    auto* complete = app.add_subcommand("complete", "minimum-rank completion of a matrix file");
    complete->add_option("matrix", complete_file, "matrix file")->required();
    add_common(complete, true);

    auto* oracle = app.add_subcommand("oracle", "exact minimum rank by exhaustive enumeration");
    oracle->add_option("matrix", oracle_file, "matrix file")->required();
    add_common(oracle, false);
    oracle->add_option("--budget", budget, "max enumerations");
    oracle->add_flag("--count-optima", count_optima, "also count minimum-rank completions");
    oracle->add_flag("--naive", naive, "reference mode: recompute every rank from scratch");

    auto* verify = app.add_subcommand("verify", "check a code file against a problem");
    verify->add_option("problem", verify_problem, "problem file")->required();
    verify->add_option("code", verify_code_path, "code file (one transmission per line)")
        ->required();
    add_common(verify, false);
    verify->add_option("--trials", o.trials, "verification trials");

    auto* bench = app.add_subcommand("bench", "seeded random benchmark sweep over thresholds");
    add_common(bench, true);
    bench->add_option("--size", bench_size, "instance size <rows>x<cols>");
    bench->add_option("--density", bench_density, "erasure density in [0,1]");
    bench->add_option("--tests", bench_tests, "instances per threshold");
    bench->add_option("--thresholds", bench_thresholds, "comma list, e.g. inf,2000,500");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;  // help is a success; anything else is input misuse
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_file, o, out);
        if (complete->parsed()) return cmd_complete(complete_file, o, out);
        if (oracle->parsed())
            return cmd_oracle(oracle_file, o, budget, count_optima, naive, out);
        if (verify->parsed()) return cmd_verify(verify_problem, verify_code_path, o, out);
        if (bench->parsed())
            return cmd_bench(o, bench_size, bench_density, bench_tests, bench_thresholds, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.code()) {
            case Errc::budget:
                return 4;
            case Errc::exhausted:
                return 3;
            default:
                return 2;
        }
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace minrank::cli
