#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "kms/coding.hpp"
#include "kms/jacobian.hpp"
#include "kms/ldp.hpp"
#include "kms/measure.hpp"
#include "kms/params.hpp"
#include "kms/report.hpp"
#include "kms/stats.hpp"
#include "kms/tensor_oracle.hpp"

namespace kms::cli {

namespace {

using report::Table;

// Raw flag values; validated into concrete types before anything is computed.
struct RunConfig {
    std::string theta_text = "pi/6";
    std::optional<double> beta;
    int n = 0;
    std::string observable_text = "1,0";
    std::optional<std::uint64_t> seed;
    std::string format_text = "csv";
    std::string output_path;

    // command specific
    std::vector<std::string> words;
    std::string t_range = "-3:3:0.1";
    std::optional<double> s_value;
    int grid_points = 101;
    double epsilon = 1e-6;
    int max_depth = 200;
    int coords = 8;
    std::string abcd = "1,2,2,1";
    int count = 1;
    int one_infinity = 0;
    std::string n_list = "4,8,12,16,20";
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    double perturb = 0.0;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) parts.push_back(item);
    return parts;
}

double to_double(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
    }
}

ldp::Observable parse_observable(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw UsageError("--a expects two values 'A1,A2'");
    return ldp::make_observable(to_double(parts[0], "A1"), to_double(parts[1], "A2"));
}

std::vector<double> parse_range(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("range must be lo:hi:step");
    const double lo = to_double(parts[0], "range start");
    const double hi = to_double(parts[1], "range end");
    const double step = to_double(parts[2], "range step");
    if (!(step > 0.0) || hi < lo) throw UsageError("range needs step > 0 and hi >= lo");
    const long count = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
    return grid;
}

Symbol parse_symbol(const std::string& text) {
    if (text == "1") return Symbol::one;
    if (text == "2") return Symbol::two;
    throw UsageError("symbol must be 1 or 2, got '" + text + "'");
}

struct Context {
    RunConfig config;
    ModelParams params;
    report::Format format = report::Format::csv;
    std::string command;
};

Table base_table(const Context& ctx) {
    Table table;
    table.add_config("command", ctx.command);
    report::add_params(table, ctx.params);
    if (ctx.config.beta) table.add_config("beta", *ctx.config.beta);
    if (ctx.config.seed) table.add_config("seed", std::to_string(*ctx.config.seed));
    return table;
}

Word word_arg(const std::string& text) {
    try {
        return parse_word(text);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

std::uint64_t require_seed(const Context& ctx) {
    if (!ctx.config.seed) throw UsageError(ctx.command + " samples and needs --seed");
    return *ctx.config.seed;
}

// ---------------------------------------------------------------- commands

Table cmd_cylinder(const Context& ctx) {
    if (ctx.config.words.empty()) throw UsageError("cylinder needs at least one word");
    std::vector<Word> words;
    for (const auto& w : ctx.config.words) words.push_back(word_arg(w));

    Table table = base_table(ctx);
    table.columns = {"word", "mu"};
    if (ctx.config.beta) table.columns.push_back("mu_beta");
    for (const Word& w : words) {
        std::vector<report::Cell> row{format_word(w), mu(ctx.params, w)};
        if (ctx.config.beta) {
            const double finite = w.size() <= static_cast<std::size_t>(oracle::kDenseMaxSites)
                                      ? oracle::finite_beta_prob_dense(ctx.params, *ctx.config.beta, w)
                                      : oracle::finite_beta_prob_subset(ctx.params, *ctx.config.beta, w);
            row.emplace_back(finite);
        }
        table.add_row(std::move(row));
    }
    return table;
}

Table cmd_enumerate(const Context& ctx) {
    Table table = report::cylinder_table(ctx.params, enumerate(ctx.params, ctx.config.n));
    table.config.insert(table.config.begin(), {"command", ctx.command});
    return table;
}

struct CheckLog {
    Table table;
    bool all_passed = true;

    void record(const std::string& name, bool ok, double measured, double tolerance) {
        all_passed = all_passed && ok;
        table.add_row({name, std::string(ok ? "PASS" : "FAIL"), measured, tolerance});
    }
};

Table cmd_verify(const Context& ctx, bool& passed) {
    const ModelParams& params = ctx.params;
    const int n_max = ctx.config.n > 0 ? ctx.config.n : 8;
    const double perturb = ctx.config.perturb;
    auto mu_checked = [&](WordView w) { return mu(params, w) + perturb; };

    CheckLog log{base_table(ctx)};
    log.table.add_config("n", std::to_string(n_max));
    log.table.columns = {"check", "status", "measured", "tolerance"};

    {
        double worst = 0.0;
        for (int n = 1; n <= std::min(n_max, oracle::kSubsetMaxSites); ++n) {
            const CylinderTable tab = enumerate(params, n);
            for (std::size_t i = 0; i < tab.size(); ++i) {
                const Word w = tab.word_at(i);
                worst = std::max(worst, std::abs(mu_checked(w) - oracle::zero_temp_prob_trace(params, w)));
            }
        }
        log.record("recursion_vs_trace_oracle", worst <= 1e-12, worst, 1e-12);
    }
    {
        const double beta = ctx.config.beta.value_or(10.0);
        double worst_limit = 0.0;
        double worst_paths = 0.0;
        for (int n = 1; n <= std::min(n_max, 8); ++n) {
            oracle::DenseThermalState dense(projectors(params), beta, n);
            const CylinderTable tab = enumerate(params, n);
            for (std::size_t i = 0; i < tab.size(); ++i) {
                const Word w = tab.word_at(i);
                const double d = dense.probability(w);
                worst_paths = std::max(worst_paths, std::abs(d - oracle::finite_beta_prob_subset(params, beta, w)));
                worst_limit = std::max(worst_limit, std::abs(d - mu_checked(w)));
            }
        }
        const double limit_tol = std::max(1e-7, 8.0 * (1.0 - std::tanh(beta)));
        log.record("dense_vs_subset_oracle", worst_paths <= 1e-12, worst_paths, 1e-12);
        log.record("finite_beta_limit", worst_limit <= limit_tol, worst_limit, limit_tol);
    }
    {
        double worst = 0.0;
        for (int n = 1; n <= std::min(n_max, oracle::kDenseMaxSites); ++n) {
            for (double beta : {0.5, 2.0, 5.0}) {
                const double dense = oracle::dense_partition_trace(beta, n).log_value;
                const double closed = oracle::partition_trace(beta, n).log_value;
                worst = std::max(worst, std::abs(std::expm1(dense - closed)));
            }
        }
        log.record("partition_trace", worst <= 1e-9, worst, 1e-9);
    }
    {
        double stationarity = 0.0, reversal = 0.0, consistency = 0.0, normalization = 0.0;
        for (int n = 1; n <= n_max; ++n) {
            const CylinderTable tab = enumerate(params, n);
            double total = 0.0;
            for (std::size_t i = 0; i < tab.size(); ++i) {
                Word w = tab.word_at(i);
                const double m = mu_checked(w);
                total += m;
                Word front1 = w, front2 = w, back1 = w, back2 = w;
                front1.insert(front1.begin(), Symbol::one);
                front2.insert(front2.begin(), Symbol::two);
                back1.push_back(Symbol::one);
                back2.push_back(Symbol::two);
                stationarity = std::max(stationarity, std::abs(mu_checked(front1) + mu(params, front2) - m));
                consistency = std::max(consistency, std::abs(mu_checked(back1) + mu(params, back2) - m));
                reversal = std::max(reversal, std::abs(m - mu(params, reversed(w))));
            }
            normalization = std::max(normalization, std::abs(total - 1.0));
        }
        log.record("stationarity", stationarity <= 1e-14, stationarity, 1e-14);
        log.record("kolmogorov_consistency", consistency <= 1e-14, consistency, 1e-14);
        log.record("reversal_symmetry", reversal <= 1e-14, reversal, 1e-14);
        log.record("normalization", normalization <= 1e-12, normalization, 1e-12);
    }
    {
        const ldp::Observable obs = parse_observable(ctx.config.observable_text);
        double worst = 0.0;
        double worst_long = 0.0;
        for (int n = 0; n <= std::min(n_max, 12); ++n) {
            for (int k = -3; k <= 3; ++k) {
                const double t = k;
                const double direct = ldp::q_direct(params, obs, n, t) + perturb;
                const double closed = ldp::q_recursive(params, obs, n, t);
                const double longrec = ldp::q_long_recursion(params, obs, n, t);
                worst = std::max(worst, std::abs(direct - closed) / closed);
                worst_long = std::max(worst_long, std::abs(longrec - closed) / closed);
            }
        }
        log.record("q_direct_vs_closed_form", worst <= 1e-10, worst, 1e-10);
        log.record("q_long_recursion_vs_closed_form", worst_long <= 1e-10, worst_long, 1e-10);
    }
    {
        double worst = 0.0;
        const std::array<Symbol, 2> syms{Symbol::one, Symbol::two};
        for (int gap = 2; gap <= std::min(std::max(n_max, 2), 10); ++gap) {
            for (Symbol a : syms)
                for (Symbol b : syms)
                    for (Symbol c : syms)
                        for (Symbol d : syms) {
                            const auto rep = stats::mixing_defect(params, a, b, c, d, gap);
                            worst = std::max(worst, std::abs(rep.defect + perturb - rep.predicted));
                        }
        }
        log.record("mixing_defect_formula", worst <= 1e-12, worst, 1e-12);
    }
    if (!params.degenerate) {
        const auto w = stats::markov_witness(params);
        log.record("not_markov", w.not_markov() && w.not_two_step(), std::abs(w.given_1 - w.given_11), 0.0);
    }
    passed = log.all_passed;
    return log.table;
}

Table cmd_free_energy(const Context& ctx) {
    const ldp::Observable obs = parse_observable(ctx.config.observable_text);
    const auto curve = ldp::free_energy_curve(ctx.params, obs, parse_range(ctx.config.t_range));
    Table table = base_table(ctx);
    table.add_config("A", ctx.config.observable_text);
    table.columns = {"t", "c", "dc"};
    for (std::size_t i = 0; i < curve.t.size(); ++i) table.add_row({curve.t[i], curve.c[i], curve.dc[i]});
    return table;
}

Table cmd_rate(const Context& ctx) {
    const ldp::Observable obs = parse_observable(ctx.config.observable_text);
    const ldp::RateFunction rate(ctx.params, obs);
    Table table = base_table(ctx);
    table.add_config("A", ctx.config.observable_text);
    table.columns = {"s", "I"};
    if (ctx.config.s_value) {
        table.add_row({*ctx.config.s_value, rate(*ctx.config.s_value)});
        return table;
    }
    const int points = std::max(ctx.config.grid_points, 2);
    for (int k = 0; k < points; ++k) {
        const double s = k == points - 1 ? obs.hi() : obs.lo() + (obs.hi() - obs.lo()) * k / (points - 1);
        table.add_row({s, rate(s)});
    }
    return table;
}

Table cmd_deviation(const Context& ctx) {
    const ldp::Observable obs = parse_observable(ctx.config.observable_text);
    const ldp::Interval set{ctx.config.lo, ctx.config.hi, true, true};
    const int n = ctx.config.n;
    Table table = base_table(ctx);
    table.add_config("A", ctx.config.observable_text);
    table.columns = {"n", "lo", "hi", "probability", "rate_estimate", "method"};
    const bool small = n <= ldp::kDeviationEnumerateMaxN;
    const double prob = small ? ldp::deviation_probability(ctx.params, obs, n, set)
                              : ldp::deviation_probability_dp(ctx.params, obs, n, set);
    table.add_row({static_cast<long long>(n), ctx.config.lo, ctx.config.hi, prob, -std::log(prob) / n,
                   std::string(small ? "enumeration" : "automaton")});
    return table;
}

Table cmd_jacobian(const Context& ctx) {
    Table table = base_table(ctx);
    table.columns = {"n", "ratio"};
    if (ctx.config.one_infinity > 0) {
        table.add_config("word", "1^inf");
        const auto ratios = jacobian::one_infinity_ratios(ctx.params, ctx.config.one_infinity);
        for (std::size_t i = 0; i < ratios.size(); ++i) table.add_row({static_cast<long long>(i + 1), ratios[i]});
        return table;
    }
    if (ctx.config.words.size() != 1) throw UsageError("jacobian needs exactly one word (or --one-infinity N)");
    const Word w = word_arg(ctx.config.words.front());
    table.add_config("word", format_word(w));
    const auto trace = jacobian::jacobian_trace(ctx.params, w);
    for (std::size_t i = 0; i < trace.ratios.size(); ++i) {
        table.add_row({static_cast<long long>(i + 1), trace.ratios[i]});
    }
    return table;
}

Table cmd_classify(const Context& ctx) {
    if (ctx.config.words.empty()) throw UsageError("classify needs at least one word");
    Table table = base_table(ctx);
    table.add_config("epsilon", ctx.config.epsilon);
    table.add_config("max_depth", std::to_string(ctx.config.max_depth));
    table.columns = {"word", "label", "depth_used"};
    for (const auto& text : ctx.config.words) {
        const Word w = word_arg(text);
        const auto cls = jacobian::classify(ctx.params, w, ctx.config.epsilon, ctx.config.max_depth);
        table.add_row({format_word(w), std::string(jacobian::label_name(cls.label)),
                       static_cast<long long>(cls.depth_used)});
    }
    return table;
}

Table cmd_code(const Context& ctx) {
    if (ctx.config.words.size() != 1) throw UsageError("code needs exactly one word");
    const Word k = word_arg(ctx.config.words.front());
    const auto m = coding::to_ab(k);
    const auto code = coding::to_alphabeta(m);
    Table table = base_table(ctx);
    table.columns = {"line", "value"};
    table.add_row({std::string("k"), format_word(k)});
    table.add_row({std::string("m"), coding::format_ab(m)});
    table.add_row({std::string("w"), coding::format_greek(code.w)});
    table.add_row({std::string("reduced_w"), coding::format_greek(coding::reduce(code.w))});
    table.add_row({std::string("held_back"),
                   code.held_back ? std::string(1, static_cast<char>(*code.held_back)) : std::string()});
    return table;
}

Table cmd_conjugacy(const Context& ctx) {
    Word w;
    Table table = base_table(ctx);
    if (!ctx.config.words.empty()) {
        w = word_arg(ctx.config.words.front());
    } else {
        if (ctx.config.n < 1) throw UsageError("conjugacy needs a word or --n with --seed");
        Sampler sampler(ctx.params, require_seed(ctx));
        w = sampler.sample(static_cast<std::size_t>(ctx.config.n));
    }
    const int depth = std::min<int>(ctx.config.max_depth, static_cast<int>(w.size()) - ctx.config.coords);
    if (depth < 1) throw UsageError("word too short for the requested number of coordinates");
    table.add_config("word", format_word(w));
    table.add_config("epsilon", ctx.config.epsilon);
    table.add_config("max_depth", std::to_string(depth));
    const auto out = coding::conjugacy_h(ctx.params, w, ctx.config.epsilon, depth, ctx.config.coords);
    table.columns = {"j", "c_j", "status"};
    for (std::size_t j = 0; j < out.coords.size(); ++j) {
        const auto& c = out.coords[j];
        report::Cell value = c.value >= 0 ? report::Cell{static_cast<long long>(c.value)} : report::Cell{std::string()};
        table.add_row({static_cast<long long>(j), value, std::string(coding::status_name(c.status))});
    }
    return table;
}

Table cmd_mixing(const Context& ctx) {
    const auto parts = split(ctx.config.abcd, ',');
    if (parts.size() != 4) throw UsageError("--abcd expects four symbols a,b,c,d");
    const int gap = ctx.config.n > 0 ? ctx.config.n : 2;
    const auto rep = stats::mixing_defect(ctx.params, parse_symbol(parts[0]), parse_symbol(parts[1]),
                                          parse_symbol(parts[2]), parse_symbol(parts[3]), gap);
    Table table = base_table(ctx);
    table.columns = {"abcd", "n", "exact_sum", "product", "defect", "predicted"};
    table.add_row({ctx.config.abcd, static_cast<long long>(gap), rep.exact_sum, rep.product, rep.defect, rep.predicted});
    return table;
}

Table cmd_sample(const Context& ctx) {
    const std::uint64_t seed = require_seed(ctx);
    if (ctx.config.n < 1) throw UsageError("sample needs --n >= 1");
    Sampler sampler(ctx.params, seed);
    Table table = base_table(ctx);
    table.add_config("n", std::to_string(ctx.config.n));
    table.columns = {"index", "word", "log_mu"};
    for (int i = 0; i < std::max(ctx.config.count, 1); ++i) {
        const auto draw = sampler.sample_with_log_prob(static_cast<std::size_t>(ctx.config.n));
        table.add_row({static_cast<long long>(i), format_word(draw.word), draw.log_mu});
    }
    return table;
}

Table cmd_entropy(const Context& ctx) {
    const std::uint64_t seed = require_seed(ctx);
    const int n = ctx.config.n > 0 ? ctx.config.n : 200;
    const int samples = ctx.config.count > 1 ? ctx.config.count : 10000;
    const auto est = stats::entropy_estimate(ctx.params, seed, n, samples);
    Table table = base_table(ctx);
    table.columns = {"n", "samples", "estimate", "half_width", "target", "relative_error"};
    table.add_row({static_cast<long long>(n), static_cast<long long>(samples), est.mean, est.half_width,
                   est.target, std::abs(est.mean - est.target) / est.target});
    return table;
}

Table cmd_birkhoff(const Context& ctx) {
    const std::uint64_t seed = require_seed(ctx);
    const ldp::Observable obs = parse_observable(ctx.config.observable_text);
    std::vector<int> ns;
    for (const auto& part : split(ctx.config.n_list, ',')) ns.push_back(static_cast<int>(to_double(part, "n")));
    const int samples = ctx.config.count > 1 ? ctx.config.count : 10000;
    const auto rows = stats::birkhoff_table(ctx.params, obs, seed, ns, ctx.config.epsilon, samples);
    Table table = base_table(ctx);
    table.add_config("A", ctx.config.observable_text);
    table.add_config("epsilon", ctx.config.epsilon);
    table.columns = {"n", "empirical", "exact", "band"};
    for (const auto& r : rows) table.add_row({static_cast<long long>(r.n), r.empirical, r.exact, r.band});
    return table;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Zero-temperature KMS measure of the quantum Ising chain: cylinder probabilities, "
                 "ergodic checks, large deviations and the Bernoulli recoding."};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--theta", cfg.theta_text, "angle in radians, or pi/6, pi/4, pi/3")->capture_default_str();
        sub->add_option("--format", cfg.format_text, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("-o,--output", cfg.output_path, "write the table to this file");
    };
    auto add_obs = [&](CLI::App* sub) {
        sub->add_option("--a", cfg.observable_text, "observable values A1,A2")->capture_default_str();
    };

    auto* cylinder = app.add_subcommand("cylinder", "mu of one or more words");
    add_common(cylinder);
    cylinder->add_option("--beta", cfg.beta, "also print the finite-temperature probability");
    cylinder->add_option("words", cfg.words, "words over {1,2}")->required();

    auto* enumerate_cmd = app.add_subcommand("enumerate", "all cylinder probabilities of one length");
    add_common(enumerate_cmd);
    enumerate_cmd->add_option("--n", cfg.n, "word length")->required();

    auto* verify = app.add_subcommand("verify", "oracle and identity checks; exit 1 on failure");
    add_common(verify);
    add_obs(verify);
    verify->add_option("--n", cfg.n, "largest word length checked (default 8)");
    verify->add_option("--beta", cfg.beta, "inverse temperature for the finite-beta check (default 10)");
    verify->add_option("--perturb", cfg.perturb, "add this to every recursion value (harness self-test)");

    auto* free_energy = app.add_subcommand("free-energy", "t, c(t), c'(t) table");
    add_common(free_energy);
    add_obs(free_energy);
    free_energy->add_option("--t-range", cfg.t_range, "lo:hi:step")->capture_default_str();

    auto* rate = app.add_subcommand("rate", "rate function I(s)");
    add_common(rate);
    add_obs(rate);
    rate->add_option("--s", cfg.s_value, "single evaluation point");
    rate->add_option("--points", cfg.grid_points, "grid size over [min A, max A]")->capture_default_str();

    auto* deviation = app.add_subcommand("deviation", "exact mu{S_n/n in [lo, hi]}");
    add_common(deviation);
    add_obs(deviation);
    deviation->add_option("--n", cfg.n, "number of summed coordinates")->required();
    deviation->add_option("--lo", cfg.lo, "lower bound of the set");
    deviation->add_option("--hi", cfg.hi, "upper bound of the set");

    auto* jac = app.add_subcommand("jacobian", "finite-depth Jacobian ratios of a word");
    add_common(jac);
    jac->add_option("words", cfg.words, "word over {1,2}");
    jac->add_option("--one-infinity", cfg.one_infinity, "ratios along 1^inf up to this depth");

    auto* classify = app.add_subcommand("classify", "label points A (J = p) or B (J = 1 - p)");
    add_common(classify);
    classify->add_option("words", cfg.words, "words over {1,2}")->required();
    classify->add_option("--epsilon", cfg.epsilon)->capture_default_str();
    classify->add_option("--max-depth", cfg.max_depth)->capture_default_str();

    auto* code = app.add_subcommand("code", "k -> m -> w recoding of a word");
    add_common(code);
    code->add_option("word", cfg.words, "word over {1,2}")->required();

    auto* conj = app.add_subcommand("conjugacy", "coordinates of the Bernoulli conjugacy");
    add_common(conj);
    conj->add_option("word", cfg.words, "word over {1,2}; omit to sample one");
    conj->add_option("--n", cfg.n, "sampled word length");
    conj->add_option("--seed", cfg.seed, "seed when sampling");
    conj->add_option("--coords", cfg.coords)->capture_default_str();
    conj->add_option("--epsilon", cfg.epsilon)->capture_default_str();
    conj->add_option("--max-depth", cfg.max_depth)->capture_default_str();

    auto* mixing = app.add_subcommand("mixing", "mixing defect for symbols a,b,c,d at gap n");
    add_common(mixing);
    mixing->add_option("--abcd", cfg.abcd)->capture_default_str();
    mixing->add_option("--n", cfg.n, "gap length (default 2)");

    auto* sample = app.add_subcommand("sample", "exact samples from mu");
    add_common(sample);
    sample->add_option("--n", cfg.n, "word length")->required();
    sample->add_option("--count", cfg.count)->capture_default_str();
    sample->add_option("--seed", cfg.seed)->required();

    auto* entropy = app.add_subcommand("entropy", "Shannon-McMillan-Breiman entropy estimate");
    add_common(entropy);
    entropy->add_option("--n", cfg.n, "word length (default 200)");
    entropy->add_option("--count", cfg.count, "number of samples (default 10000)");
    entropy->add_option("--seed", cfg.seed)->required();

    auto* birkhoff = app.add_subcommand("birkhoff", "empirical vs exact deviation frequencies");
    add_common(birkhoff);
    add_obs(birkhoff);
    birkhoff->add_option("--n-list", cfg.n_list)->capture_default_str();
    birkhoff->add_option("--epsilon", cfg.epsilon)->capture_default_str();
    birkhoff->add_option("--count", cfg.count, "samples per n (default 10000)");
    birkhoff->add_option("--seed", cfg.seed)->required();

    std::vector<std::string> reversed_args(args.rbegin(), args.rend());
    try {
        app.parse(reversed_args);
    } catch (const CLI::ParseError& e) {
        const int code_value = app.exit(e, out, err);
        return code_value == 0 ? kExitOk : kExitUsage;
    }

    Context ctx;
    ctx.config = cfg;
    ctx.command = app.get_subcommands().front()->get_name();
    ctx.format = cfg.format_text == "json" ? report::Format::json : report::Format::csv;
    try {
        ctx.params = new_params(parse_theta(cfg.theta_text));
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    static const std::map<std::string, std::function<Table(const Context&)>> commands{
        {"cylinder", cmd_cylinder},   {"enumerate", cmd_enumerate}, {"free-energy", cmd_free_energy},
        {"rate", cmd_rate},           {"deviation", cmd_deviation}, {"jacobian", cmd_jacobian},
        {"classify", cmd_classify},   {"code", cmd_code},           {"conjugacy", cmd_conjugacy},
        {"mixing", cmd_mixing},       {"sample", cmd_sample},       {"entropy", cmd_entropy},
        {"birkhoff", cmd_birkhoff},
    };

    Table table;
    bool passed = true;
    try {
        if (ctx.command == "verify") {
            table = cmd_verify(ctx, passed);
        } else {
            table = commands.at(ctx.command)(ctx);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }

    if (cfg.output_path.empty()) {
        report::write(table, ctx.format, out);
    } else {
        std::ofstream file(cfg.output_path);
        if (!file) {
            err << "error: cannot open " << cfg.output_path << '\n';
            return kExitFailure;
        }
        report::write(table, ctx.format, file);
    }
    if (!passed) {
        err << "verify: at least one check failed\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace kms::cli
