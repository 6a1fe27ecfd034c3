#include "pileshuffle/cli.hpp"

#include "pileshuffle/io.hpp"
#include "pileshuffle/multiround.hpp"
#include "pileshuffle/permutation.hpp"
#include "pileshuffle/shuffle.hpp"
#include "pileshuffle/sorter.hpp"
#include "pileshuffle/stats.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace pileshuffle::cli {

namespace {

struct CliConfig {
    bool embedding = false;
    std::string format = "text";
    std::uint64_t seed = 1;
    std::uint64_t search_budget = 1'000'000;
    bool tableau = false;
    int verbosity = 0;

    bool structured() const { return format == "structured"; }
};

/// Raised for bad input; maps to kUsageError.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Permutation read_permutation(const std::vector<std::string>& tokens, std::istream& in, const CliConfig& config)
{
    std::string text;
    if (tokens.empty()) {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        for (const auto& t : tokens) text += t + ' ';
    }
    try {
        auto values = parse_integers(text);
        return config.embedding ? Permutation::from_embedding(std::move(values)) : Permutation::from_sequence(values);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("invalid permutation: ") + e.what());
    }
}

std::vector<std::size_t> parse_capacities(const std::string& text)
{
    std::vector<std::size_t> caps;
    try {
        caps = parse_integers(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("invalid --rounds: ") + e.what());
    }
    if (caps.empty()) throw UsageError("--rounds needs at least one capacity");
    for (std::size_t m : caps) {
        if (m == 0) throw UsageError("--rounds capacities must be positive");
    }
    return caps;
}

std::string scalar_text(const Json& value)
{
    return value.is_string() ? value.get<std::string>() : value.dump();
}

/// Prints "key: value" lines for every scalar in @p doc, nested keys joined by '.'.
void print_flat(std::ostream& out, const Json& doc, const std::string& prefix = {})
{
    for (const auto& [key, value] : doc.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            print_flat(out, value, name);
        } else if (value.is_array()) {
            out << name << ':';
            for (const auto& v : value) out << ' ' << scalar_text(v);
            out << '\n';
        } else {
            out << name << ": " << scalar_text(value) << '\n';
        }
    }
}

void emit(std::ostream& out, const CliConfig& config, const Json& doc)
{
    if (config.structured()) {
        out << doc.dump(2) << '\n';
    } else {
        print_flat(out, doc);
    }
}

// ---------------------------------------------------------------- stats

int cmd_stats(const Permutation& p, const CliConfig& config, std::ostream& out)
{
    const auto deck = p.sequence();
    const SortPlan dealer = dealer_choice_minimal_sort(p);
    Json doc;
    doc["n"] = p.size();
    doc["deck"] = deck;
    doc["embedding"] = p.images();
    doc["descents"] = descents(p);
    doc["ascents"] = ascents(p);
    doc["ascending_runs"] = ascending_runs(p);
    doc["descending_runs"] = descending_runs(p);
    doc["readings"] = readings(deck);
    doc["min_queues"] = minimal_queue_sort(p).piles_used;
    doc["min_stacks"] = minimal_stack_sort(p).piles_used;
    doc["dealer_min"] = dealer.piles_used;
    doc["dealer_types"] = dealer.types.to_string();
    emit(out, config, doc);
    return kSuccess;
}

// ---------------------------------------------------------------- sort

struct SortRequest {
    std::string mode = "queues";
    std::string types;
    std::optional<std::size_t> budget;
    std::string rounds;
    bool prune = false;
};

Json infeasible_doc(const std::string& reason)
{
    Json doc;
    doc["feasible"] = false;
    doc["reason"] = reason;
    return doc;
}

int report_single(const Permutation& p, const SortPlan& plan, const std::string& mode, const CliConfig& config,
                  std::ostream& out)
{
    const ShuffleTableau tableau = render_tableau(p, plan.assignment, plan.types);
    Json doc;
    doc["feasible"] = true;
    doc["mode"] = mode;
    doc["plan"] = to_json(plan);
    if (config.structured()) {
        if (config.tableau) doc["tableau"] = to_json(tableau);
        out << doc.dump(2) << '\n';
    } else {
        print_flat(out, doc);
        out << tableau.to_text();
    }
    return kSuccess;
}

int report_multi(const Permutation& p, const MultiRoundPlan& plan, const std::string& mode, const CliConfig& config,
                 std::ostream& out)
{
    Json doc;
    doc["feasible"] = true;
    doc["mode"] = mode;
    doc["plan"] = to_json(plan);

    std::vector<ShuffleTableau> tableaus;
    if (config.tableau) {
        Permutation deck = p;
        for (std::size_t t = 0; t < plan.round_types.round_count(); ++t) {
            const auto& types = plan.round_types.round(t);
            const auto assignment = to_pile_assignment(plan.assignments[t]);
            tableaus.push_back(render_tableau(deck, assignment, types));
            deck = apply_shuffle(types, assignment, deck);
        }
    }
    if (config.structured()) {
        if (config.tableau) {
            Json list = Json::array();
            for (const auto& tab : tableaus) list.push_back(to_json(tab));
            doc["tableaus"] = std::move(list);
        }
        out << doc.dump(2) << '\n';
    } else {
        print_flat(out, doc);
        for (std::size_t t = 0; t < tableaus.size(); ++t) out << "round " << t + 1 << ":\n" << tableaus[t].to_text();
    }
    return kSuccess;
}

int report_infeasible(const Json& doc, const CliConfig& config, std::ostream& out, int code = kInfeasible)
{
    emit(out, config, doc);
    return code;
}

std::vector<TypeSchedule> parse_round_types(const std::string& text)
{
    std::vector<TypeSchedule> rounds;
    std::string current;
    auto flush = [&] {
        if (current.empty()) throw UsageError("empty round in --types");
        try {
            rounds.push_back(TypeSchedule::parse(current));
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("invalid --types: ") + e.what());
        }
        current.clear();
    };
    for (char c : text) {
        if (c == ',' || c == '/') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            current.push_back(c);
        }
    }
    flush();
    return rounds;
}

int cmd_sort(const Permutation& p, SortRequest request, const CliConfig& config, std::ostream& out)
{
    if (request.mode.rfind("types:", 0) == 0) {
        request.types = request.mode.substr(6);
        request.mode = "types";
    }
    const std::string& mode = request.mode;
    if (mode != "queues" && mode != "stacks" && mode != "dealer" && mode != "types") {
        throw UsageError("unknown --mode '" + mode + "' (expected queues, stacks, dealer or types:<QS..>)");
    }
    if (mode == "types" && request.types.empty()) throw UsageError("--mode types needs --types QS..");
    if (mode != "types" && !request.types.empty()) throw UsageError("--types is only valid with --mode types");
    if (request.budget && !request.rounds.empty()) throw UsageError("--budget and --rounds are mutually exclusive");

    std::optional<std::vector<std::size_t>> capacities;
    if (!request.rounds.empty()) capacities = parse_capacities(request.rounds);

    if (mode == "types") {
        auto rounds = parse_round_types(request.types);
        if (rounds.size() > 1 || capacities) {
            RoundTypes rt(std::move(rounds));
            if (capacities && *capacities != rt.capacities()) {
                throw UsageError("--rounds disagrees with the pile counts in --types");
            }
            const auto result = minimal_multiround_sort(p, rt);
            if (const auto* plan = std::get_if<MultiRoundPlan>(&result)) return report_multi(p, *plan, mode, config, out);
            const auto& why = std::get<Infeasible>(result);
            Json doc = infeasible_doc("virtual pile budget exceeded");
            doc["position"] = why.position;
            doc["virtual_piles"] = why.piles_available;
            return report_infeasible(doc, config, out);
        }
        if (request.budget) throw UsageError("--budget does not apply to a fixed type schedule");
        const auto result = minimal_sort_on_types(p, rounds.front());
        if (const auto* plan = std::get_if<SortPlan>(&result)) return report_single(p, *plan, mode, config, out);
        const auto& why = std::get<Infeasible>(result);
        Json doc = infeasible_doc("type schedule too short");
        doc["position"] = why.position;
        doc["piles_available"] = why.piles_available;
        return report_infeasible(doc, config, out);
    }

    if (capacities) {
        if (mode == "dealer") {
            DealerSearchOptions options;
            options.max_candidates = config.search_budget;
            options.prune = request.prune;
            const auto result = dealer_search(p, *capacities, options);
            if (const auto* plan = std::get_if<MultiRoundPlan>(&result)) return report_multi(p, *plan, mode, config, out);
            if (const auto* budget = std::get_if<BudgetExceeded>(&result)) {
                Json doc = infeasible_doc("search budget exceeded");
                doc["candidates_checked"] = budget->candidates_checked;
                return report_infeasible(doc, config, out, kBudgetExceeded);
            }
            Json doc = infeasible_doc("no type schedule sorts the deck");
            doc["capacities"] = *capacities;
            return report_infeasible(doc, config, out);
        }
        const PileType type = mode == "queues" ? PileType::Queue : PileType::Stack;
        const auto result = minimal_multiround_sort(p, RoundTypes::homogeneous(type, *capacities));
        if (const auto* plan = std::get_if<MultiRoundPlan>(&result)) return report_multi(p, *plan, mode, config, out);
        const auto& why = std::get<Infeasible>(result);
        Json doc = infeasible_doc("virtual pile budget exceeded");
        doc["position"] = why.position;
        doc["virtual_piles"] = why.piles_available;
        return report_infeasible(doc, config, out);
    }

    const SortPlan plan = mode == "queues"   ? minimal_queue_sort(p)
                          : mode == "stacks" ? minimal_stack_sort(p)
                                             : dealer_choice_minimal_sort(p);
    if (request.budget && plan.piles_used > *request.budget) {
        Json doc = infeasible_doc("pile budget exceeded");
        doc["piles_needed"] = plan.piles_used;
        doc["budget"] = *request.budget;
        return report_infeasible(doc, config, out);
    }
    return report_single(p, plan, mode, config, out);
}

// ---------------------------------------------------------------- shuffle

int cmd_shuffle(const Permutation& p, const std::string& plan_path, const CliConfig& config, std::ostream& out)
{
    std::ifstream file(plan_path);
    if (!file) throw UsageError("cannot open plan file '" + plan_path + "'");
    ShufflePlan plan;
    try {
        plan = shuffle_plan_from_json(Json::parse(file));
    } catch (const Json::exception& e) {
        throw UsageError(std::string("plan file is not valid JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("invalid plan: ") + e.what());
    }

    // Normalize both plan kinds to a list of rounds.
    std::vector<std::pair<TypeSchedule, PileAssignment>> rounds;
    if (const auto* single = std::get_if<SortPlan>(&plan)) {
        rounds.emplace_back(single->types, single->assignment);
    } else {
        const auto& multi = std::get<MultiRoundPlan>(plan);
        for (std::size_t t = 0; t < multi.round_types.round_count(); ++t) {
            rounds.emplace_back(multi.round_types.round(t), to_pile_assignment(multi.assignments[t]));
        }
    }

    Permutation deck = p;
    std::vector<ShuffleTableau> tableaus;
    for (const auto& [types, assignment] : rounds) {
        if (assignment.size() != deck.size()) {
            throw UsageError("plan assigns " + std::to_string(assignment.size()) + " labels but the deck has " +
                             std::to_string(deck.size()));
        }
        try {
            if (config.tableau) tableaus.push_back(render_tableau(deck, assignment, types));
            deck = apply_shuffle(types, assignment, deck);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("plan does not match the deck: ") + e.what());
        }
    }

    Json doc;
    doc["deck"] = deck.sequence();
    doc["sorted"] = deck.is_identity();
    if (config.structured()) {
        if (config.tableau) {
            Json list = Json::array();
            for (const auto& tab : tableaus) list.push_back(to_json(tab));
            doc["tableaus"] = std::move(list);
        }
        out << doc.dump(2) << '\n';
    } else {
        for (std::size_t t = 0; t < tableaus.size(); ++t) out << "round " << t + 1 << ":\n" << tableaus[t].to_text();
        out << to_string(deck.sequence()) << '\n';
    }
    return kSuccess;
}

// ---------------------------------------------------------------- prob

struct ProbRequest {
    std::size_t n = 0;
    std::size_t m = 0;
    std::string mode = "queues";
    std::uint64_t mc_samples = 0;
    std::size_t exact_limit = 400;
    unsigned threads = 1;
};

int cmd_prob(const ProbRequest& request, const CliConfig& config, std::ostream& out)
{
    if (request.n == 0 || request.m == 0) throw UsageError("prob needs n >= 1 and m >= 1");
    ProbabilityReport report;
    report.n = request.n;
    report.m = request.m;
    if (request.mode == "queues") {
        report.mode = SortMode::AllQueues;
    } else if (request.mode == "stacks") {
        report.mode = SortMode::AllStacks;
    } else if (request.mode == "dealer") {
        report.mode = SortMode::DealerChoice;
    } else {
        throw UsageError("unknown --mode '" + request.mode + "' (expected queues, stacks or dealer)");
    }

    const bool closed_form = report.mode != SortMode::DealerChoice;
    if (closed_form) {
        if (request.n <= request.exact_limit) {
            report.exact = sortable_probability_exact(request.n, request.m, report.mode);
        } else if (request.mc_samples == 0) {
            throw UsageError("n = " + std::to_string(request.n) + " exceeds the exact limit of " +
                             std::to_string(request.exact_limit) + "; raise --exact-limit or pass --mc-samples");
        }
        report.normal_approx = normal_approx_probability(request.n, request.m);
        report.clt_limit = clt_limit_probability(request.n, request.m);
    } else if (request.mc_samples == 0) {
        throw UsageError("dealer mode has no closed form; pass --mc-samples");
    }
    if (request.mc_samples > 0) {
        report.mc = sortable_probability_mc(request.n, request.m, report.mode, request.mc_samples, config.seed,
                                            request.threads);
    }
    emit(out, config, to_json(report));
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Pile shuffle sorting toolkit", "pileshuffle"};
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig config;
    app.add_flag("--embedding", config.embedding, "Read permutations as images p(1..n) instead of deck order");
    app.add_option("--format", config.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--seed", config.seed, "Seed for all randomness");
    app.add_option("--search-budget", config.search_budget, "Maximum candidates for dealer's-choice search");
    app.add_flag("--tableau", config.tableau, "Include shuffle tableaus");
    app.add_flag("-v,--verbose", config.verbosity, "Verbosity");

    std::vector<std::string> perm_tokens;

    auto* stats = app.add_subcommand("stats", "Permutation statistics and minimal pile counts");
    stats->add_option("perm", perm_tokens, "Permutation (reads stdin if omitted)");

    SortRequest sort_request;
    auto* sort = app.add_subcommand("sort", "Construct a minimal sorting shuffle");
    sort->add_option("perm", perm_tokens, "Permutation (reads stdin if omitted)");
    sort->add_option("--mode", sort_request.mode, "queues | stacks | dealer | types:<QS..>");
    sort->add_option("--types", sort_request.types, "Pile types, rounds separated by ','");
    sort->add_option("--budget", sort_request.budget, "Maximum number of piles (single round)");
    sort->add_option("--rounds", sort_request.rounds, "Per-round pile capacities, e.g. 2,2");
    sort->add_flag("--prune", sort_request.prune, "Reject dealer searches that no virtual schedule could satisfy");

    std::string plan_path;
    auto* shuffle = app.add_subcommand("shuffle", "Apply a plan file to a deck");
    shuffle->add_option("perm", perm_tokens, "Permutation (reads stdin if omitted)");
    shuffle->add_option("--plan", plan_path, "Plan file (JSON)")->required();

    ProbRequest prob_request;
    auto* prob = app.add_subcommand("prob", "Probability that m piles sort a random deck of size n");
    prob->add_option("n", prob_request.n, "Deck size")->required();
    prob->add_option("m", prob_request.m, "Number of piles")->required();
    prob->add_option("--mode", prob_request.mode, "queues | stacks | dealer");
    prob->add_option("--mc-samples", prob_request.mc_samples, "Monte Carlo samples (0 = none)");
    prob->add_option("--exact-limit", prob_request.exact_limit, "Largest n for the exact computation");
    prob->add_option("--threads", prob_request.threads, "Monte Carlo worker threads");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
            err << "run 'pileshuffle " << sub->get_name() << " --help' for usage\n";
        }
        return kUsageError;
    }

    try {
        if (stats->parsed()) return cmd_stats(read_permutation(perm_tokens, in, config), config, out);
        if (sort->parsed()) return cmd_sort(read_permutation(perm_tokens, in, config), sort_request, config, out);
        if (shuffle->parsed()) return cmd_shuffle(read_permutation(perm_tokens, in, config), plan_path, config, out);
        if (prob->parsed()) return cmd_prob(prob_request, config, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace pileshuffle::cli
