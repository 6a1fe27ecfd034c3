#include "pileshuffle/io.hpp"

namespace pileshuffle {

namespace {

std::vector<std::size_t> read_assignment(const Json& value, const char* where)
{
    if (!value.is_array()) throw InvalidDocument(std::string(where) + ": \"assignment\" must be an array");
    std::vector<std::size_t> piles;
    piles.reserve(value.size());
    for (const auto& v : value) {
        if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) {
            throw InvalidDocument(std::string(where) + ": pile numbers must be positive integers, got " + v.dump());
        }
        piles.push_back(v.get<std::size_t>());
    }
    return piles;
}

TypeSchedule read_types(const Json& value, const char* where)
{
    if (!value.is_string()) throw InvalidDocument(std::string(where) + ": \"types\" must be a Q/S string");
    try {
        return TypeSchedule::parse(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw InvalidDocument(std::string(where) + ": " + e.what());
    }
}

const Json& field(const Json& doc, const char* key)
{
    if (!doc.is_object() || !doc.contains(key)) throw InvalidDocument(std::string("missing field \"") + key + "\"");
    return doc.at(key);
}

}  // namespace

Json to_json(const SortPlan& plan)
{
    Json doc;
    doc["piles_used"] = plan.piles_used;
    doc["types"] = plan.types.to_string();
    doc["assignment"] = plan.assignment.piles();
    return doc;
}

Json to_json(const MultiRoundPlan& plan)
{
    Json doc;
    doc["capacities"] = plan.round_types.capacities();
    Json rounds = Json::array();
    for (std::size_t t = 0; t < plan.round_types.round_count(); ++t) {
        Json round;
        round["types"] = plan.round_types.round(t).to_string();
        round["assignment"] = to_pile_assignment(plan.assignments[t]).piles();
        rounds.push_back(std::move(round));
    }
    doc["rounds"] = std::move(rounds);
    return doc;
}

Json to_json(const ShuffleTableau& tableau)
{
    Json doc;
    doc["columns"] = tableau.columns;
    Json rows = Json::array();
    for (const auto& row : tableau.rows) {
        Json r;
        r["pile"] = row.pile;
        r["type"] = std::string(1, type_letter(row.type));
        Json cells = Json::array();
        for (const auto& cell : row.cells) cells.push_back(cell ? Json(*cell) : Json(nullptr));
        r["cells"] = std::move(cells);
        r["labels"] = tableau.row_labels(row);
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc;
}

SortPlan sort_plan_from_json(const Json& doc)
{
    SortPlan plan;
    plan.types = read_types(field(doc, "types"), "sort plan");
    plan.assignment = PileAssignment(read_assignment(field(doc, "assignment"), "sort plan"));
    const auto& used = field(doc, "piles_used");
    if (!used.is_number_unsigned()) throw InvalidDocument("sort plan: \"piles_used\" must be a count");
    plan.piles_used = used.get<std::size_t>();
    if (plan.assignment.max_pile() > plan.types.size()) {
        throw InvalidDocument("sort plan: assignment uses pile " + std::to_string(plan.assignment.max_pile()) +
                              " but only " + std::to_string(plan.types.size()) + " types are given");
    }
    return plan;
}

MultiRoundPlan multiround_plan_from_json(const Json& doc)
{
    const auto& rounds = field(doc, "rounds");
    if (!rounds.is_array()) throw InvalidDocument("multi-round plan: \"rounds\" must be an array");

    std::vector<TypeSchedule> schedules;
    std::vector<Digits> assignments;
    for (const auto& round : rounds) {
        schedules.push_back(read_types(field(round, "types"), "multi-round plan"));
        if (schedules.back().size() == 0) throw InvalidDocument("multi-round plan: a round has no piles");
        assignments.push_back(to_digits(PileAssignment(read_assignment(field(round, "assignment"), "multi-round plan"))));
    }
    MultiRoundPlan plan{RoundTypes(std::move(schedules)), std::move(assignments)};

    if (doc.contains("capacities")) {
        const auto& caps = doc.at("capacities");
        if (!caps.is_array() || caps.get<std::vector<std::size_t>>() != plan.round_types.capacities()) {
            throw InvalidDocument("multi-round plan: \"capacities\" disagrees with the round types");
        }
    }
    const std::size_t n = plan.assignments.empty() ? 0 : plan.assignments.front().size();
    try {
        validate_plan(plan, n);
    } catch (const std::invalid_argument& e) {
        throw InvalidDocument(std::string("multi-round plan: ") + e.what());
    }
    return plan;
}

ShufflePlan shuffle_plan_from_json(const Json& doc)
{
    if (doc.is_object() && doc.contains("rounds")) return multiround_plan_from_json(doc);
    return sort_plan_from_json(doc);
}

Json to_json(const ProbabilityReport& report)
{
    Json doc;
    doc["n"] = report.n;
    doc["m"] = report.m;
    doc["mode"] = to_string(report.mode);
    if (report.exact) {
        doc["exact"] = to_string(*report.exact);
        doc["float"] = static_cast<double>(*report.exact);
    }
    if (report.normal_approx) doc["normal_approx"] = *report.normal_approx;
    if (report.clt_limit) doc["clt_limit"] = *report.clt_limit;
    if (report.mc) {
        Json mc;
        mc["samples"] = report.mc->samples;
        mc["estimate"] = report.mc->estimate;
        mc["stderr"] = report.mc->standard_error;
        mc["seed"] = report.mc->seed;
        doc["mc"] = std::move(mc);
    }
    return doc;
}

}  // namespace pileshuffle
