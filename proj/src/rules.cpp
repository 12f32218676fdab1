#include "vqrsim/rules.hpp"

#include <fstream>

#include <json.hpp>

#include "vqrsim/errors.hpp"

namespace vqrsim {

std::string_view to_string(MeritOutcome o) {
    switch (o) {
        case MeritOutcome::A: return "A";
        case MeritOutcome::B: return "B";
        case MeritOutcome::C: return "C";
        case MeritOutcome::D: return "D";
        case MeritOutcome::IR: return "IR";
    }
    return "D";
}

std::optional<MeritOutcome> parse_merit(std::string_view s) {
    if (s == "A") return MeritOutcome::A;
    if (s == "B") return MeritOutcome::B;
    if (s == "C") return MeritOutcome::C;
    if (s == "D") return MeritOutcome::D;
    if (s == "IR") return MeritOutcome::IR;
    return std::nullopt;
}

double RuleSet::merit_score(MeritOutcome o) const {
    if (o == MeritOutcome::IR)
        throw DomainError("IR has no merit score; it resolves through ir_score");
    return merit_scores[static_cast<std::size_t>(o)];
}

RuleSet parse_ruleset_text(const std::string& json_text, const std::string& context) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(context + ": " + e.what());
    }
    if (!doc.is_object())
        throw ParseError(context + ": rule set must be a JSON object");

    RuleSet rs;
    try {
        rs.uda = doc.value("uda", std::string());

        if (!doc.contains("matrices") || !doc["matrices"].is_array() || doc["matrices"].empty())
            throw ParseError(context + ": 'matrices' must be a non-empty array");
        for (const auto& m : doc["matrices"]) {
            ClassificationMatrix matrix;
            const auto& years = m.at("years");
            if (!years.is_array() || years.size() != 2)
                throw ParseError(context + ": matrix 'years' must be [start, end]");
            matrix.year_start = years[0].get<int>();
            matrix.year_end = years[1].get<int>();
            if (matrix.year_start > matrix.year_end)
                throw DomainError(context + ": matrix years out of order");
            const auto& cells = m.at("cells");
            if (!cells.is_object() || cells.size() != 16)
                throw ParseError(context + ": matrix must define exactly 16 cells");
            for (int ic = 1; ic <= 4; ++ic)
                for (int ir = 1; ir <= 4; ++ir) {
                    std::string key = std::to_string(ic) + "," + std::to_string(ir);
                    if (!cells.contains(key))
                        throw ParseError(context + ": missing cell '" + key + "'");
                    auto merit = parse_merit(cells[key].get<std::string>());
                    if (!merit)
                        throw ParseError(context + ": bad outcome in cell '" + key + "'");
                    matrix.cells[static_cast<std::size_t>((ic - 1) * 4 + (ir - 1))] = *merit;
                }
            rs.matrices.push_back(matrix);
        }
        for (std::size_t i = 0; i < rs.matrices.size(); ++i)
            for (std::size_t j = i + 1; j < rs.matrices.size(); ++j)
                if (rs.matrices[i].year_start <= rs.matrices[j].year_end &&
                    rs.matrices[j].year_start <= rs.matrices[i].year_end)
                    throw DomainError(context + ": matrix periods overlap");

        if (doc.contains("merit_scores")) {
            const auto& ms = doc["merit_scores"];
            rs.merit_scores = {ms.at("A").get<double>(), ms.at("B").get<double>(),
                               ms.at("C").get<double>(), ms.at("D").get<double>()};
        }
        if (!(rs.merit_scores[0] > rs.merit_scores[1] && rs.merit_scores[1] > rs.merit_scores[2] &&
              rs.merit_scores[2] > rs.merit_scores[3]))
            throw DomainError(context + ": merit scores must be strictly decreasing A>B>C>D");

        rs.ir_score = doc.value("ir_score", 0.5);
        if (!(rs.ir_score >= 0.0 && rs.ir_score <= 1.0))
            throw DomainError(context + ": ir_score outside [0, 1]");
        rs.unindexed_score = doc.value("unindexed_score", 0.25);
        rs.penalty_missing = doc.value("penalty_missing", -0.5);
        rs.penalty_inadmissible = doc.value("penalty_inadmissible", -1.0);
        rs.penalty_fraud = doc.value("penalty_fraud", -2.0);

        std::string mode = doc.value("missing_mode", "zero");
        if (mode == "zero")
            rs.missing_mode = MissingMode::zero;
        else if (mode == "penalty")
            rs.missing_mode = MissingMode::penalty;
        else
            throw ParseError(context + ": missing_mode must be 'zero' or 'penalty'");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(context + ": " + e.what());
    }
    return rs;
}

RuleSet load_ruleset(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw ParseError("cannot open " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_ruleset_text(text, file.string());
}

MeritOutcome classify(const RuleSet& rules, PercentileClass ic, PercentileClass ir, int year) {
    for (const auto& m : rules.matrices)
        if (m.covers(year))
            return m.at(ic, ir);
    throw DomainError("no classification matrix covers year " + std::to_string(year) +
                      " in uda '" + rules.uda + "'");
}

VqrScore score_publication(const RuleSet& rules, const Publication& pub,
                           const BenchmarkSet& benchmarks) {
    if (!pub.indexed || !pub.journal_metric)
        return VqrScore{std::nullopt, rules.unindexed_score};
    const auto& cdist = benchmarks.citation_cell(pub, rules.uda);
    const auto& mdist = benchmarks.pooled_cell(pub);
    PercentileClass ic = class_of(percentile(cdist, pub.citations, Axis::citations));
    PercentileClass ir = class_of(percentile(mdist, *pub.journal_metric, Axis::metric));
    MeritOutcome outcome = classify(rules, ic, ir, pub.year);
    double value =
        outcome == MeritOutcome::IR ? rules.ir_score : rules.merit_score(outcome);
    return VqrScore{outcome, value};
}

double penalty_for(const RuleSet& rules, PenaltyEvent event) {
    switch (event) {
        case PenaltyEvent::missing_product:
            return rules.missing_mode == MissingMode::zero ? 0.0 : rules.penalty_missing;
        case PenaltyEvent::inadmissible:
            return rules.penalty_inadmissible;
        case PenaltyEvent::fraud:
            return rules.penalty_fraud;
    }
    return 0.0;
}

}  // namespace vqrsim
