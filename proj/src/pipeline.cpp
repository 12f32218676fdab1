#include "vqrsim/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "vqrsim/csv.hpp"
#include "vqrsim/errors.hpp"
#include "vqrsim/indicators.hpp"
#include "vqrsim/selection.hpp"
#include "vqrsim/util.hpp"

namespace vqrsim {

namespace {

template <typename F>
auto stage(const char* name, F&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(std::string(name) + ": " + e.what());
    } catch (const std::exception& e) {
        throw Error(std::string(name) + ": " + e.what());
    }
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    for (std::size_t i = 0; i < k; ++i)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

nlohmann::json opt_number(std::optional<double> v) {
    if (!v)
        return nullptr;
    return round_g6(*v);
}

}  // namespace

RunConfig RunConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw ParseError("cannot open " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(file.string() + ": " + e.what());
    }

    std::filesystem::path base = file.parent_path();
    auto resolve = [&](const std::string& s) {
        std::filesystem::path p(s);
        return p.is_absolute() ? p : base / p;
    };

    RunConfig cfg;
    try {
        cfg.corpus_dir = resolve(doc.at("corpus_dir").get<std::string>());
        if (doc.contains("window")) {
            cfg.window.start = doc["window"].at(0).get<int>();
            cfg.window.end = doc["window"].at(1).get<int>();
        }
        if (doc.contains("rulesets"))
            for (const auto& [uda, path] : doc["rulesets"].items())
                cfg.ruleset_paths[uda] = resolve(path.get<std::string>());
        if (doc.contains("default_ruleset"))
            cfg.default_ruleset = resolve(doc["default_ruleset"].get<std::string>());
        if (doc.contains("credit_policy")) {
            const auto& cp = doc["credit_policy"];
            std::string mode = cp.value("mode", "equal_split");
            if (mode == "equal_split")
                cfg.credit_policy.mode = CreditMode::equal_split;
            else if (mode == "life_science_byline")
                cfg.credit_policy.mode = CreditMode::life_science_byline;
            else
                throw ParseError(file.string() + ": unknown credit mode '" + mode + "'");
            if (cp.contains("life_science_udas"))
                for (const auto& u : cp["life_science_udas"])
                    cfg.credit_policy.life_science_udas.insert(u.get<std::string>());
        }
        if (doc.contains("faii_substitution_years")) {
            cfg.faii_substitution_years.clear();
            for (const auto& y : doc["faii_substitution_years"])
                cfg.faii_substitution_years.insert(y.get<int>());
        }
        if (doc.contains("missing_mode")) {
            std::string mode = doc["missing_mode"].get<std::string>();
            if (mode == "zero")
                cfg.missing_mode = MissingMode::zero;
            else if (mode == "penalty")
                cfg.missing_mode = MissingMode::penalty;
            else
                throw ParseError(file.string() + ": missing_mode must be 'zero' or 'penalty'");
        }
        if (doc.contains("exclusion")) {
            cfg.uda_min_staff = doc["exclusion"].value("uda_min_staff", cfg.uda_min_staff);
            cfg.overall_min_staff =
                doc["exclusion"].value("overall_min_staff", cfg.overall_min_staff);
        }
        if (doc.contains("category_merge_map")) {
            // either an inline object or a path to a JSON file
            if (doc["category_merge_map"].is_string())
                cfg.category_merge = load_category_merge_map(
                    resolve(doc["category_merge_map"].get<std::string>()));
            else
                cfg.category_merge = parse_category_merge_map(
                    doc["category_merge_map"].dump(), file.string());
        }
        if (doc.contains("split_review_udas"))
            for (const auto& u : doc["split_review_udas"])
                cfg.split_review_udas.insert(u.get<std::string>());
        if (doc.contains("out_dir"))
            cfg.out_dir = resolve(doc["out_dir"].get<std::string>());
        cfg.dump_selections = doc.value("dump_selections", false);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(file.string() + ": " + e.what());
    }
    if (cfg.uda_min_staff < 0 || cfg.overall_min_staff < 0)
        throw DomainError(file.string() + ": exclusion thresholds must be >= 0");
    return cfg;
}

std::vector<std::filesystem::path> synth_to_dir(const SynthSpec& spec,
                                                const std::filesystem::path& out_dir) {
    Corpus corpus = generate(spec);
    save_corpus(corpus, out_dir);
    auto paths = CorpusPaths::in_dir(out_dir);
    return {paths.universities, paths.researchers, paths.publications, paths.authorships};
}

void write_ranking_csv(const RankingList& list, const std::filesystem::path& file) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : list.entries)
        rows.push_back({e.university_id, format_g6(e.score), std::to_string(e.rank),
                        std::to_string(e.quartile)});
    write_csv(file, {"university_id", "score", "rank", "quartile"}, rows);
}

RankingList read_ranking_csv(const std::filesystem::path& file) {
    RankingList list;
    list.scope = file.stem().string();
    for (const auto& row : read_csv(file, {"university_id", "score", "rank", "quartile"})) {
        RankEntry e;
        e.university_id = row.fields[0];
        e.score = parse_double(row.fields[1], file, row.line_no, "score");
        e.rank = parse_int(row.fields[2], file, row.line_no, "rank");
        e.quartile = parse_int(row.fields[3], file, row.line_no, "quartile");
        list.entries.push_back(std::move(e));
    }
    return list;
}

std::string comparison_json_text(const ComparisonReport& report, const std::string& scope,
                                 const std::string& label_a, const std::string& label_b) {
    nlohmann::json doc;
    doc["scope"] = scope;
    doc["list_a"] = label_a;
    doc["list_b"] = label_b;
    doc["n"] = report.n;
    doc["rank"] = {
        {"% shifting rank", round_g6(report.pct_shifting_rank)},
        {"Average shift", round_g6(report.avg_shift)},
        {"Median shift", round_g6(report.median_shift)},
        {"Max shift", report.max_shift},
        {"Score correlation", opt_number(report.score_correlation)},
    };
    doc["quartile"] = {
        {"% shifting quartile", round_g6(report.quartile.pct_shifting_quartile)},
        {"Average shift", round_g6(report.quartile.avg_shift)},
        {"Median shift", round_g6(report.quartile.median_shift)},
        {"Max shift", report.quartile.max_shift},
        {"Correlation", opt_number(report.quartile.correlation)},
        {"From top to non-top", round_g6(report.quartile.top_to_nontop_pct)},
    };
    return doc.dump(2) + "\n";
}

std::string compare_ranking_files(const std::filesystem::path& a,
                                  const std::filesystem::path& b) {
    RankingList la = read_ranking_csv(a);
    RankingList lb = read_ranking_csv(b);
    ComparisonReport report = compare(la, lb);
    return comparison_json_text(report, "", a.stem().string(), b.stem().string());
}

namespace {

ScoreTable score_all(const Corpus& corpus, const std::map<std::string, RuleSet>& rulesets,
                     const FaiiConfig& fcfg) {
    ScoreTable table;
    std::map<std::string, std::vector<std::string>> affiliation_cache;
    // Credits depend only on whether the assessing uda is byline-weighted.
    std::map<std::pair<std::string, bool>, std::vector<double>> credit_cache;

    for (const auto& a : corpus.authorships()) {
        if (a.is_external())
            continue;
        const Researcher* r = corpus.find_researcher(a.author_key);
        const Publication* pub = corpus.find_publication(a.publication_id);
        if (!pub->indexed)
            continue;

        auto& sp = table[{r->id, pub->id}];
        if (sp.publication_id.empty()) {
            sp.publication_id = pub->id;
            sp.researcher_id = r->id;
            VqrScore vs = score_publication(rulesets.at(r->uda), *pub, *fcfg.benchmarks);
            sp.vqr_outcome = vs.outcome;
            sp.vqr_score = vs.value;
        }
        auto impact = scaled_impact(fcfg, *pub);
        if (impact && *impact != 0.0) {
            bool weighted = fcfg.credit_policy.byline_weighted(r->uda);
            auto key = std::make_pair(pub->id, weighted);
            auto it = credit_cache.find(key);
            if (it == credit_cache.end()) {
                auto aff = affiliation_cache.find(pub->id);
                if (aff == affiliation_cache.end())
                    aff = affiliation_cache.emplace(pub->id, byline_affiliations(corpus, *pub))
                              .first;
                it = credit_cache
                         .emplace(key, credit_vector(fcfg.credit_policy, r->uda, aff->second))
                         .first;
            }
            sp.faii_score +=
                *impact * it->second[static_cast<std::size_t>(a.byline_position - 1)];
        }
    }
    return table;
}

}  // namespace

RunResult run_pipeline(const RunConfig& cfg, const std::filesystem::path& out_dir_override,
                       int threads) {
    std::filesystem::path out = out_dir_override.empty() ? cfg.out_dir : out_dir_override;
    if (out.empty())
        throw DomainError("run: no output directory configured");
    std::filesystem::create_directories(out);
    RunResult result;

    Corpus corpus = stage("load-corpus", [&] {
        return load_corpus(CorpusPaths::in_dir(cfg.corpus_dir), cfg.window);
    });

    std::vector<std::string> udas;
    for (const auto& r : corpus.researchers())
        if (std::find(udas.begin(), udas.end(), r.uda) == udas.end())
            udas.push_back(r.uda);
    std::sort(udas.begin(), udas.end());

    std::map<std::string, RuleSet> rulesets = stage("load-rules", [&] {
        std::map<std::string, RuleSet> sets;
        for (const auto& uda : udas) {
            std::filesystem::path path;
            if (auto it = cfg.ruleset_paths.find(uda); it != cfg.ruleset_paths.end())
                path = it->second;
            else if (!cfg.default_ruleset.empty())
                path = cfg.default_ruleset;
            else
                throw DomainError("no rule set configured for uda '" + uda + "'");
            RuleSet rs = load_ruleset(path);
            rs.uda = uda;  // the config key is authoritative
            if (cfg.missing_mode)
                rs.missing_mode = *cfg.missing_mode;
            sets.emplace(uda, std::move(rs));
        }
        return sets;
    });

    BenchmarkSet benchmarks = stage("build-benchmarks", [&] {
        return BenchmarkSet::build(corpus, cfg.category_merge, cfg.split_review_udas);
    });
    FaiiConfig fcfg;
    fcfg.metric_substitution_years = cfg.faii_substitution_years;
    fcfg.benchmarks = &benchmarks;
    fcfg.credit_policy = cfg.credit_policy;

    ScoreTable scores =
        stage("score-products", [&] { return score_all(corpus, rulesets, fcfg); });

    // Product selection is institution-wide: a publication can be presented
    // once per university even when co-authors sit in different areas.
    std::vector<std::string> uni_ids;
    for (const auto& u : corpus.universities())
        uni_ids.push_back(u.id);
    std::vector<SelectionResult> sel_vqr(uni_ids.size()), sel_faii(uni_ids.size());
    stage("select-products", [&] {
        parallel_for(uni_ids.size(), threads, [&](std::size_t i) {
            sel_vqr[i] =
                solve_exact(build_problem(corpus, scores, uni_ids[i], WeightKind::vqr));
            sel_faii[i] =
                solve_exact(build_problem(corpus, scores, uni_ids[i], WeightKind::faii));
        });
        return 0;
    });

    if (cfg.dump_selections) {
        for (auto kind : {WeightKind::vqr, WeightKind::faii}) {
            std::vector<std::vector<std::string>> rows;
            const auto& sels = kind == WeightKind::vqr ? sel_vqr : sel_faii;
            for (std::size_t i = 0; i < uni_ids.size(); ++i)
                for (const auto& [rid, pid] : sels[i].chosen) {
                    const auto& sp = scores.at({rid, pid});
                    rows.push_back({uni_ids[i], rid, pid,
                                    format_g6(kind == WeightKind::vqr ? sp.vqr_score
                                                                      : sp.faii_score)});
                }
            auto file = out / (kind == WeightKind::vqr ? "selections_vqr.csv"
                                                       : "selections_faii.csv");
            write_csv(file, {"university_id", "researcher_id", "publication_id", "weight"},
                      rows);
            result.files.push_back(file);
        }
    }

    // Scope bookkeeping: staff counts (researchers due >= 1 product) and
    // products due, per uda and overall.
    std::map<std::string, std::map<std::string, int>> staff_by_scope, due_by_scope;
    for (const auto& r : corpus.researchers()) {
        for (const std::string& scope : {r.uda, std::string(kWholeInstitution)}) {
            due_by_scope[scope][r.university_id] += r.quota;
            if (r.quota >= 1)
                staff_by_scope[scope][r.university_id] += 1;
            else
                staff_by_scope[scope];  // scope present even if nobody is due
        }
    }

    // scenario -> scope -> university -> score
    std::map<std::string, std::map<std::string, std::map<std::string, double>>> scenario_scores;
    stage("scenario-scores", [&] {
        for (auto kind : {WeightKind::vqr, WeightKind::faii}) {
            std::string name = kind == WeightKind::vqr ? "vqr" : "faii_top_k";
            const auto& sels = kind == WeightKind::vqr ? sel_vqr : sel_faii;
            // (university, uda) -> selected weight / count
            std::map<std::pair<std::string, std::string>, double> w_slice;
            std::map<std::pair<std::string, std::string>, int> n_slice;
            for (std::size_t i = 0; i < uni_ids.size(); ++i)
                for (const auto& pair : sels[i].chosen) {
                    const Researcher* r = corpus.find_researcher(pair.first);
                    const auto& sp = scores.at(pair);
                    w_slice[{uni_ids[i], r->uda}] +=
                        kind == WeightKind::vqr ? sp.vqr_score : sp.faii_score;
                    n_slice[{uni_ids[i], r->uda}] += 1;
                }
            for (const auto& uid : uni_ids) {
                double overall_numer = 0.0;
                int overall_due = 0;
                for (const auto& uda : udas) {
                    auto due_it = due_by_scope[uda].find(uid);
                    int due = due_it == due_by_scope[uda].end() ? 0 : due_it->second;
                    if (due <= 0)
                        continue;
                    double w = w_slice.count({uid, uda}) ? w_slice[{uid, uda}] : 0.0;
                    int chosen = n_slice.count({uid, uda}) ? n_slice[{uid, uda}] : 0;
                    int missing = due - chosen;
                    double numer =
                        w + missing * penalty_for(rulesets.at(uda),
                                                  PenaltyEvent::missing_product);
                    scenario_scores[name][uda][uid] = numer / due;
                    overall_numer += numer;
                    overall_due += due;
                }
                if (overall_due > 0)
                    scenario_scores[name][std::string(kWholeInstitution)][uid] =
                        overall_numer / overall_due;
            }
        }
        return 0;
    });

    std::set<std::string> skipped_sds;
    stage("fss", [&] {
        for (const auto& uid : uni_ids) {
            for (const auto& uda : udas) {
                try {
                    auto ip = fss_aggregate(corpus, fcfg, uid, FssLevel::uda, uda);
                    scenario_scores["fss"][uda][uid] = ip.fss_value;
                    skipped_sds.insert(ip.skipped_sds.begin(), ip.skipped_sds.end());
                } catch (const DomainError&) {
                    // no staff in this area
                }
            }
            try {
                auto ip = fss_aggregate(corpus, fcfg, uid, FssLevel::university,
                                        std::string(kWholeInstitution));
                scenario_scores["fss"][std::string(kWholeInstitution)][uid] = ip.fss_value;
                skipped_sds.insert(ip.skipped_sds.begin(), ip.skipped_sds.end());
            } catch (const DomainError&) {
            }
        }
        return 0;
    });
    for (const auto& sds : skipped_sds)
        result.warnings.push_back("sds '" + sds +
                                  "' has no national activity; dropped from aggregation");

    std::vector<std::string> scopes = udas;
    scopes.push_back(std::string(kWholeInstitution));
    const std::vector<std::string> scenario_names{"vqr", "faii_top_k", "fss"};

    // scope -> scenario -> list
    std::map<std::string, std::map<std::string, RankingList>> lists;
    stage("rankings", [&] {
        for (const auto& scope : scopes) {
            int min_staff =
                scope == kWholeInstitution ? cfg.overall_min_staff : cfg.uda_min_staff;
            for (const auto& name : scenario_names) {
                auto scope_it = scenario_scores.find(name);
                if (scope_it == scenario_scores.end() || !scope_it->second.count(scope))
                    continue;
                const auto& score_map = scope_it->second.at(scope);
                bool all_zero = !score_map.empty();
                for (const auto& [id, v] : score_map)
                    if (v != 0.0)
                        all_zero = false;
                if (all_zero)
                    result.warnings.push_back("all " + name + " scores are zero in scope '" +
                                              scope + "'");
                try {
                    RankingList list = build_ranking(score_map, staff_by_scope[scope],
                                                     min_staff, scope, name);
                    auto file = out / ("rankings_" + sanitize_token(scope) + "_" + name +
                                       ".csv");
                    write_ranking_csv(list, file);
                    result.files.push_back(file);
                    lists[scope].emplace(name, std::move(list));
                } catch (const DomainError& e) {
                    result.warnings.push_back(std::string("ranking skipped: ") + e.what());
                }
            }
        }
        return 0;
    });

    stage("comparisons", [&] {
        const std::vector<std::pair<std::string, std::string>> pairs{
            {"vqr", "faii_top_k"}, {"vqr", "fss"}, {"faii_top_k", "fss"}};
        for (const auto& scope : scopes) {
            auto it = lists.find(scope);
            if (it == lists.end())
                continue;
            for (const auto& [a, b] : pairs) {
                if (!it->second.count(a) || !it->second.count(b))
                    continue;
                try {
                    ComparisonReport report = compare(it->second.at(a), it->second.at(b));
                    if (!report.score_correlation)
                        result.warnings.push_back("degenerate score variance in '" + scope +
                                                  "' " + a + " vs " + b);
                    auto file = out / ("comparison_" + sanitize_token(scope) + "_" + a +
                                       "_vs_" + b + ".json");
                    std::ofstream os(file, std::ios::binary);
                    os << comparison_json_text(report, scope, a, b);
                    if (!os)
                        throw Error("cannot write " + file.string());
                    result.files.push_back(file);
                } catch (const DomainError& e) {
                    result.warnings.push_back(std::string("comparison skipped: ") + e.what());
                }
            }
        }
        return 0;
    });

    return result;
}

}  // namespace vqrsim
