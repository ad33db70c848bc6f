#pragma once

#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bounds.hpp"
#include "cdc_builder.hpp"
#include "code_file.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "verifier.hpp"

#ifndef CDC_TABLE1_PATH
#define CDC_TABLE1_PATH "data/table1.csv"
#endif

namespace cdc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInvalid = 2;

enum class Format { human, csv, json };

namespace detail {

inline std::string code_label(unsigned q, unsigned ambient, unsigned d, unsigned k) {
    return "A_" + std::to_string(q) + "(" + std::to_string(ambient) + "," + std::to_string(d) + "," +
           std::to_string(k) + ")";
}

inline nlohmann::json to_json(const BoundResult& r) {
    nlohmann::json j{{"formula", std::string(to_string(r.formula))},
                     {"q", r.params.q},
                     {"N", r.params.ambient},
                     {"d", r.params.distance},
                     {"k", r.params.dim},
                     {"value", to_decimal(r.value)}};
    if (r.params.tail) j["n"] = *r.params.tail;
    if (r.params.depth) j["s"] = *r.params.depth;
    return j;
}

inline nlohmann::json to_json(const VerificationReport& rep) {
    nlohmann::json j{{"code", rep.label},
                     {"observed_count", rep.observed_count},
                     {"listed_count", rep.listed_count},
                     {"predicted_count", to_decimal(rep.predicted_count)},
                     {"claimed_distance", rep.claimed_distance},
                     {"mode", rep.mode == VerifyMode::exhaustive ? "exhaustive" : "sampled"},
                     {"pairs_checked", rep.distance.pairs_checked},
                     {"cross_block_pairs", rep.distance.cross_block_pairs},
                     {"verdict", rep.pass ? "pass" : "fail"},
                     {"failures", rep.failures},
                     {"runtime_seconds", rep.seconds}};
    if (rep.mode == VerifyMode::sampled) {
        j["samples"] = rep.samples;
        j["seed"] = rep.seed;
    }
    if (rep.distance.min_distance) {
        j["min_distance"] = *rep.distance.min_distance;
        j["witness"] = {rep.distance.witness.first, rep.distance.witness.second};
    } else {
        j["min_distance"] = nullptr;
    }
    return j;
}

struct BoundArgs {
    std::string formula;
    unsigned q = 0, n = 0, k = 0, d = 0;
    std::optional<unsigned> s;
    std::string base;
    Format format = Format::human;
};

inline int run_bound(const BoundArgs& a, std::ostream& out) {
    BoundResult r;
    if (a.formula == "thm2") {
        r = two_block_lower_bound(a.q, a.n, a.k, a.d);
    } else if (a.formula == "thm3") {
        if (!a.s) throw InvalidParameter("bound thm3 needs --s");
        r = parallel_lower_bound(a.q, a.n, a.k, a.d, *a.s);
    } else if (a.formula == "johnson1") {
        if (a.d % 2 != 0) throw InvalidParameter("subspace distance d must be even");
        r = johnson_upper(a.q, a.n, a.k, a.d / 2);
    } else {
        std::optional<BigCount> base;
        if (!a.base.empty()) base = parse_decimal(a.base);
        r = iterated_johnson_upper(a.q, a.n, a.d, a.k, base);
    }
    switch (a.format) {
        case Format::human: out << to_decimal(r.value) << "\n"; break;
        case Format::csv:
            out << "formula,q,N,d,k,value\n"
                << to_string(r.formula) << "," << r.params.q << "," << r.params.ambient << "," << r.params.distance
                << "," << r.params.dim << "," << to_decimal(r.value) << "\n";
            break;
        case Format::json: out << to_json(r).dump() << "\n"; break;
    }
    return kExitOk;
}

struct DistArgs {
    unsigned q = 0, m = 0, nmin = 0, d = 0;
    Format format = Format::human;
};

inline int run_dist(const DistArgs& a, std::ostream& out) {
    const auto dist = delsarte_rank_distribution(a.q, a.m, a.nmin, a.d);
    switch (a.format) {
        case Format::human: {
            out << "{";
            bool first = true;
            for (const auto& [r, c] : dist.counts) {
                if (r == 0) continue;
                out << (first ? "" : ", ") << r << ":" << to_decimal(c);
                first = false;
            }
            out << "}\n";
            break;
        }
        case Format::csv:
            out << "rank,count\n";
            for (const auto& [r, c] : dist.counts) out << r << "," << to_decimal(c) << "\n";
            break;
        case Format::json: {
            nlohmann::json counts = nlohmann::json::object();
            for (const auto& [r, c] : dist.counts) counts[std::to_string(r)] = to_decimal(c);
            out << nlohmann::json{{"q", a.q}, {"m", a.m}, {"nmin", a.nmin}, {"d", a.d}, {"counts", counts}}.dump()
                << "\n";
            break;
        }
    }
    return kExitOk;
}

struct TableArgs {
    std::string action;
    std::string data = CDC_TABLE1_PATH;
    Format format = Format::human;
};

inline int run_table(const TableArgs& a, std::ostream& out) {
    const auto refs = load_reference_table(a.data);
    const auto rows = table_rows_from_reference(refs, 1);
    const auto entries = build_table(rows);
    bool all_match = true;
    auto yesno = [](std::optional<bool> b) { return b ? (*b ? "yes" : "no") : "-"; };

    if (a.format == Format::json) {
        auto arr = nlohmann::json::array();
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& e = entries[i];
            nlohmann::json j{{"q", refs[i].q}, {"N", refs[i].ambient}, {"d", refs[i].distance}, {"k", refs[i].dim},
                             {"n", e.row.n}, {"s", e.row.s}, {"reference_new", to_decimal(refs[i].new_value)},
                             {"reference_old", to_decimal(refs[i].old_value)}};
            if (e.result) {
                j["computed"] = to_decimal(e.result->value);
                j["matches"] = *e.matches_expected();
                j["new_exceeds_old"] = *e.improves();
            } else {
                j["error"] = e.error;
            }
            all_match = all_match && e.matches_expected().value_or(false);
            arr.push_back(std::move(j));
        }
        out << arr.dump(1) << "\n";
    } else if (a.format == Format::csv) {
        out << "q,N,d,k,computed,reference_new,reference_old,matches,new_exceeds_old\n";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& e = entries[i];
            out << refs[i].q << "," << refs[i].ambient << "," << refs[i].distance << "," << refs[i].dim << ","
                << (e.result ? to_decimal(e.result->value) : "error: " + e.error) << ","
                << to_decimal(refs[i].new_value) << "," << to_decimal(refs[i].old_value) << ","
                << yesno(e.matches_expected()) << "," << yesno(e.improves()) << "\n";
            all_match = all_match && e.matches_expected().value_or(false);
        }
    } else {
        out << std::left << std::setw(14) << "code" << std::setw(66) << "computed" << std::setw(66) << "old"
            << std::setw(8) << "match" << "new>old\n";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& e = entries[i];
            out << std::setw(14) << code_label(refs[i].q, refs[i].ambient, refs[i].distance, refs[i].dim)
                << std::setw(66) << (e.result ? to_decimal(e.result->value) : "error: " + e.error) << std::setw(66)
                << to_decimal(refs[i].old_value) << std::setw(8) << yesno(e.matches_expected())
                << yesno(e.improves()) << "\n";
            all_match = all_match && e.matches_expected().value_or(false);
        }
    }
    return all_match ? kExitOk : kExitVerificationFailed;
}

struct ConstructArgs {
    unsigned q = 0, n = 0, k = 0, d = 0, s = 0;
    std::string out;
};

inline int run_construct(const ConstructArgs& a, std::ostream& out) {
    const Cdc code = assemble_parallel(a.q, a.n, a.k, a.d, a.s);
    write_code_file(a.out, code);
    out << "wrote " << code.members.size() << " members of " << code_label(a.q, code.ambient, a.d, a.k) << " to "
        << a.out << "\n";
    return kExitOk;
}

struct VerifyArgs {
    std::string in;
    unsigned d = 0;
    std::string mode = "exhaustive";
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
    Format format = Format::human;
};

inline int run_verify(const VerifyArgs& a, std::ostream& out) {
    std::optional<CodeFile> loaded;
    try {
        loaded.emplace(read_code_file(a.in));
    } catch (const RankDeficient& e) {
        out << "verdict: FAIL\nfailure: " << e.what() << "\n";
        return kExitVerificationFailed;
    }
    CodeFile& file = *loaded;
    Cdc& code = file.code;
    code.distance = a.d;

    std::vector<std::string> extra;
    const std::uint64_t listed = code.members.size();
    if (!code.block_sizes.empty() &&
        std::accumulate(code.block_sizes.begin(), code.block_sizes.end(), std::uint64_t(0)) != listed) {
        extra.push_back("block sizes do not add up to the member count");
        code.block_sizes.clear();
    }
    if (file.declared_count != listed)
        extra.push_back("header count " + std::to_string(file.declared_count) + " != " + std::to_string(listed) +
                        " members in body");

    BigCount predicted = file.declared_count;
    if (code.construction) {
        const auto& p = *code.construction;
        if (p.k != code.dim || p.ambient() != code.ambient)
            extra.push_back("construction parameters disagree with the header dimensions");
        predicted = parallel_lower_bound(p.q, p.n, p.k, p.d, p.s).value;
    }

    VerifyOptions opt;
    opt.mode = a.mode == "sampled" ? VerifyMode::sampled : VerifyMode::exhaustive;
    opt.samples = a.samples;
    opt.seed = a.seed;
    auto rep = reconcile(code, predicted, opt, code_label(code.field.order(), code.ambient, a.d, code.dim));
    rep.failures.insert(rep.failures.end(), extra.begin(), extra.end());
    rep.pass = rep.failures.empty();

    if (a.format == Format::json)
        out << to_json(rep).dump() << "\n";
    else
        out << rep.to_text();
    return rep.pass ? kExitOk : kExitVerificationFailed;
}

}  // namespace detail

/// Runs one command line. Exit codes: 0 success, 1 verification failure, 2 invalid parameters or usage.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounds, constructions and verification for constant-dimension subspace codes"};
    app.name("cdctool");
    app.require_subcommand(1, 1);
    const std::map<std::string, Format> formats{{"human", Format::human}, {"csv", Format::csv}, {"json", Format::json}};

    detail::BoundArgs ba;
    auto* bound = app.add_subcommand("bound", "Evaluate a lower or upper bound");
    bound->add_option("formula", ba.formula, "thm2 | thm3 | johnson1 | johnson2")
        ->required()
        ->check(CLI::IsMember({"thm2", "thm3", "johnson1", "johnson2"}));
    bound->add_option("--q", ba.q, "field size")->required();
    bound->add_option("--n", ba.n, "tail width (thm2/thm3) or ambient dimension (johnson1/johnson2)")->required();
    bound->add_option("--k", ba.k, "subspace dimension")->required();
    bound->add_option("--d", ba.d, "minimum subspace distance (even)")->required();
    bound->add_option("--s", ba.s, "parallel depth (thm3)");
    bound->add_option("--base", ba.base, "innermost value A_q(n', d, d/2) for johnson2");
    bound->add_option("--format", ba.format)->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

    detail::DistArgs da;
    auto* dist = app.add_subcommand("dist", "Rank distribution of an MRD code");
    dist->add_option("--q", da.q)->required();
    dist->add_option("--m", da.m, "larger matrix dimension")->required();
    dist->add_option("--nmin", da.nmin, "smaller matrix dimension")->required();
    dist->add_option("--d", da.d, "minimum rank distance")->required();
    dist->add_option("--format", da.format)->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

    detail::TableArgs ta;
    auto* table = app.add_subcommand("table", "Reproduce the reference bound table");
    table->add_option("action", ta.action)->required()->check(CLI::IsMember({"reproduce"}));
    table->add_option("--data", ta.data, "reference data file")->capture_default_str();
    table->add_option("--format", ta.format)->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

    detail::ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Build the parallel construction and write a code file");
    construct->add_option("--q", ca.q)->required();
    construct->add_option("--n", ca.n)->required();
    construct->add_option("--k", ca.k)->required();
    construct->add_option("--d", ca.d)->required();
    construct->add_option("--s", ca.s)->required();
    construct->add_option("--out", ca.out)->required();

    detail::VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Verify size and minimum distance of a code file");
    verify->add_option("--in", va.in)->required();
    verify->add_option("--d", va.d, "claimed minimum distance")->required();
    verify->add_option("--mode", va.mode)->check(CLI::IsMember({"exhaustive", "sampled"}))->capture_default_str();
    verify->add_option("--samples", va.samples)->capture_default_str();
    verify->add_option("--seed", va.seed)->capture_default_str();
    verify->add_option("--format", va.format, "human | json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitInvalid;
    }

    try {
        if (*bound) return detail::run_bound(ba, out);
        if (*dist) return detail::run_dist(da, out);
        if (*table) return detail::run_table(ta, out);
        if (*construct) return detail::run_construct(ca, out);
        if (*verify) return detail::run_verify(va, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    err << app.help();
    return kExitInvalid;
}

}  // namespace cdc::cli
